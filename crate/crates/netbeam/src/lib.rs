//! JSON configuration, CSV output and subcommands for the `netbeam` binary.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;
pub mod output;

pub use commands::{run, run_path, Command, Failure, Kind, Options, Outcome};
pub use config::RunConfig;
