//! Self-adjoint and non-self-adjoint realisations of even-order differential
//! operators on metric graphs, with stationary and dynamic vertex
//! conditions, a conforming Hermite discretisation, spectral time evolution
//! and heat-semigroup diagnostics.
//!
//! The crate is `no_std` (it needs `alloc`).

#![no_std]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod conditions;
pub mod discretization;
pub mod error;
pub mod evolution;
pub mod graph;
pub mod numerics;
pub mod poly;
pub mod semigroup;
pub mod traces;

pub use conditions::{preset, Preset, ValidationReport, VertexConditions};
pub use discretization::{DiscreteOperator, Mesh};
pub use error::{Error, Result};
pub use evolution::{InitialData, Spectral, TrajectorySample};
pub use graph::{BoundarySlot, EdgeSpec, MetricGraph, Side};
pub use numerics::Mat;
