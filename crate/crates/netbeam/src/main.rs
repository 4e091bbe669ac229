use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use netbeam::{run_path, Command, Kind, Options};

#[derive(Parser)]
#[command(name = "netbeam", version, about = "Polyharmonic operators on metric graphs")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Validate conditions, report symmetry and run the Green identity self-test.
    Check(Common),
    /// Write the lowest eigenvalues.
    Spectrum(Common),
    /// Propagate initial data and write energies.
    Evolve(Common),
    /// Trace, 2→∞ norms, exponent fit, positivity and Wentzell residuals.
    HeatAnalysis(Common),
    /// Compare the j=2 dynamic star spectrum with the squared j=1 spectrum.
    SquareCompare(Common),
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    config: PathBuf,
    #[arg(long, default_value = ".")]
    out: PathBuf,
    #[arg(long)]
    num_eigs: Option<usize>,
    #[arg(long)]
    t0: Option<f64>,
    #[arg(long)]
    t1: Option<f64>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, value_enum)]
    kind: Option<KindArg>,
    #[arg(long)]
    kappa: Option<f64>,
    /// Exit 1 when any check fails.
    #[arg(long)]
    strict: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Wave,
    Heat,
    Damped,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (cmd, c) = match cli.command {
        Cmd::Check(c) => (Command::Check, c),
        Cmd::Spectrum(c) => (Command::Spectrum, c),
        Cmd::Evolve(c) => (Command::Evolve, c),
        Cmd::HeatAnalysis(c) => (Command::HeatAnalysis, c),
        Cmd::SquareCompare(c) => (Command::SquareCompare, c),
    };
    let opts = Options {
        out: c.out,
        num_eigs: c.num_eigs,
        t0: c.t0,
        t1: c.t1,
        samples: c.samples,
        kind: c.kind.map(|k| match k {
            KindArg::Wave => Kind::Wave,
            KindArg::Heat => Kind::Heat,
            KindArg::Damped => Kind::Damped,
        }),
        kappa: c.kappa,
        strict: c.strict,
    };
    match run_path(cmd, &c.config, &opts) {
        Ok(outcome) => {
            for f in &outcome.files {
                println!("{}", f.display());
            }
            ExitCode::from(outcome.exit_code as u8)
        }
        Err(e) => {
            eprintln!("{}", e.json());
            ExitCode::from(e.code as u8)
        }
    }
}
