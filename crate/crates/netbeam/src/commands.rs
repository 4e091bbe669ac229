//! Subcommand implementations.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context};
use netbeam_core::numerics::{norm2, sym_eig};
use netbeam_core::poly::Poly;
use netbeam_core::semigroup::{
    grid_values, log_times, norm_2_to_inf, positivity_probe, resolution_floor, semigroup_trace, square_comparison,
    submarkov_onset, ultracontractivity_exponent, wentzell_residual, EvaluationGrid, GridModes,
};
use netbeam_core::traces::{greens_identity, EdgePolynomials};
use netbeam_core::{DiscreteOperator, Error, InitialData, MetricGraph, Spectral, TrajectorySample};

use crate::config::{DataSpec, RunConfig};
use crate::output::Table;
use crate::row;

/// Relative asymmetry below which `A_red` counts as symmetric.
pub const SYMMETRY_TOL: f64 = 1e-10;
/// Green self-test tolerance relative to the term magnitudes.
pub const GREEN_TOL: f64 = 1e-10;
/// Exponent fits use `[t0, FIT_WINDOW·t0]`.
pub const FIT_WINDOW: f64 = 100.0;
const GREEN_PAIRS: usize = 20;
const WENTZELL_MODES: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Check,
    Spectrum,
    Evolve,
    HeatAnalysis,
    SquareCompare,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Wave,
    Heat,
    Damped,
}

#[derive(Debug, Clone, Default)]
pub struct Options {
    pub out: PathBuf,
    pub num_eigs: Option<usize>,
    pub t0: Option<f64>,
    pub t1: Option<f64>,
    pub samples: Option<usize>,
    pub kind: Option<Kind>,
    pub kappa: Option<f64>,
    pub strict: bool,
}

/// What a successful run produced.
#[derive(Debug, Clone, Default)]
pub struct Outcome {
    pub files: Vec<PathBuf>,
    /// Nonzero when `check --strict` found a failing item.
    pub exit_code: i32,
}

/// Exit status and machine-readable error record.
#[derive(Debug, Clone, PartialEq)]
pub struct Failure {
    pub code: i32,
    pub kind: String,
    pub message: String,
}

impl Failure {
    pub fn json(&self) -> String {
        serde_json::json!({ "error": self.kind, "exit_code": self.code, "message": self.message }).to_string()
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        let message = format!("{e:#}");
        match e.downcast_ref::<Error>() {
            Some(core) => Failure { code: if core.is_numerical() { 2 } else { 1 }, kind: core.name().into(), message },
            None => Failure { code: 1, kind: "invalid_input".into(), message },
        }
    }
}

pub fn run(cmd: Command, config: &RunConfig, opts: &Options) -> Result<Outcome, Failure> {
    fs::create_dir_all(&opts.out).with_context(|| format!("creating {}", opts.out.display())).map_err(Failure::from)?;
    let ctx = Run::new(config, opts);
    let result = match cmd {
        Command::Check => check(&ctx),
        Command::Spectrum => spectrum(&ctx),
        Command::Evolve => evolve(&ctx),
        Command::HeatAnalysis => heat_analysis(&ctx),
        Command::SquareCompare => square_compare(&ctx),
    };
    result.map_err(Failure::from)
}

struct Run<'a> {
    config: &'a RunConfig,
    opts: &'a Options,
}

impl<'a> Run<'a> {
    fn new(config: &'a RunConfig, opts: &'a Options) -> Self {
        Run { config, opts }
    }

    fn comment(&self, command: &str) -> String {
        format!(
            "j={} mesh={} preset={} command={command}",
            self.config.order_j,
            self.config.mesh.elements_per_edge,
            self.config.condition_label()
        )
    }

    fn operator(&self, graph: &MetricGraph) -> anyhow::Result<DiscreteOperator> {
        let vc = self.config.conditions(graph)?.with_label(self.config.condition_label());
        Ok(DiscreteOperator::assemble(graph, &vc, &self.config.mesh(graph)?)?)
    }

    fn num_eigs(&self, default: usize) -> usize {
        self.opts.num_eigs.or(self.config.analysis.num_eigs).unwrap_or(default)
    }

    fn t0(&self) -> Option<f64> {
        self.opts.t0.or(self.config.analysis.t0)
    }

    fn t1(&self) -> Option<f64> {
        self.opts.t1.or(self.config.analysis.t1)
    }

    fn samples(&self, default: usize) -> usize {
        self.opts.samples.or(self.config.analysis.samples).unwrap_or(default)
    }

    fn grid(&self, graph: &MetricGraph) -> anyhow::Result<EvaluationGrid> {
        let n = self.config.analysis.grid_intervals.unwrap_or((4 * self.config.mesh.elements_per_edge).max(32));
        Ok(EvaluationGrid::uniform(graph, n)?)
    }

    fn data(&self, which: Which, graph: &MetricGraph) -> anyhow::Result<InitialData> {
        let init = self.config.initial.as_ref();
        let spec = match which {
            Which::F => init.and_then(|i| i.f.clone()),
            Which::G => init.and_then(|i| i.g.clone()),
        };
        match (spec, which) {
            (Some(s), _) => s.to_initial(graph),
            (None, Which::F) => DataSpec::Named("sine 1".into()).to_initial(graph),
            (None, Which::G) => Ok(InitialData::Zero),
        }
    }

    fn write(&self, name: &str, table: &Table, outcome: &mut Outcome) -> anyhow::Result<()> {
        let path = self.opts.out.join(name);
        table.write(&path)?;
        outcome.files.push(path);
        Ok(())
    }
}

#[derive(Clone, Copy)]
enum Which {
    F,
    G,
}

/// Deterministic pseudo-random polynomial coefficients in `[−1, 1]`.
fn probe_polys(graph: &MetricGraph, degree: usize, seed: usize) -> anyhow::Result<EdgePolynomials> {
    let polys = (0..graph.num_edges())
        .map(|e| {
            Poly::new(
                (0..=degree)
                    .map(|i| {
                        let x = (seed * 7919 + e * 104_729 + i * 1_299_709) as f64;
                        (x * 0.618_033_988_749_894_9).fract() * 2.0 - 1.0
                    })
                    .collect(),
            )
        })
        .collect();
    Ok(EdgePolynomials::new(graph, polys)?)
}

fn check(ctx: &Run) -> anyhow::Result<Outcome> {
    let graph = ctx.config.graph()?;
    let vc = ctx.config.conditions(&graph)?;
    let report = vc.validate();
    let mut table = Table::new(ctx.comment("check"), &["check", "value", "pass"]);
    for (name, flag) in report.entries() {
        table.push(row![name, flag.violation, flag.ok]);
    }
    let mut all = report.entries().iter().all(|(_, f)| f.ok);
    let mut outcome = Outcome::default();

    if !report.structurally_valid() {
        ctx.write("check.csv", &table, &mut outcome)?;
        return Err(anyhow::Error::from(Error::InvalidConditions(
            "conditions fail the structural checks; see check.csv".into(),
        )));
    }

    let op = ctx.operator(&graph)?;
    let asym = op.a_red().relative_asymmetry();
    let a_sym = asym <= SYMMETRY_TOL;
    table.push(row!["A_red_symmetric", asym, a_sym]);
    let consistent = a_sym == report.symmetric();
    table.push(row!["self_adjoint_iff_symmetric_conditions", if consistent { 0.0 } else { 1.0 }, consistent]);

    let (values, _) = sym_eig(&op.a_red().symmetric_part())?;
    let lmin = values.iter().copied().fold(f64::INFINITY, f64::min);
    let scale = op.a_red().max_abs().max(1.0);
    let accretive = lmin >= -1e-9 * scale;
    table.push(row!["form_accretive", lmin, accretive]);

    let j = ctx.config.order_j;
    let mut worst: f64 = 0.0;
    for k in 0..GREEN_PAIRS {
        let u = probe_polys(&graph, 2 * j + 2, 2 * k)?;
        let v = probe_polys(&graph, 2 * j + 2, 2 * k + 1)?;
        let t = greens_identity(&u, &v, j)?;
        worst = worst.max(t.residual.abs() / t.scale.max(f64::MIN_POSITIVE));
    }
    let green = worst <= GREEN_TOL;
    table.push(row!["green_identity", worst, green]);

    all &= a_sym && consistent && accretive && green;
    ctx.write("check.csv", &table, &mut outcome)?;
    if ctx.opts.strict && !all {
        outcome.exit_code = 1;
    }
    Ok(outcome)
}

fn spectrum(ctx: &Run) -> anyhow::Result<Outcome> {
    let graph = ctx.config.graph()?;
    let op = ctx.operator(&graph)?;
    let eig = op.eigen()?;
    let count = ctx.num_eigs(10).min(eig.len());
    let a_norm = op.a_red().frobenius();
    let mut table = Table::new(ctx.comment("spectrum"), &["index", "eigenvalue", "residual"]);
    for k in 0..count {
        let v = eig.vector(k);
        let av = op.a_red().mul_vec(&v);
        let mv = op.m_red().mul_vec(&v);
        let lambda = eig.values[k];
        let r: Vec<f64> = av.iter().zip(&mv).map(|(a, m)| a - lambda * m).collect();
        table.push(row![k, lambda, norm2(&r) / (a_norm * norm2(&v)).max(f64::MIN_POSITIVE)]);
    }
    let mut outcome = Outcome::default();
    ctx.write("spectrum.csv", &table, &mut outcome)?;
    Ok(outcome)
}

fn linspace(t0: f64, t1: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![t0],
        _ => (0..n).map(|i| if i == n - 1 { t1 } else { t0 + (t1 - t0) * i as f64 / (n - 1) as f64 }).collect(),
    }
}

fn evolve(ctx: &Run) -> anyhow::Result<Outcome> {
    let graph = ctx.config.graph()?;
    let op = ctx.operator(&graph)?;
    let spec = Spectral::new(&op)?;
    let f = ctx.data(Which::F, &graph)?.resolve(&spec)?.coeffs;
    let g = ctx.data(Which::G, &graph)?.resolve(&spec)?.coeffs;
    let times = linspace(ctx.t0().unwrap_or(0.0), ctx.t1().unwrap_or(10.0), ctx.samples(200));
    let kind = ctx.opts.kind.unwrap_or(Kind::Wave);
    let (name, samples) = match kind {
        Kind::Wave => ("wave", spec.wave(&f, &g, &times)?),
        Kind::Heat => ("heat", spec.heat(&f, &times)?),
        Kind::Damped => {
            let kappa = ctx.opts.kappa.or(ctx.config.analysis.kappa).unwrap_or(0.0);
            ("damped", spec.damped(&f, &g, kappa, &times)?)
        }
    };
    let grid = ctx.grid(&graph)?;
    let mut table =
        Table::new(ctx.comment(&format!("evolve kind={name}")), &["t", "K", "P", "E", "min_u", "max_u", "theta_norm"]);
    for s in &samples {
        let (lo, hi) = extrema(&op, s, &grid)?;
        table.push(row![s.t, s.kinetic, s.potential, s.total, lo, hi, norm2(&s.theta)]);
    }
    let mut outcome = Outcome::default();
    ctx.write("trajectory.csv", &table, &mut outcome)?;
    Ok(outcome)
}

fn extrema(op: &DiscreteOperator, s: &TrajectorySample, grid: &EvaluationGrid) -> anyhow::Result<(f64, f64)> {
    let u = grid_values(op, &s.coeffs, grid)?;
    Ok(u.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| (lo.min(x), hi.max(x))))
}

fn heat_analysis(ctx: &Run) -> anyhow::Result<Outcome> {
    let graph = ctx.config.graph()?;
    let op = ctx.operator(&graph)?;
    let spec = Spectral::new(&op)?;
    let grid = ctx.grid(&graph)?;
    let modes = GridModes::new(&spec, &grid)?;
    let floor = resolution_floor(&modes);
    let t0 = ctx.t0().unwrap_or(floor);
    let t1 = ctx.t1().unwrap_or(1.0);
    if !(t1 > t0) {
        return Err(anyhow::Error::from(Error::InvalidArgument(format!("need t1 > t0, got t0={t0}, t1={t1}"))));
    }
    if t0 < floor {
        return Err(anyhow::Error::from(Error::Unresolved { t_min: t0, floor }));
    }
    let times = log_times(t0, t1, ctx.samples(40));
    let j = ctx.config.order_j;
    let f = match ctx.config.initial.as_ref().and_then(|i| i.f.clone()) {
        Some(s) => s.to_initial(&graph)?,
        None => {
            let len = graph.edge(0).length;
            InitialData::Bump { edge: Some(0), center: 0.5 * len, width: 0.25 * len }
        }
    };
    let f = f.resolve(&spec)?.coeffs;
    let positivity = positivity_probe(&spec, &modes, &f, &times)?;

    let mut heat = Table::new(ctx.comment("heat-analysis"), &["t", "trace", "norm2inf", "min_u", "submarkov_flag"]);
    for (t, p) in times.iter().zip(&positivity) {
        heat.push(row![*t, semigroup_trace(&spec, *t)?, norm_2_to_inf(&modes, *t)?, p.min_u, p.submarkov]);
    }

    let mut summary = Table::new(ctx.comment("heat-analysis"), &["quantity", "value"]);
    summary.push(row!["resolution_floor", floor]);
    summary.push(row!["lambda_max", spec.values().iter().copied().fold(0.0, f64::max)]);
    let fit_hi = t1.min(FIT_WINDOW * t0.max(floor));
    if fit_hi > t0 {
        let fit = ultracontractivity_exponent(&modes, j, &log_times(t0, fit_hi, 20))?;
        summary.push(row!["fit_t_min", t0]);
        summary.push(row!["fit_t_max", fit_hi]);
        summary.push(row!["alpha", fit.alpha]);
        summary.push(row!["alpha_bound", fit.bound]);
        summary.push(row!["prefactor", fit.prefactor]);
    }
    let min_u = positivity.iter().map(|p| p.min_u).fold(f64::INFINITY, f64::min);
    summary.push(row!["min_u", min_u]);
    summary.push(row![
        "submarkov_onset",
        submarkov_onset(&positivity).map_or_else(|| "none".to_string(), crate::output::fmt_f64)
    ]);

    let mut outcome = Outcome::default();
    ctx.write("heat.csv", &heat, &mut outcome)?;
    ctx.write("summary.csv", &summary, &mut outcome)?;

    if op.conditions().dynamic_dim() > 0 {
        let count = ctx.num_eigs(WENTZELL_MODES).min(spec.basis().len());
        let mut table = Table::new(ctx.comment("heat-analysis"), &["mode", "eigenvalue", "residual"]);
        let refined = spec.refined_modes(count)?;
        for (k, (lambda, _)) in refined.iter().enumerate() {
            table.push(row![k, *lambda, wentzell_residual(&spec, k)?]);
        }
        ctx.write("wentzell.csv", &table, &mut outcome)?;
    }
    Ok(outcome)
}

fn square_compare(ctx: &Run) -> anyhow::Result<Outcome> {
    let graph = ctx.config.graph()?;
    let vertex = ctx.config.dynamic_vertex().ok_or_else(|| {
        anyhow!("square-compare needs a dynamic vertex (conditions.vertex or analysis.dynamic_vertex)")
    })?;
    let mesh = ctx.config.mesh(&graph)?;
    let rows = square_comparison(&graph, &vertex, &mesh, ctx.num_eigs(4))?;
    let comment = format!(
        "j=1,2 mesh={} preset=laplacian_dynamic({vertex}),dynamic_star({vertex}) command=square-compare",
        ctx.config.mesh.elements_per_edge
    );
    let mut table = Table::new(comment, &["k", "lambda_B", "lambda_B_sq", "lambda_A", "gap"]);
    for r in &rows {
        table.push(row![r.k, r.lambda_b, r.lambda_b_sq, r.lambda_a, r.gap]);
    }
    let mut outcome = Outcome::default();
    ctx.write("square.csv", &table, &mut outcome)?;
    Ok(outcome)
}

/// Reads the config at `path` and runs `cmd`.
pub fn run_path(cmd: Command, path: &Path, opts: &Options) -> Result<Outcome, Failure> {
    let config = RunConfig::load(path).map_err(Failure::from)?;
    run(cmd, &config, opts)
}
