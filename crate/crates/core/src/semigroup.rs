//! Heat-semigroup diagnostics: kernel, trace, `2→∞` norm, small-time
//! exponent, positivity scans, the dynamic boundary row and the comparison
//! of the dynamic bi-Laplacian with the square of the dynamic Laplacian.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::conditions::{preset, Preset};
use crate::discretization::{DiscreteOperator, Mesh};
use crate::error::{Error, Result};
use crate::evolution::Spectral;
use crate::graph::MetricGraph;
use crate::numerics::{dot, norm2, power_fit, sym_eig, Mat};
use crate::traces::{gamma_upper, EdgewiseFunction};

/// Terms with `e^{−λt}` below this fraction of the largest are dropped from kernel sums.
pub const KERNEL_TRUNCATION: f64 = 1e-16;

/// Exponent fits need `t ≥ RESOLUTION_FACTOR / λ_max`.
pub const RESOLUTION_FACTOR: f64 = 10.0;

/// Slack on `[0, 1]` for the sub-Markov flag.
pub const SUBMARKOV_TOL: f64 = 1e-10;

/// Sample points `(edge, x)` with trapezoidal weights.
#[derive(Debug, Clone, PartialEq)]
pub struct EvaluationGrid {
    pub points: Vec<(usize, f64)>,
    pub weights: Vec<f64>,
}

impl EvaluationGrid {
    /// `intervals + 1` equispaced points on every edge, endpoints included.
    pub fn uniform(graph: &MetricGraph, intervals: usize) -> Result<Self> {
        if intervals == 0 {
            return Err(Error::InvalidArgument("grid needs at least one interval per edge".into()));
        }
        let mut points = Vec::new();
        let mut weights = Vec::new();
        for (e, edge) in graph.edges().iter().enumerate() {
            let h = edge.length / intervals as f64;
            for i in 0..=intervals {
                let x = if i == intervals { edge.length } else { h * i as f64 };
                points.push((e, x));
                weights.push(if i == 0 || i == intervals { 0.5 * h } else { h });
            }
        }
        Ok(EvaluationGrid { points, weights })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Eigenfunctions sampled on a grid: `values[(i, k)] = φ_k(x_i)`,
/// `theta[(a, k)]` the θ coordinates of mode `k`.
#[derive(Debug, Clone)]
pub struct GridModes {
    pub grid: EvaluationGrid,
    pub values: Mat,
    pub theta: Mat,
    pub eigenvalues: Vec<f64>,
}

impl GridModes {
    pub fn new(spec: &Spectral<'_>, grid: &EvaluationGrid) -> Result<Self> {
        let op = spec.op();
        let full = op.z().matmul(&spec.basis().vectors);
        let n = spec.basis().len();
        let mut values = Mat::zeros(grid.len(), n);
        for (i, &(e, x)) in grid.points.iter().enumerate() {
            let w = op.point_weights(e, x, 0)?;
            let row = values.row_mut(i);
            for (dof, wt) in w {
                for (r, f) in row.iter_mut().zip(full.row(dof)) {
                    *r += wt * f;
                }
            }
        }
        let theta = op.gd().matmul(&spec.basis().vectors);
        let eigenvalues = spec.values().iter().map(|&l| if spec.is_kernel(l) { 0.0 } else { l }).collect();
        Ok(GridModes { grid: grid.clone(), values, theta, eigenvalues })
    }

    /// Function values and θ at time `t` of the heat flow with modal data `a`.
    pub fn heat_state(&self, a: &[f64], t: f64) -> (Vec<f64>, Vec<f64>) {
        let at: Vec<f64> = a.iter().zip(&self.eigenvalues).map(|(c, l)| c * libm::exp(-l * t)).collect();
        (self.values.mul_vec(&at), self.theta.mul_vec(&at))
    }

    fn weights(&self, t: f64) -> Vec<f64> {
        let w: Vec<f64> = self.eigenvalues.iter().map(|l| libm::exp(-l * t)).collect();
        let top = w.iter().fold(0.0, |m: f64, x| m.max(*x));
        w.into_iter().map(|x| if x >= KERNEL_TRUNCATION * top { x } else { 0.0 }).collect()
    }
}

fn check_time(t: f64) -> Result<()> {
    if t > 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("time must be positive, got {t}")))
    }
}

/// Heat kernel on a grid, with its θ rows and θ block.
#[derive(Debug, Clone)]
pub struct KernelGrid {
    pub t: f64,
    pub points: Vec<(usize, f64)>,
    /// `k_t(x_i, x_l)`.
    pub values: Mat,
    /// `Σ e^{−λt} θ_k φ_k(x_l)`, one row per θ coordinate.
    pub theta_rows: Mat,
    /// `Σ e^{−λt} θ_k θ_kᵀ`.
    pub theta_block: Mat,
}

impl KernelGrid {
    /// `max |k(x, y) − k(y, x)|`.
    pub fn asymmetry(&self) -> f64 {
        self.values.sub(&self.values.transpose()).max_abs()
    }
}

/// `k_t(x, y) = Σ_k e^{−λ_k t} φ_k(x) φ_k(y)` on the grid.
pub fn heat_kernel(modes: &GridModes, t: f64) -> Result<KernelGrid> {
    check_time(t)?;
    let w = modes.weights(t);
    let mut scaled = modes.values.clone();
    let mut scaled_theta = modes.theta.clone();
    for k in 0..w.len() {
        for i in 0..scaled.rows() {
            scaled[(i, k)] *= w[k];
        }
        for a in 0..scaled_theta.rows() {
            scaled_theta[(a, k)] *= w[k];
        }
    }
    let vt = modes.values.transpose();
    Ok(KernelGrid {
        t,
        points: modes.grid.points.clone(),
        values: scaled.matmul(&vt),
        theta_rows: scaled_theta.matmul(&vt),
        theta_block: scaled_theta.matmul(&modes.theta.transpose()),
    })
}

/// `Σ_k e^{−λ_k t}` over all discrete modes.
pub fn semigroup_trace(spec: &Spectral<'_>, t: f64) -> Result<f64> {
    check_time(t)?;
    Ok(spec.values().iter().map(|&l| if spec.is_kernel(l) { 1.0 } else { libm::exp(-l * t) }).sum())
}

/// Trace recovered from kernel diagonals by quadrature, weighting the function
/// part by `1/p` and the θ block by `Π`.
pub fn kernel_trace_quadrature(op: &DiscreteOperator, kernel: &KernelGrid, grid: &EvaluationGrid) -> f64 {
    let mut acc = 0.0;
    for (i, &(e, _)) in grid.points.iter().enumerate() {
        acc += grid.weights[i] * kernel.values[(i, i)] / op.graph().edge(e).p;
    }
    let pi = op.conditions().pi();
    for a in 0..pi.rows() {
        for b in 0..pi.cols() {
            acc += pi[(a, b)] * kernel.theta_block[(b, a)];
        }
    }
    acc
}

/// The two components of the `2→∞` norm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormTwoToInf {
    /// `sup_x (Σ e^{−2λt} φ_k(x)²)^{1/2}` over the grid.
    pub function_part: f64,
    /// `‖Θ·diag(e^{−λt})‖₂`.
    pub theta_part: f64,
}

impl NormTwoToInf {
    pub fn value(&self) -> f64 {
        self.function_part.max(self.theta_part)
    }
}

pub fn norm_2_to_inf_parts(modes: &GridModes, t: f64) -> Result<NormTwoToInf> {
    check_time(t)?;
    let w = modes.weights(t);
    let mut sup: f64 = 0.0;
    for i in 0..modes.values.rows() {
        let s: f64 = modes.values.row(i).iter().zip(&w).map(|(p, w)| p * p * w * w).sum();
        sup = sup.max(s);
    }
    let theta_part = if modes.theta.rows() == 0 {
        0.0
    } else {
        let mut scaled = modes.theta.clone();
        for a in 0..scaled.rows() {
            for (k, wk) in w.iter().enumerate() {
                scaled[(a, k)] *= wk;
            }
        }
        let gram = scaled.matmul(&scaled.transpose()).symmetric_part();
        let (vals, _) = sym_eig(&gram)?;
        libm::sqrt(vals.last().copied().unwrap_or(0.0).max(0.0))
    };
    Ok(NormTwoToInf { function_part: libm::sqrt(sup), theta_part })
}

/// `‖e^{−tA}‖_{2→∞}` as the larger of the function and θ parts.
pub fn norm_2_to_inf(modes: &GridModes, t: f64) -> Result<f64> {
    Ok(norm_2_to_inf_parts(modes, t)?.value())
}

/// Smallest time the mesh can resolve: `RESOLUTION_FACTOR / λ_max`.
pub fn resolution_floor(modes: &GridModes) -> f64 {
    let lmax = modes.eigenvalues.iter().fold(0.0, |m: f64, l| m.max(*l));
    if lmax > 0.0 {
        RESOLUTION_FACTOR / lmax
    } else {
        0.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentFit {
    pub alpha: f64,
    pub prefactor: f64,
    /// `−1/(4j)`.
    pub bound: f64,
    pub floor: f64,
}

/// Log–log fit of `norm_2_to_inf` over `times`; every time must be resolved.
pub fn ultracontractivity_exponent(modes: &GridModes, j: usize, times: &[f64]) -> Result<ExponentFit> {
    let floor = resolution_floor(modes);
    let t_min = times.iter().fold(f64::INFINITY, |m, t| m.min(*t));
    if t_min < floor {
        return Err(Error::Unresolved { t_min, floor });
    }
    let samples = times.iter().map(|&t| Ok((t, norm_2_to_inf(modes, t)?))).collect::<Result<Vec<_>>>()?;
    let fit = power_fit(&samples)?;
    Ok(ExponentFit { alpha: fit.exponent, prefactor: fit.prefactor, bound: -1.0 / (4 * j) as f64, floor })
}

/// `count` log-spaced times from `t0` to `t1` inclusive.
pub fn log_times(t0: f64, t1: f64, count: usize) -> Vec<f64> {
    if count <= 1 {
        return vec![t0];
    }
    let (a, b) = (libm::log(t0), libm::log(t1));
    (0..count)
        .map(|i| match i {
            0 => t0,
            i if i == count - 1 => t1,
            i => libm::exp(a + (b - a) * i as f64 / (count - 1) as f64),
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct PositivitySample {
    pub t: f64,
    pub min_u: f64,
    pub max_u: f64,
    pub theta_min: Option<f64>,
    pub theta_max: Option<f64>,
    /// Function values and every θ coordinate lie in `[0, 1]` (with [`SUBMARKOV_TOL`]).
    pub submarkov: bool,
}

/// Grid extrema of the heat flow started at reduced coordinates `f`.
pub fn positivity_probe(
    spec: &Spectral<'_>,
    modes: &GridModes,
    f: &[f64],
    times: &[f64],
) -> Result<Vec<PositivitySample>> {
    let a = spec.to_modal(f)?;
    times
        .iter()
        .map(|&t| {
            if !(t >= 0.0) {
                return Err(Error::InvalidArgument(format!("heat flow needs t ≥ 0, got {t}")));
            }
            let (u, th) = modes.heat_state(&a, t);
            let min_u = u.iter().fold(f64::INFINITY, |m, x| m.min(*x));
            let max_u = u.iter().fold(f64::NEG_INFINITY, |m, x| m.max(*x));
            let theta_min = th.iter().copied().reduce(f64::min);
            let theta_max = th.iter().copied().reduce(f64::max);
            let inside = |lo: f64, hi: f64| lo >= -SUBMARKOV_TOL && hi <= 1.0 + SUBMARKOV_TOL;
            let submarkov = inside(min_u, max_u) && theta_min.zip(theta_max).is_none_or(|(lo, hi)| inside(lo, hi));
            Ok(PositivitySample { t, min_u, max_u, theta_min, theta_max, submarkov })
        })
        .collect()
}

/// Earliest sampled time from which the flag holds at every later sample.
pub fn submarkov_onset(samples: &[PositivitySample]) -> Option<f64> {
    let last_bad = samples.iter().rposition(|s| !s.submarkov);
    match last_bad {
        None => samples.first().map(|s| s.t),
        Some(i) => samples.get(i + 1).map(|s| s.t),
    }
}

/// Boundary flux `Γ°u` of a discrete state with spectral parameter `λ`,
/// defined through the Green identity: `Γ°u·Gv = vᵀ(λM − K)u` for every
/// unconstrained `v`.
pub fn consistent_flux(op: &DiscreteOperator, c: &[f64], lambda: f64) -> Vec<f64> {
    let u = op.expand(c);
    let mu = op.m_full().mul_vec(&u);
    let ku = op.k_full().mul_vec(&u);
    let r: Vec<f64> = mu.iter().zip(&ku).map(|(m, k)| lambda * m - k).collect();
    op.g().mul_vec(&r)
}

/// Floor in the denominator of the dynamic-row residual, relative to the
/// magnitude of the terms summed into the boundary flux. Rows that vanish
/// identically (θ = 0, or the kernel) then report roundoff relative to that
/// magnitude instead of roundoff over roundoff.
pub const RESIDUAL_FLOOR: f64 = 1e-8;

/// `‖λΠθ + B_dᵀΓ°u + Dθ‖ / (‖λΠθ‖ + ε)` with `θ = Gd·c` and `Γ°u` from
/// [`consistent_flux`]; `ε = RESIDUAL_FLOOR·‖|G|(|λ||M||u| + |K||u|)‖`.
pub fn dynamic_row_residual(op: &DiscreteOperator, c: &[f64], lambda: f64) -> Result<f64> {
    dynamic_row_residual_with(op, c, lambda, &consistent_flux(op, c, lambda))
}

/// Same residual with `Γ°u` taken pointwise from derivatives of the finite
/// element function (order up to `2j−1` inside the end elements).
pub fn dynamic_row_residual_pointwise(op: &DiscreteOperator, c: &[f64], lambda: f64) -> Result<f64> {
    let flux = gamma_upper(&op.function(c), op.j())?;
    dynamic_row_residual_with(op, c, lambda, &flux)
}

fn abs_mul(a: &Mat, x: &[f64]) -> Vec<f64> {
    (0..a.rows()).map(|i| a.row(i).iter().zip(x).map(|(p, q)| (p * q).abs()).sum()).collect()
}

fn dynamic_row_residual_with(op: &DiscreteOperator, c: &[f64], lambda: f64, flux: &[f64]) -> Result<f64> {
    let vc = op.conditions();
    if vc.dynamic_dim() == 0 {
        return Err(Error::NoDynamicComponent);
    }
    let theta = op.theta(c);
    let lp: Vec<f64> = vc.pi().mul_vec(&theta).into_iter().map(|x| lambda * x).collect();
    let bf = vc.basis_yd().tr_mul_vec(flux);
    let dt = vc.d().mul_vec(&theta);
    let row: Vec<f64> = (0..theta.len()).map(|a| lp[a] + bf[a] + dt[a]).collect();

    let u = op.expand(c);
    let mk: Vec<f64> =
        abs_mul(op.m_full(), &u).iter().zip(abs_mul(op.k_full(), &u)).map(|(m, k)| lambda.abs() * m + k).collect();
    let magnitude = norm2(&abs_mul(op.g(), &mk));
    Ok(norm2(&row) / (norm2(&lp) + RESIDUAL_FLOOR * magnitude))
}

/// Dynamic-row residual of eigenpair `k`.
pub fn wentzell_residual(spec: &Spectral<'_>, k: usize) -> Result<f64> {
    if spec.op().conditions().dynamic_dim() == 0 {
        return Err(Error::NoDynamicComponent);
    }
    if k >= spec.basis().len() {
        return Err(Error::OutOfRange(format!("mode {k} of {}", spec.basis().len())));
    }
    let modes = spec.refined_modes(k + 1)?;
    let (lambda, c) = &modes[k];
    dynamic_row_residual(spec.op(), c, *lambda)
}

/// Pointwise-flux variant of [`wentzell_residual`]; converges under refinement
/// rather than holding to roundoff.
pub fn wentzell_residual_pointwise(spec: &Spectral<'_>, k: usize) -> Result<f64> {
    if k >= spec.basis().len() {
        return Err(Error::OutOfRange(format!("mode {k} of {}", spec.basis().len())));
    }
    dynamic_row_residual_pointwise(spec.op(), &spec.basis().vector(k), spec.values()[k])
}

/// Rayleigh quotient `cᵀA c / cᵀM c`.
pub fn rayleigh_quotient(op: &DiscreteOperator, c: &[f64]) -> f64 {
    dot(c, &op.a_red().mul_vec(c)) / dot(c, &op.m_red().mul_vec(c))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SquareRow {
    pub k: usize,
    pub lambda_b: f64,
    pub lambda_b_sq: f64,
    pub lambda_a: f64,
    /// `|λ_A − λ_B²| / max(λ_B², 1)`.
    pub gap: f64,
}

/// Compares the first `modes` eigenvalues of `dynamic_star(vertex)` (j = 2)
/// with the squares of those of `laplacian_dynamic(vertex)` (j = 1).
pub fn square_comparison(graph: &MetricGraph, vertex: &str, mesh: &Mesh, modes: usize) -> Result<Vec<SquareRow>> {
    let name = String::from(vertex);
    let vb = preset(&Preset::LaplacianDynamic { vertex: name.clone() }, graph, 1)?;
    let va = preset(&Preset::DynamicStar { vertex: name }, graph, 2)?;
    let b = DiscreteOperator::assemble(graph, &vb, mesh)?.eigen()?;
    let a = DiscreteOperator::assemble(graph, &va, mesh)?.eigen()?;
    let n = modes.min(a.len()).min(b.len());
    Ok((0..n)
        .map(|k| {
            let lb = b.values[k];
            let sq = lb * lb;
            let la = a.values[k];
            SquareRow { k, lambda_b: lb, lambda_b_sq: sq, lambda_a: la, gap: (la - sq).abs() / sq.max(1.0) }
        })
        .collect())
}

/// Convenience: evaluate a reduced state on the grid.
pub fn grid_values(op: &DiscreteOperator, c: &[f64], grid: &EvaluationGrid) -> Result<Vec<f64>> {
    let u = op.function(c);
    grid.points.iter().map(|&(e, x)| u.value(e, x)).collect()
}
