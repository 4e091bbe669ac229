//! Exact-in-time modal propagation of the wave, damped wave and heat flows,
//! plus the energy functionals.
//!
//! All flows are expanded in the `M_red`-orthonormal eigenbasis of
//! `(A_red, M_red)`; each mode is advanced by its closed-form solution.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::discretization::{DiscreteOperator, Projection};
use crate::error::{Error, Result};
use crate::numerics::{dot, gen_eig, lu_solve_many, EigenBasis, Mat};
use crate::poly::Poly;
use crate::traces::EdgewiseFunction;

/// Eigenvalues with `|λ| ≤ KERNEL_REL_TOL·max|λ|` are treated as zero.
pub const KERNEL_REL_TOL: f64 = 1e-12;

/// Relative tolerance on the damped discriminant for the double-root branch.
/// Eigenvalues closer than this (relative) are refined together.
pub const CLUSTER_REL_TOL: f64 = 1e-6;
const SHIFT_REL: f64 = 1e-5;

pub const DOUBLE_ROOT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct TrajectorySample {
    pub t: f64,
    /// Reduced coordinates `c(t)`.
    pub coeffs: Vec<f64>,
    /// `ċ(t)`.
    pub velocity: Vec<f64>,
    /// θ(t) in the `Y_d` basis.
    pub theta: Vec<f64>,
    pub kinetic: f64,
    pub potential: f64,
    pub total: f64,
}

/// `(K, P, E)` with `K = ½ ċᵀM_red ċ`, `P = ½ cᵀA_red c`.
pub fn energy(op: &DiscreteOperator, c: &[f64], velocity: &[f64]) -> (f64, f64, f64) {
    let k = 0.5 * dot(velocity, &op.m_red().mul_vec(velocity));
    let p = 0.5 * dot(c, &op.a_red().mul_vec(c));
    (k, p, k + p)
}

/// A discrete operator together with its eigenbasis.
#[derive(Debug, Clone)]
pub struct Spectral<'a> {
    op: &'a DiscreteOperator,
    eig: EigenBasis,
    kernel_tol: f64,
}

impl<'a> Spectral<'a> {
    pub fn new(op: &'a DiscreteOperator) -> Result<Self> {
        let eig = op.eigen()?;
        Ok(Spectral::with_basis(op, eig))
    }

    pub fn with_basis(op: &'a DiscreteOperator, eig: EigenBasis) -> Self {
        let kernel_tol = KERNEL_REL_TOL * eig.spectral_radius();
        Spectral { op, eig, kernel_tol }
    }

    pub fn op(&self) -> &'a DiscreteOperator {
        self.op
    }

    pub fn basis(&self) -> &EigenBasis {
        &self.eig
    }

    pub fn values(&self) -> &[f64] {
        &self.eig.values
    }

    pub fn is_kernel(&self, lambda: f64) -> bool {
        lambda.abs() <= self.kernel_tol
    }

    /// The first `count` eigenpairs polished by two steps of shifted block
    /// inverse iteration per eigenvalue cluster, followed by Rayleigh–Ritz.
    /// Vectors are M-orthonormal within each cluster.
    pub fn refined_modes(&self, count: usize) -> Result<Vec<(f64, Vec<f64>)>> {
        let n = self.eig.len();
        let count = count.min(n);
        let (a, m) = (self.op.a_red(), self.op.m_red());
        let mut out = Vec::with_capacity(count);
        let mut s = 0;
        while s < count {
            let scale = self.eig.values[s].abs().max(1.0);
            let mut e = s + 1;
            while e < n && (self.eig.values[e] - self.eig.values[s]).abs() <= CLUSTER_REL_TOL * scale {
                e += 1;
            }
            let sigma = self.eig.values[s] - SHIFT_REL * scale;
            let shifted = a.sub(&m.scale(sigma));
            let cols: Vec<Vec<f64>> = (s..e).map(|k| self.eig.vector(k)).collect();
            let mut x = Mat::from_columns(n, &cols)?;
            for _ in 0..2 {
                x = lu_solve_many(&shifted, &m.matmul(&x), 0.0)?;
                let norm = x.max_abs();
                x = x.scale(1.0 / norm);
            }
            let ritz = gen_eig(&a.congruence(&x).symmetric_part(), &m.congruence(&x).symmetric_part())?;
            let v = x.matmul(&ritz.vectors);
            for k in 0..e - s {
                if s + k < count {
                    out.push((ritz.values[k], v.column(k)));
                }
            }
            s = e;
        }
        Ok(out)
    }

    /// Modal coordinates `Φᵀ M_red c`.
    pub fn to_modal(&self, c: &[f64]) -> Result<Vec<f64>> {
        if c.len() != self.op.dim() {
            return Err(Error::Dimension(format!("{} coordinates, expected {}", c.len(), self.op.dim())));
        }
        Ok(self.eig.vectors.tr_mul_vec(&self.op.m_red().mul_vec(c)))
    }

    pub fn from_modal(&self, a: &[f64]) -> Vec<f64> {
        self.eig.vectors.mul_vec(a)
    }

    fn sample(&self, t: f64, pos: &[f64], vel: &[f64]) -> TrajectorySample {
        let coeffs = self.from_modal(pos);
        let velocity = self.from_modal(vel);
        let theta = self.op.theta(&coeffs);
        let (kinetic, potential, total) = energy(self.op, &coeffs, &velocity);
        TrajectorySample { t, coeffs, velocity, theta, kinetic, potential, total }
    }

    fn propagate<F>(&self, f: &[f64], g: &[f64], times: &[f64], mut mode: F) -> Result<Vec<TrajectorySample>>
    where
        F: FnMut(f64, f64, f64, f64) -> (f64, f64),
    {
        if times.is_empty() {
            return Err(Error::InvalidArgument("time list is empty".into()));
        }
        let fm = self.to_modal(f)?;
        let gm = self.to_modal(g)?;
        let n = fm.len();
        Ok(times
            .iter()
            .map(|&t| {
                let mut pos = vec![0.0; n];
                let mut vel = vec![0.0; n];
                for k in 0..n {
                    (pos[k], vel[k]) = mode(self.eig.values[k], fm[k], gm[k], t);
                }
                self.sample(t, &pos, &vel)
            })
            .collect())
    }

    /// `ü + A u = 0`, `u(0) = f`, `u̇(0) = g`.
    pub fn wave(&self, f: &[f64], g: &[f64], times: &[f64]) -> Result<Vec<TrajectorySample>> {
        self.propagate(f, g, times, |lambda, f, g, t| {
            if self.is_kernel(lambda) {
                (f + t * g, g)
            } else if lambda > 0.0 {
                let w = libm::sqrt(lambda);
                let (s, c) = (libm::sin(w * t), libm::cos(w * t));
                (c * f + s / w * g, -w * s * f + c * g)
            } else {
                let m = libm::sqrt(-lambda);
                let (s, c) = (libm::sinh(m * t), libm::cosh(m * t));
                (c * f + s / m * g, m * s * f + c * g)
            }
        })
    }

    /// `u̇ + A u = 0`, `u(0) = f`. Negative times are rejected.
    pub fn heat(&self, f: &[f64], times: &[f64]) -> Result<Vec<TrajectorySample>> {
        if let Some(t) = times.iter().find(|t| !(**t >= 0.0)) {
            return Err(Error::InvalidArgument(format!("heat flow needs t ≥ 0, got {t}")));
        }
        let zero = vec![0.0; f.len()];
        self.propagate(f, &zero, times, |lambda, f, _, t| {
            let lambda = if self.is_kernel(lambda) { 0.0 } else { lambda };
            let u = libm::exp(-lambda * t) * f;
            (u, -lambda * u)
        })
    }

    /// `ü = −A(u + κ u̇)`, `u(0) = f`, `u̇(0) = g`, for real `κ ≥ 0`.
    pub fn damped(&self, f: &[f64], g: &[f64], kappa: f64, times: &[f64]) -> Result<Vec<TrajectorySample>> {
        if !(kappa >= 0.0) || !kappa.is_finite() {
            return Err(Error::InvalidArgument(format!("damping κ must be a finite non-negative real, got {kappa}")));
        }
        self.propagate(f, g, times, |lambda, f, g, t| {
            if self.is_kernel(lambda) {
                (f + t * g, g)
            } else {
                damped_mode(lambda, kappa, f, g, t)
            }
        })
    }

    /// Per-time report for the equipartition question, on `samples`
    /// equispaced times in `[0, horizon]`.
    pub fn equipartition_probe(
        &self,
        f: &[f64],
        g: &[f64],
        horizon: f64,
        samples: usize,
    ) -> Result<EquipartitionReport> {
        let lmin = self.eig.values.first().copied().unwrap_or(0.0);
        if lmin < -EQUIPARTITION_NEG_TOL {
            return Err(Error::Indefinite(lmin));
        }
        if samples < 2 || !(horizon > 0.0) {
            return Err(Error::InvalidArgument("need horizon > 0 and at least two samples".into()));
        }
        let times: Vec<f64> = (0..samples).map(|i| horizon * i as f64 / (samples - 1) as f64).collect();
        let traj = self.wave(f, g, &times)?;
        let energy = traj[0].total;
        let mut rep = EquipartitionReport {
            energy,
            min_gap: f64::INFINITY,
            t_min_gap: 0.0,
            k_min: f64::INFINITY,
            t_k_min: 0.0,
            k_max: f64::NEG_INFINITY,
            t_k_max: 0.0,
        };
        for s in &traj {
            let gap = (s.kinetic - 0.5 * energy).abs();
            if gap < rep.min_gap {
                rep.min_gap = gap;
                rep.t_min_gap = s.t;
            }
            if s.kinetic < rep.k_min {
                rep.k_min = s.kinetic;
                rep.t_k_min = s.t;
            }
            if s.kinetic > rep.k_max {
                rep.k_max = s.kinetic;
                rep.t_k_max = s.t;
            }
        }
        Ok(rep)
    }
}

/// Smallest eigenvalue tolerated by [`Spectral::equipartition_probe`] is `−EQUIPARTITION_NEG_TOL`.
pub const EQUIPARTITION_NEG_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquipartitionReport {
    /// `E(0)`.
    pub energy: f64,
    /// `min_t |K(t) − E/2|` over the samples.
    pub min_gap: f64,
    pub t_min_gap: f64,
    pub k_min: f64,
    pub t_k_min: f64,
    pub k_max: f64,
    pub t_k_max: f64,
}

/// One mode of `u'' + λκ u' + λ u = 0`, returning `(u(t), u'(t))`.
fn damped_mode(lambda: f64, kappa: f64, f: f64, g: f64, t: f64) -> (f64, f64) {
    let b = lambda * kappa;
    let disc = b * b - 4.0 * lambda;
    let scale = (b * b).max((4.0 * lambda).abs());
    if disc.abs() <= DOUBLE_ROOT_TOL * scale {
        let r = -0.5 * b;
        let e = libm::exp(r * t);
        let q = g - r * f;
        ((f + q * t) * e, (r * f + q * (1.0 + r * t)) * e)
    } else if disc > 0.0 {
        let sq = libm::sqrt(disc);
        let q = -0.5 * (b + if b >= 0.0 { sq } else { -sq });
        let (r1, r2) = (q, lambda / q);
        let a = (g - r2 * f) / (r1 - r2);
        let c = (r1 * f - g) / (r1 - r2);
        let (e1, e2) = (libm::exp(r1 * t), libm::exp(r2 * t));
        (a * e1 + c * e2, r1 * a * e1 + r2 * c * e2)
    } else {
        let alpha = -0.5 * b;
        let beta = 0.5 * libm::sqrt(-disc);
        let e = libm::exp(alpha * t);
        let (s, c) = (libm::sin(beta * t), libm::cos(beta * t));
        let q = (g - alpha * f) / beta;
        let u = e * (f * c + q * s);
        (u, alpha * u + e * beta * (q * c - f * s))
    }
}

/// Wave flow; see [`Spectral::wave`].
pub fn wave_evolve(op: &DiscreteOperator, f: &[f64], g: &[f64], times: &[f64]) -> Result<Vec<TrajectorySample>> {
    Spectral::new(op)?.wave(f, g, times)
}

/// Heat flow; see [`Spectral::heat`].
pub fn heat_evolve(op: &DiscreteOperator, f: &[f64], times: &[f64]) -> Result<Vec<TrajectorySample>> {
    Spectral::new(op)?.heat(f, times)
}

/// Damped wave flow; see [`Spectral::damped`].
pub fn damped_evolve(
    op: &DiscreteOperator,
    f: &[f64],
    g: &[f64],
    kappa: f64,
    times: &[f64],
) -> Result<Vec<TrajectorySample>> {
    Spectral::new(op)?.damped(f, g, kappa, times)
}

/// Equipartition probe; see [`Spectral::equipartition_probe`].
pub fn equipartition_probe(
    op: &DiscreteOperator,
    f: &[f64],
    g: &[f64],
    horizon: f64,
    samples: usize,
) -> Result<EquipartitionReport> {
    Spectral::new(op)?.equipartition_probe(f, g, horizon, samples)
}

/// Named initial data, evaluated edge by edge in local coordinates.
#[derive(Debug, Clone, PartialEq)]
pub enum InitialData {
    Zero,
    Constant(f64),
    /// `sin(kπx/ℓ_e)` on every edge.
    Sine(u32),
    /// `(1 − ((x − center)/width)²)⁴` inside the support, zero outside; on
    /// the named edge only, or on every edge when `edge` is `None`.
    Bump {
        edge: Option<usize>,
        center: f64,
        width: f64,
    },
    /// One polynomial per edge (monomial coefficients, ascending).
    Polynomials(Vec<Vec<f64>>),
    /// The `k`-th eigenvector (ascending order), normalised in `M_red`.
    Eigenmode(usize),
}

struct Shape<'a> {
    data: &'a InitialData,
    lengths: Vec<f64>,
    bump: Poly,
}

impl EdgewiseFunction for Shape<'_> {
    fn num_edges(&self) -> usize {
        self.lengths.len()
    }

    fn edge_length(&self, edge: usize) -> f64 {
        self.lengths[edge]
    }

    fn max_order(&self) -> usize {
        match self.data {
            InitialData::Bump { .. } => 3,
            _ => usize::MAX,
        }
    }

    fn derivative(&self, edge: usize, x: f64, order: usize) -> Result<f64> {
        let len = *self.lengths.get(edge).ok_or_else(|| Error::OutOfRange(format!("edge {edge}")))?;
        Ok(match self.data {
            InitialData::Zero | InitialData::Eigenmode(_) => 0.0,
            InitialData::Constant(c) => {
                if order == 0 {
                    *c
                } else {
                    0.0
                }
            }
            InitialData::Sine(k) => {
                let w = *k as f64 * core::f64::consts::PI / len;
                libm::pow(w, order as f64) * libm::sin(w * x + order as f64 * core::f64::consts::FRAC_PI_2)
            }
            InitialData::Bump { edge: on, center, width } => {
                if on.is_some_and(|e| e != edge) {
                    return Ok(0.0);
                }
                let s = (x - center) / width;
                if s.abs() >= 1.0 {
                    0.0
                } else {
                    self.bump.eval_derivative(order, s) / libm::pow(*width, order as f64)
                }
            }
            InitialData::Polynomials(p) => Poly::new(p[edge].clone()).eval_derivative(order, x),
        })
    }
}

impl InitialData {
    /// Reduced coordinates of this data: the eigenvector itself for
    /// [`Eigenmode`](Self::Eigenmode), otherwise the product-space projection
    /// of the Hermite interpolant.
    pub fn resolve(&self, spec: &Spectral<'_>) -> Result<Projection> {
        let op = spec.op();
        match self {
            InitialData::Eigenmode(k) => {
                if *k >= spec.basis().len() {
                    return Err(Error::OutOfRange(format!(
                        "eigenmode {k} of a {}-dimensional space",
                        spec.basis().len()
                    )));
                }
                Ok(Projection { coeffs: spec.basis().vector(*k), residual: 0.0 })
            }
            InitialData::Zero => Ok(Projection { coeffs: vec![0.0; op.dim()], residual: 0.0 }),
            _ => {
                if let InitialData::Polynomials(p) = self {
                    if p.len() != op.graph().num_edges() {
                        return Err(Error::Dimension(format!(
                            "{} polynomials for {} edges",
                            p.len(),
                            op.graph().num_edges()
                        )));
                    }
                }
                if let InitialData::Bump { edge, width, .. } = self {
                    if !(*width > 0.0) {
                        return Err(Error::InvalidArgument("bump width must be positive".into()));
                    }
                    if edge.is_some_and(|e| e >= op.graph().num_edges()) {
                        return Err(Error::OutOfRange("bump edge".into()));
                    }
                }
                // (1 − s²)⁴
                let bump = Poly::new(vec![1.0, 0.0, -4.0, 0.0, 6.0, 0.0, -4.0, 0.0, 1.0]);
                let shape = Shape { data: self, lengths: op.graph().edges().iter().map(|e| e.length).collect(), bump };
                op.project(&shape)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conditions::{preset, Preset};
    use crate::discretization::Mesh;
    use crate::graph::{EdgeSpec, MetricGraph};
    use core::f64::consts::PI;

    fn hinged(len: f64, j: usize, n: usize) -> DiscreteOperator {
        let g = MetricGraph::new(&[EdgeSpec::new("e", "a", "b", len)]).unwrap();
        let vc = preset(&Preset::Hinged, &g, j).unwrap();
        DiscreteOperator::assemble(&g, &vc, &Mesh::uniform(&g, n).unwrap()).unwrap()
    }

    fn norm_m(op: &DiscreteOperator, c: &[f64]) -> f64 {
        libm::sqrt(dot(c, &op.m_red().mul_vec(c)))
    }

    #[test]
    fn wave_half_period_flips_sine() {
        let op = hinged(PI, 2, 32);
        let sp = Spectral::new(&op).unwrap();
        let f = InitialData::Sine(1).resolve(&sp).unwrap().coeffs;
        let g = vec![0.0; f.len()];
        let tr = sp.wave(&f, &g, &[0.0, PI]).unwrap();
        let diff: Vec<f64> = tr[1].coeffs.iter().zip(&f).map(|(a, b)| a + b).collect();
        assert!(norm_m(&op, &diff) < 1e-3 * norm_m(&op, &f));
        let zero = sp.wave(&g, &g, &[1.0, 2.0]).unwrap();
        assert!(zero.iter().all(|s| s.coeffs.iter().all(|c| *c == 0.0) && s.total == 0.0));
        assert!(sp.wave(&f, &g, &[]).is_err());
    }

    #[test]
    fn energy_of_sine() {
        let op = hinged(PI, 2, 32);
        let sp = Spectral::new(&op).unwrap();
        let f = InitialData::Sine(1).resolve(&sp).unwrap().coeffs;
        let (k, p, e) = energy(&op, &f, &vec![0.0; f.len()]);
        assert_eq!(k, 0.0);
        assert!((p - PI / 4.0).abs() < 1e-5 && e == p);
        let phi = sp.basis().vector(2);
        let (_, p, _) = energy(&op, &phi, &vec![0.0; phi.len()]);
        assert!((p - sp.values()[2] / 2.0).abs() < 1e-9 * sp.values()[2]);
    }

    #[test]
    fn kernel_mode_stays_constant() {
        let g = MetricGraph::new(&[EdgeSpec::new("a", "x", "y", 1.0), EdgeSpec::new("b", "y", "z", 2.0)]).unwrap();
        let vc = preset(&Preset::Friedrichs, &g, 2).unwrap();
        let op = DiscreteOperator::assemble(&g, &vc, &Mesh::uniform(&g, 6).unwrap()).unwrap();
        let sp = Spectral::new(&op).unwrap();
        let f = InitialData::Constant(0.7).resolve(&sp).unwrap();
        assert!(f.residual < 1e-12);
        let zero = vec![0.0; f.coeffs.len()];
        for s in sp.wave(&f.coeffs, &zero, &[0.5, 3.0, 10.0]).unwrap() {
            let u = op.function(&s.coeffs);
            assert!((u.value(1, 0.3).unwrap() - 0.7).abs() < 1e-9);
        }
        for s in sp.damped(&f.coeffs, &zero, 2.0, &[5.0]).unwrap() {
            assert!((op.function(&s.coeffs).value(0, 0.9).unwrap() - 0.7).abs() < 1e-9);
        }
    }

    #[test]
    fn dirichlet_heat_decay() {
        let op = hinged(PI, 1, 64);
        let sp = Spectral::new(&op).unwrap();
        let f = InitialData::Sine(1).resolve(&sp).unwrap().coeffs;
        let tr = sp.heat(&f, &[0.0, 1.0]).unwrap();
        assert_eq!(tr[0].coeffs.len(), f.len());
        for (a, b) in tr[0].coeffs.iter().zip(&f) {
            assert!((a - b).abs() < 1e-12);
        }
        let want = libm::exp(-1.0) * libm::sqrt(PI / 2.0);
        assert!((norm_m(&op, &tr[1].coeffs) - want).abs() < 1e-3 * want);
        assert!(sp.heat(&f, &[-1.0]).is_err());
    }

    #[test]
    fn damped_with_zero_kappa_is_wave() {
        let op = hinged(2.0, 2, 8);
        let sp = Spectral::new(&op).unwrap();
        let f = InitialData::Sine(2).resolve(&sp).unwrap().coeffs;
        let g = InitialData::Sine(1).resolve(&sp).unwrap().coeffs;
        let times = [0.0, 0.3, 1.7, 4.0];
        let w = sp.wave(&f, &g, &times).unwrap();
        let d = sp.damped(&f, &g, 0.0, &times).unwrap();
        for (a, b) in w.iter().zip(&d) {
            for (x, y) in a.coeffs.iter().zip(&b.coeffs) {
                assert!((x - y).abs() < 1e-12);
            }
        }
        assert!(sp.damped(&f, &g, -1.0, &times).is_err());
    }

    /// Classical fourth-order Runge–Kutta on one mode with a fine step.
    fn rk4(lambda: f64, kappa: f64, f: f64, g: f64, t: f64) -> (f64, f64) {
        let steps = 200_000;
        let h = t / steps as f64;
        let rhs = |u: f64, v: f64| (v, -lambda * (u + kappa * v));
        let (mut u, mut v) = (f, g);
        for _ in 0..steps {
            let k1 = rhs(u, v);
            let k2 = rhs(u + 0.5 * h * k1.0, v + 0.5 * h * k1.1);
            let k3 = rhs(u + 0.5 * h * k2.0, v + 0.5 * h * k2.1);
            let k4 = rhs(u + h * k3.0, v + h * k3.1);
            u += h / 6.0 * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0);
            v += h / 6.0 * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1);
        }
        (u, v)
    }

    #[test]
    fn damped_modes_match_ode_oracle() {
        // overdamped, underdamped, critical (λκ² = 4), and an unstable mode
        for (lambda, kappa) in [(1.0, 3.0), (4.0, 0.3), (1.0, 2.0), (-0.5, 0.4)] {
            for t in [0.5, 2.0, 5.0] {
                let (u, v) = damped_mode(lambda, kappa, 0.8, -0.3, t);
                let (ru, rv) = rk4(lambda, kappa, 0.8, -0.3, t);
                assert!((u - ru).abs() < 1e-8 && (v - rv).abs() < 1e-8, "λ={lambda} κ={kappa} t={t}");
            }
        }
    }

    #[test]
    fn wave_is_even_in_time_for_zero_velocity() {
        let op = hinged(PI, 2, 8);
        let sp = Spectral::new(&op).unwrap();
        let f = InitialData::Bump { edge: None, center: 1.2, width: 0.8 }.resolve(&sp).unwrap().coeffs;
        let z = vec![0.0; f.len()];
        let tr = sp.wave(&f, &z, &[1.3, -1.3]).unwrap();
        for (a, b) in tr[0].coeffs.iter().zip(&tr[1].coeffs) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn equipartition_on_eigenmode() {
        let op = hinged(PI, 2, 16);
        let sp = Spectral::new(&op).unwrap();
        let f = sp.basis().vector(0);
        let z = vec![0.0; f.len()];
        let rep = sp.equipartition_probe(&f, &z, 2.0 * PI, 401).unwrap();
        assert!(rep.k_min < 0.01 * rep.energy && rep.k_max > 0.99 * rep.energy);
        let rep = sp.equipartition_probe(&z, &z, 1.0, 3).unwrap();
        assert_eq!(rep.energy, 0.0);
    }
}
