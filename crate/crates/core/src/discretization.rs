//! Conforming Hermite finite elements for the form on the product space.
//!
//! Each edge carries a `C^(j−1)` piecewise polynomial of degree `2j−1`. The
//! degrees of freedom are physical derivatives `u⁽ʰ⁾(x_i)`, `h < j`, at the
//! mesh nodes of that edge:
//!
//! ```text
//! dof(e, i, h) = offset_e + i·j + h,    offset_e = Σ_{e' < e} j·(n_e' + 1)
//! ```
//!
//! Edge endpoints are not shared between edges. Vertex coupling enters only
//! through the constraint `Γ∘u ∈ Y`, imposed by restricting to the kernel of
//! `B_{Y⊥}ᵀ G`, and through the `S`, `D`, `Π` terms.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::conditions::VertexConditions;
use crate::error::{Error, Result};
use crate::graph::{boundary_index, BoundarySlot, MetricGraph, Side};
use crate::numerics::{cholesky, cholesky_solve, dot, gen_eig, lu_solve, nullspace, EigenBasis, Mat};
use crate::poly::Poly;
use crate::traces::EdgewiseFunction;

/// Element breakpoints on every edge.
#[derive(Debug, Clone, PartialEq)]
pub struct Mesh {
    breakpoints: Vec<Vec<f64>>,
}

impl Mesh {
    /// `n` equal elements on every edge.
    pub fn uniform(graph: &MetricGraph, n: usize) -> Result<Self> {
        Mesh::per_edge(graph, &vec![n; graph.num_edges()])
    }

    /// `counts[e]` equal elements on edge `e`.
    pub fn per_edge(graph: &MetricGraph, counts: &[usize]) -> Result<Self> {
        if counts.len() != graph.num_edges() {
            return Err(Error::Dimension(format!("{} element counts for {} edges", counts.len(), graph.num_edges())));
        }
        let bps = counts
            .iter()
            .zip(graph.edges())
            .map(|(&n, e)| {
                if n == 0 {
                    return Err(Error::InvalidArgument(format!("edge `{}` needs at least one element", e.id)));
                }
                let mut b: Vec<f64> = (0..=n).map(|i| e.length * i as f64 / n as f64).collect();
                b[n] = e.length;
                Ok(b)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Mesh { breakpoints: bps })
    }

    pub fn from_breakpoints(graph: &MetricGraph, breakpoints: Vec<Vec<f64>>) -> Result<Self> {
        if breakpoints.len() != graph.num_edges() {
            return Err(Error::Dimension(format!(
                "{} breakpoint lists for {} edges",
                breakpoints.len(),
                graph.num_edges()
            )));
        }
        for (b, e) in breakpoints.iter().zip(graph.edges()) {
            let ok = b.len() >= 2 && b[0] == 0.0 && *b.last().unwrap() == e.length && b.windows(2).all(|w| w[1] > w[0]);
            if !ok {
                return Err(Error::InvalidArgument(format!(
                    "breakpoints on edge `{}` must increase strictly from 0 to {}",
                    e.id, e.length
                )));
            }
        }
        Ok(Mesh { breakpoints })
    }

    pub fn num_edges(&self) -> usize {
        self.breakpoints.len()
    }

    pub fn elements(&self, edge: usize) -> usize {
        self.breakpoints[edge].len() - 1
    }

    pub fn breakpoints(&self, edge: usize) -> &[f64] {
        &self.breakpoints[edge]
    }

    /// Element containing `x`, with its left node and length. Interior nodes
    /// belong to the element on their right; `x = ℓ` to the last element.
    fn locate(&self, edge: usize, x: f64) -> (usize, f64, f64) {
        let b = &self.breakpoints[edge];
        let n = b.len() - 1;
        let i = match b.partition_point(|&y| y <= x) {
            0 => 0,
            k => (k - 1).min(n - 1),
        };
        (i, b[i], b[i + 1] - b[i])
    }
}

/// Reference Hermite basis on `[0, 1]`, indexed `s·j + h` for node `s ∈ {0, 1}`
/// and derivative order `h < j`.
#[derive(Debug, Clone, PartialEq)]
pub struct HermiteBasis {
    j: usize,
    /// `derivs[a][m]` is the `m`-th derivative of shape function `a`.
    derivs: Vec<Vec<Poly>>,
}

impl HermiteBasis {
    pub fn new(j: usize) -> Result<Self> {
        let polys = hermite_shape_functions(j)?;
        let derivs = polys
            .into_iter()
            .map(|p| {
                let mut d = Vec::with_capacity(2 * j);
                let mut cur = p;
                for _ in 0..2 * j {
                    let next = cur.derivative();
                    d.push(cur);
                    cur = next;
                }
                d
            })
            .collect();
        Ok(HermiteBasis { j, derivs })
    }

    pub fn j(&self) -> usize {
        self.j
    }

    pub fn shape(&self, a: usize) -> &Poly {
        &self.derivs[a][0]
    }

    /// `m`-th derivative of shape function `a` at `t`; zero beyond degree.
    pub fn eval(&self, a: usize, m: usize, t: f64) -> f64 {
        self.derivs[a].get(m).map_or(0.0, |p| p.eval(t))
    }
}

/// The `2j` Hermite shape functions of degree `2j−1` on `[0, 1]`, ordered
/// `N_{0,0}, …, N_{0,j−1}, N_{1,0}, …, N_{1,j−1}`.
pub fn hermite_shape_functions(j: usize) -> Result<Vec<Poly>> {
    if j == 0 {
        return Err(Error::InvalidArgument("order j must be at least 1".into()));
    }
    let n = 2 * j;
    // row (s, m): m-th derivative of each monomial at node s
    let mut v = Mat::zeros(n, n);
    for s in 0..2 {
        for m in 0..j {
            for i in m..n {
                let fall: f64 = (0..m).map(|q| (i - q) as f64).product();
                let x: f64 = if s == 0 {
                    if i == m {
                        1.0
                    } else {
                        0.0
                    }
                } else {
                    1.0
                };
                v[(s * j + m, i)] = fall * x;
            }
        }
    }
    (0..n)
        .map(|a| {
            let mut rhs = vec![0.0; n];
            rhs[a] = 1.0;
            lu_solve(&v, &rhs).map(Poly::new)
        })
        .collect()
}

/// Gauss–Legendre nodes (ascending) and weights on `[0, 1]`.
pub fn gauss_legendre(points: usize) -> (Vec<f64>, Vec<f64>) {
    let n = points as f64;
    let mut nodes = Vec::with_capacity(points);
    let mut weights = Vec::with_capacity(points);
    for i in 0..points {
        let mut x = libm::cos(core::f64::consts::PI * (i as f64 + 0.75) / (n + 0.5));
        let mut dp = 1.0;
        for _ in 0..100 {
            // P_n and P_{n-1} by the three-term recurrence
            let (mut prev, mut cur) = (1.0, x);
            for k in 2..=points {
                let k = k as f64;
                let next = ((2.0 * k - 1.0) * x * cur - (k - 1.0) * prev) / k;
                prev = cur;
                cur = next;
            }
            dp = n * (x * cur - prev) / (x * x - 1.0);
            let dx = cur / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes.push(0.5 * (1.0 - x));
        weights.push(1.0 / ((1.0 - x * x) * dp * dp));
    }
    (nodes, weights)
}

/// Element stiffness `∫ φ_a⁽ʲ⁾ φ_b⁽ʲ⁾` and `1/p`-weighted mass `∫ φ_a φ_b / p`
/// on an element of length `h`, in local order `(s, derivative)`.
pub fn element_matrices(j: usize, h: f64, p: f64) -> Result<(Mat, Mat)> {
    if !(h > 0.0) || !(p > 0.0) {
        return Err(Error::InvalidArgument(format!("element length {h} and coefficient {p} must be positive")));
    }
    let basis = HermiteBasis::new(j)?;
    Ok(element_matrices_with(&basis, h, p))
}

fn element_matrices_with(basis: &HermiteBasis, h: f64, p: f64) -> (Mat, Mat) {
    let j = basis.j;
    let n = 2 * j;
    let (nodes, weights) = gauss_legendre(2 * j + 1);
    let order = |a: usize| (a % j) as i32;
    let mut k = Mat::zeros(n, n);
    let mut m = Mat::zeros(n, n);
    for a in 0..n {
        for b in a..n {
            let mut kab = 0.0;
            let mut mab = 0.0;
            for (&t, &w) in nodes.iter().zip(&weights) {
                kab += w * basis.eval(a, j, t) * basis.eval(b, j, t);
                mab += w * basis.eval(a, 0, t) * basis.eval(b, 0, t);
            }
            let ka = kab * libm::pow(h, (order(a) + order(b) - 2 * j as i32 + 1) as f64);
            let ma = mab * libm::pow(h, (order(a) + order(b) + 1) as f64) / p;
            k[(a, b)] = ka;
            k[(b, a)] = ka;
            m[(a, b)] = ma;
            m[(b, a)] = ma;
        }
    }
    (k, m)
}

/// Orthonormal basis of `{u : B_{Y⊥}ᵀ G u = 0}`.
pub fn constraint_nullspace(g: &Mat, basis_y_perp: &Mat) -> Mat {
    nullspace(&basis_y_perp.tr_matmul(g))
}

/// Discrete realisation of the form and inner product on the constrained space.
#[derive(Debug, Clone)]
pub struct DiscreteOperator {
    graph: MetricGraph,
    conditions: VertexConditions,
    mesh: Mesh,
    basis: HermiteBasis,
    offsets: Vec<usize>,
    k_full: Mat,
    m_full: Mat,
    g: Mat,
    z: Mat,
    a_red: Mat,
    m_red: Mat,
    gd: Mat,
}

/// Result of projecting data onto the reduced space.
#[derive(Debug, Clone, PartialEq)]
pub struct Projection {
    pub coeffs: Vec<f64>,
    /// `‖u − Zc‖ / ‖u‖` in the product-space norm (0 for zero data).
    pub residual: f64,
}

impl DiscreteOperator {
    pub fn assemble(graph: &MetricGraph, vc: &VertexConditions, mesh: &Mesh) -> Result<Self> {
        let j = vc.j();
        if vc.boundary_dim() != graph.boundary_dim(j) {
            return Err(Error::Dimension(format!(
                "conditions live in dimension {} but the graph has boundary dimension {}",
                vc.boundary_dim(),
                graph.boundary_dim(j)
            )));
        }
        if mesh.num_edges() != graph.num_edges() {
            return Err(Error::Dimension(format!(
                "mesh has {} edges, graph has {}",
                mesh.num_edges(),
                graph.num_edges()
            )));
        }
        let report = vc.validate();
        if !report.structurally_valid() {
            return Err(Error::InvalidConditions(format!("conditions fail validation: {report:?}")));
        }
        let basis = HermiteBasis::new(j)?;
        let ne = graph.num_edges();
        let mut offsets = Vec::with_capacity(ne + 1);
        offsets.push(0);
        for e in 0..ne {
            offsets.push(offsets[e] + j * (mesh.elements(e) + 1));
        }
        let n = offsets[ne];

        let mut k_full = Mat::zeros(n, n);
        let mut m_full = Mat::zeros(n, n);
        for (e, edge) in graph.edges().iter().enumerate() {
            let b = mesh.breakpoints(e);
            for i in 0..mesh.elements(e) {
                let (ke, me) = element_matrices_with(&basis, b[i + 1] - b[i], edge.p);
                let base = offsets[e] + i * j;
                for a in 0..2 * j {
                    for c in 0..2 * j {
                        k_full[(base + a, base + c)] += ke[(a, c)];
                        m_full[(base + a, base + c)] += me[(a, c)];
                    }
                }
            }
        }

        let dim = graph.boundary_dim(j);
        let mut g = Mat::zeros(dim, n);
        for e in 0..ne {
            for k in 0..j {
                for side in Side::BOTH {
                    let row = boundary_index(BoundarySlot { edge: e, side, k }, j, ne)?;
                    let (node, sign) = match side {
                        Side::Start => (0, if k % 2 == 1 { -1.0 } else { 1.0 }),
                        Side::End => (mesh.elements(e), 1.0),
                    };
                    g[(row, offsets[e] + node * j + k)] = sign;
                }
            }
        }

        let z = constraint_nullspace(&g, &vc.basis_y_perp());
        if z.cols() == 0 {
            return Err(Error::NoDegreesOfFreedom);
        }
        let form = k_full.sub(&g.tr_matmul(&vc.s_lifted().add(&vc.d_lifted()).matmul(&g)));
        let prod_mass = m_full.add(&g.tr_matmul(&vc.pi_lifted().matmul(&g)));
        let a_red = form.congruence(&z);
        let m_red = prod_mass.congruence(&z).symmetric_part();
        let gd = vc.basis_yd().tr_matmul(&g.matmul(&z));

        Ok(DiscreteOperator {
            graph: graph.clone(),
            conditions: vc.clone(),
            mesh: mesh.clone(),
            basis,
            offsets,
            k_full,
            m_full,
            g,
            z,
            a_red,
            m_red,
            gd,
        })
    }

    pub fn j(&self) -> usize {
        self.conditions.j()
    }

    pub fn graph(&self) -> &MetricGraph {
        &self.graph
    }

    pub fn conditions(&self) -> &VertexConditions {
        &self.conditions
    }

    pub fn mesh(&self) -> &Mesh {
        &self.mesh
    }

    /// Number of reduced coordinates.
    pub fn dim(&self) -> usize {
        self.z.cols()
    }

    /// Number of unconstrained Hermite coefficients.
    pub fn full_dim(&self) -> usize {
        self.z.rows()
    }

    pub fn z(&self) -> &Mat {
        &self.z
    }

    pub fn a_red(&self) -> &Mat {
        &self.a_red
    }

    pub fn m_red(&self) -> &Mat {
        &self.m_red
    }

    /// Boundary extraction: full coefficients to `Γ∘u`.
    pub fn g(&self) -> &Mat {
        &self.g
    }

    /// Reduced coordinates to θ in the `Y_d` basis.
    pub fn gd(&self) -> &Mat {
        &self.gd
    }

    /// Unconstrained stiffness `∫u⁽ʲ⁾v⁽ʲ⁾`.
    pub fn k_full(&self) -> &Mat {
        &self.k_full
    }

    /// Unconstrained `1/p`-weighted mass.
    pub fn m_full(&self) -> &Mat {
        &self.m_full
    }

    /// First global coefficient of each edge (plus the total at the end).
    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    /// Unconstrained product-space mass `M + GᵀB_dΠB_dᵀG`.
    pub fn product_mass_full(&self) -> Mat {
        self.m_full.add(&self.g.tr_matmul(&self.conditions.pi_lifted().matmul(&self.g)))
    }

    /// Unconstrained form matrix `K − Gᵀ(S' + D')G`.
    pub fn form_full(&self) -> Mat {
        let sd = self.conditions.s_lifted().add(&self.conditions.d_lifted());
        self.k_full.sub(&self.g.tr_matmul(&sd.matmul(&self.g)))
    }

    /// Eigenpairs of the pencil `(A_red, M_red)`.
    pub fn eigen(&self) -> Result<EigenBasis> {
        gen_eig(&self.a_red, &self.m_red)
    }

    /// Full coefficient vector `Z·c`.
    pub fn expand(&self, c: &[f64]) -> Vec<f64> {
        self.z.mul_vec(c)
    }

    /// θ coordinates `Gd·c`.
    pub fn theta(&self, c: &[f64]) -> Vec<f64> {
        self.gd.mul_vec(c)
    }

    /// Sparse weights `w` with `u⁽ᵐ⁾(x) = Σ w_i·u_i` over full coefficients.
    pub fn point_weights(&self, edge: usize, x: f64, order: usize) -> Result<Vec<(usize, f64)>> {
        let j = self.j();
        if edge >= self.graph.num_edges() {
            return Err(Error::OutOfRange(format!("edge {edge}")));
        }
        if order > 2 * j - 1 {
            return Err(Error::Smoothness { requested: order, available: 2 * j - 1 });
        }
        let len = self.graph.edge(edge).length;
        if !(-1e-12 * len..=len * (1.0 + 1e-12)).contains(&x) {
            return Err(Error::OutOfRange(format!("x = {x} on edge of length {len}")));
        }
        let (i, x0, h) = self.mesh.locate(edge, x);
        let t = ((x - x0) / h).clamp(0.0, 1.0);
        let base = self.offsets[edge] + i * j;
        Ok((0..2 * j)
            .map(|a| {
                let hh = (a % j) as i32;
                (base + a, libm::pow(h, (hh - order as i32) as f64) * self.basis.eval(a, order, t))
            })
            .collect())
    }

    /// The discrete function with reduced coordinates `c`.
    pub fn function(&self, c: &[f64]) -> DiscreteFunction<'_> {
        DiscreteFunction { op: self, coeffs: self.expand(c) }
    }

    /// Same as [`function`](Self::function) for full coefficients.
    pub fn function_full(&self, u: Vec<f64>) -> DiscreteFunction<'_> {
        DiscreteFunction { op: self, coeffs: u }
    }

    /// Hermite interpolant (full coefficients) of an edgewise function.
    pub fn interpolate<F: EdgewiseFunction + ?Sized>(&self, f: &F) -> Result<Vec<f64>> {
        let j = self.j();
        if f.num_edges() != self.graph.num_edges() {
            return Err(Error::Dimension(format!(
                "function has {} edges, graph has {}",
                f.num_edges(),
                self.graph.num_edges()
            )));
        }
        if f.max_order() < j - 1 {
            return Err(Error::Smoothness { requested: j - 1, available: f.max_order() });
        }
        let mut u = vec![0.0; self.full_dim()];
        for e in 0..self.graph.num_edges() {
            for (i, &x) in self.mesh.breakpoints(e).iter().enumerate() {
                for h in 0..j {
                    u[self.offsets[e] + i * j + h] = f.derivative(e, x, h)?;
                }
            }
        }
        Ok(u)
    }

    /// Product-space orthogonal projection of full coefficients onto the
    /// constrained space.
    pub fn project_full(&self, u: &[f64]) -> Result<Projection> {
        if u.len() != self.full_dim() {
            return Err(Error::Dimension(format!("{} coefficients, expected {}", u.len(), self.full_dim())));
        }
        let pm = self.product_mass_full();
        let pu = pm.mul_vec(u);
        let rhs = self.z.tr_mul_vec(&pu);
        let l = cholesky(&self.m_red)?;
        let c = cholesky_solve(&l, &rhs);
        let norm_sq = dot(u, &pu);
        let residual = if norm_sq > 0.0 {
            let zc = self.expand(&c);
            let d: Vec<f64> = u.iter().zip(&zc).map(|(a, b)| a - b).collect();
            libm::sqrt(dot(&d, &pm.mul_vec(&d)).max(0.0) / norm_sq)
        } else {
            0.0
        };
        Ok(Projection { coeffs: c, residual })
    }

    /// Interpolates and then projects an edgewise function.
    pub fn project<F: EdgewiseFunction + ?Sized>(&self, f: &F) -> Result<Projection> {
        self.project_full(&self.interpolate(f)?)
    }
}

/// A finite element function, usable wherever an [`EdgewiseFunction`] is expected.
#[derive(Debug, Clone)]
pub struct DiscreteFunction<'a> {
    op: &'a DiscreteOperator,
    coeffs: Vec<f64>,
}

impl DiscreteFunction<'_> {
    pub fn coefficients(&self) -> &[f64] {
        &self.coeffs
    }
}

impl EdgewiseFunction for DiscreteFunction<'_> {
    fn num_edges(&self) -> usize {
        self.op.graph.num_edges()
    }

    fn edge_length(&self, edge: usize) -> f64 {
        self.op.graph.edge(edge).length
    }

    fn max_order(&self) -> usize {
        2 * self.op.j() - 1
    }

    fn derivative(&self, edge: usize, x: f64, order: usize) -> Result<f64> {
        Ok(self.op.point_weights(edge, x, order)?.into_iter().map(|(i, w)| w * self.coeffs[i]).sum())
    }
}
