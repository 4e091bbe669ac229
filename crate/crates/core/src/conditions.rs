//! Stationary and dynamic vertex conditions.
//!
//! A set of conditions is described by two mutually orthogonal subspaces of
//! the boundary space `ℝ^(2jE)`: `Y_d` (dynamic part, carried as an extra
//! state component θ) and `Y_s` (stationary part), together with a matrix
//! `S` on `Y_s`, a matrix `D` on `Y_d` and a positive definite weight `Π` on
//! `Y_d`. Subspaces are stored as orthonormal bases; `S`, `D` and `Π` are
//! stored in the coordinates of those bases.
//!
//! # Presets
//!
//! `1_v^k` denotes the vector with ones in every block-`k` slot incident to
//! vertex `v` (a loop contributes two ones).
//!
//! | name | j | `Y_d` | `Y_s` | `S` |
//! |------|---|-------|-------|-----|
//! | `hinged` | any | {0} | all slots of odd block `k` | 0 |
//! | `clamped` | any | {0} | {0} | – |
//! | `free` | any | {0} | everything | 0 |
//! | `continuity_kirchhoff` | any | {0} | `span{1_v^k}` for all `v`, `k < j` | 0 |
//! | `friedrichs` | any | {0} | `span{1_v^0}` for all `v` | 0 |
//! | `dynamic_star(v₁)` | 2 | `1_{v₁}^0` | `1_v^0` (`v ≠ v₁`); all block-1 slots at `v₁`; `(1_v^1)^⊥` at `v ≠ v₁` | `−(1/deg v₁)·1_{v₁}^1 (1_{v₁}^1)ᵀ` |
//! | `point_mass` | 2 | `1_v^0` at the joint | `(1_v^1)^⊥` at the joint | 0 |
//! | `point_mass_degenerate` | 2 | `1_v^0 ⊕ (1_v^1)^⊥` at the joint | {0} | 0 |
//! | `laplacian_dynamic(v₁)` | 1 | `1_{v₁}^0` | `1_v^0` (`v ≠ v₁`) | 0 |
//!
//! `hinged` imposes `u = 0` (and every even derivative below `j` to vanish),
//! leaving the odd blocks free; the natural conditions then kill the
//! remaining even derivatives, so for `j = 1` it is the Dirichlet Laplacian.
//!
//! `dynamic_star` is continuity of `u` and `u''` everywhere, Kirchhoff
//! conditions on `∂ν u` and `∂ν u'''` away from `v₁`, a dynamic condition at
//! `v₁`, and the compatibility condition
//! `u''_e(v₁) = −(1/deg v₁) Σ_{e∼v₁} ∂ν u_e(v₁)` for every edge at `v₁`.
//! The compatibility condition is the natural boundary condition produced by
//! the `S` above; with this scaling the operator is exactly the square of
//! `laplacian_dynamic(v₁)` on the same graph.
//!
//! The point-mass presets connect two edges at their shared vertex; the
//! outer endpoints are clamped.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{boundary_index, MetricGraph};
use crate::numerics::{sym_eig, Mat};

/// Tolerance behind every flag of a [`ValidationReport`].
pub const VALIDATION_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct VertexConditions {
    j: usize,
    dim: usize,
    basis_yd: Mat,
    basis_ys: Mat,
    s: Mat,
    d: Mat,
    pi: Mat,
    label: String,
}

impl VertexConditions {
    /// Assembles conditions from orthonormal bases (columns) and coordinate
    /// matrices. Only dimensions are checked here; see [`validate`](Self::validate).
    pub fn new(j: usize, basis_yd: Mat, basis_ys: Mat, s: Mat, d: Mat, pi: Mat) -> Result<Self> {
        if j == 0 {
            return Err(Error::InvalidConditions("order j must be at least 1".into()));
        }
        let dim = basis_yd.rows();
        if basis_ys.rows() != dim {
            return Err(Error::Dimension(format!("Y_d basis has {dim} rows but Y_s basis has {}", basis_ys.rows())));
        }
        if !dim.is_multiple_of(2 * j) {
            return Err(Error::Dimension(format!("boundary dimension {dim} is not a multiple of 2j = {}", 2 * j)));
        }
        let (dd, ds) = (basis_yd.cols(), basis_ys.cols());
        if dd + ds > dim {
            return Err(Error::Dimension(format!("dim Y_d + dim Y_s = {} exceeds {dim}", dd + ds)));
        }
        for (name, m, n) in [("S", &s, ds), ("D", &d, dd), ("Pi", &pi, dd)] {
            if m.rows() != n || m.cols() != n {
                return Err(Error::Dimension(format!(
                    "{name} is {}x{} but the subspace has dimension {n}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(VertexConditions { j, dim, basis_yd, basis_ys, s, d, pi, label: "explicit".into() })
    }

    /// Builds conditions from arbitrary spanning sets of `Y_d` and `Y_s`,
    /// orthonormalising each. `S`, `D`, `Π` refer to the orthonormalised
    /// bases; missing matrices default to zero (`S`, `D`) or identity (`Π`).
    pub fn from_spanning_sets(
        j: usize,
        dim: usize,
        yd: &[Vec<f64>],
        ys: &[Vec<f64>],
        s: Option<Mat>,
        d: Option<Mat>,
        pi: Option<Mat>,
    ) -> Result<Self> {
        for v in yd.iter().chain(ys) {
            if v.len() != dim {
                return Err(Error::Dimension(format!(
                    "spanning vector of length {} in a boundary space of dimension {dim}",
                    v.len()
                )));
            }
        }
        let byd = orthonormalize(dim, yd);
        let bys = orthonormalize(dim, ys);
        let (dd, ds) = (byd.cols(), bys.cols());
        VertexConditions::new(
            j,
            byd,
            bys,
            s.unwrap_or_else(|| Mat::zeros(ds, ds)),
            d.unwrap_or_else(|| Mat::zeros(dd, dd)),
            pi.unwrap_or_else(|| Mat::identity(dd)),
        )
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn j(&self) -> usize {
        self.j
    }

    /// Dimension `2jE` of the boundary space.
    pub fn boundary_dim(&self) -> usize {
        self.dim
    }

    pub fn dynamic_dim(&self) -> usize {
        self.basis_yd.cols()
    }

    pub fn stationary_dim(&self) -> usize {
        self.basis_ys.cols()
    }

    pub fn basis_yd(&self) -> &Mat {
        &self.basis_yd
    }

    pub fn basis_ys(&self) -> &Mat {
        &self.basis_ys
    }

    pub fn s(&self) -> &Mat {
        &self.s
    }

    pub fn d(&self) -> &Mat {
        &self.d
    }

    pub fn pi(&self) -> &Mat {
        &self.pi
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Orthonormal basis of `Y = Y_d ⊕ Y_s` (Y_d columns first).
    pub fn basis_y(&self) -> Mat {
        let mut cols: Vec<Vec<f64>> = (0..self.basis_yd.cols()).map(|c| self.basis_yd.column(c)).collect();
        cols.extend((0..self.basis_ys.cols()).map(|c| self.basis_ys.column(c)));
        Mat::from_columns(self.dim, &cols).expect("bases share the boundary dimension")
    }

    /// Orthonormal basis of the orthogonal complement `Y^⊥`.
    pub fn basis_y_perp(&self) -> Mat {
        let y = self.basis_y();
        let mut raw: Vec<Vec<f64>> = (0..y.cols()).map(|c| y.column(c)).collect();
        let ny = raw.len();
        for i in 0..self.dim {
            let mut e = vec![0.0; self.dim];
            e[i] = 1.0;
            raw.push(e);
        }
        let all = orthonormalize(self.dim, &raw);
        let cols: Vec<Vec<f64>> = (ny..all.cols()).map(|c| all.column(c)).collect();
        Mat::from_columns(self.dim, &cols).expect("complement columns have boundary dimension")
    }

    /// `S` lifted to the boundary space: `B_s·S·B_sᵀ`.
    pub fn s_lifted(&self) -> Mat {
        self.basis_ys.matmul(&self.s).matmul(&self.basis_ys.transpose())
    }

    /// `D` lifted to the boundary space: `B_d·D·B_dᵀ`.
    pub fn d_lifted(&self) -> Mat {
        self.basis_yd.matmul(&self.d).matmul(&self.basis_yd.transpose())
    }

    /// `Π` lifted to the boundary space: `B_d·Π·B_dᵀ`.
    pub fn pi_lifted(&self) -> Mat {
        self.basis_yd.matmul(&self.pi).matmul(&self.basis_yd.transpose())
    }

    /// Structural and sign checks. Never mutates the conditions.
    pub fn validate(&self) -> ValidationReport {
        let gram_defect = |b: &Mat| b.tr_matmul(b).sub(&Mat::identity(b.cols())).max_abs();
        let asym = |m: &Mat| m.sub(&m.transpose()).max_abs();
        let top_eig = |m: &Mat| -> f64 {
            if m.rows() == 0 {
                return 0.0;
            }
            sym_eig(&m.symmetric_part()).map(|(v, _)| *v.last().unwrap()).unwrap_or(f64::INFINITY)
        };
        let bottom_eig = |m: &Mat| -> f64 {
            if m.rows() == 0 {
                return f64::INFINITY;
            }
            sym_eig(&m.symmetric_part()).map(|(v, _)| v[0]).unwrap_or(f64::NEG_INFINITY)
        };
        let pi_violation = asym(&self.pi).max((2.0 * VALIDATION_TOL - bottom_eig(&self.pi)).max(0.0));
        ValidationReport {
            orthonormal_yd: Flag::new(gram_defect(&self.basis_yd)),
            orthonormal_ys: Flag::new(gram_defect(&self.basis_ys)),
            mutually_orthogonal: Flag::new(self.basis_yd.tr_matmul(&self.basis_ys).max_abs()),
            s_symmetric: Flag::new(asym(&self.s)),
            d_symmetric: Flag::new(asym(&self.d)),
            pi_spd: Flag::new(pi_violation),
            s_negative_semidefinite: Flag::new(top_eig(&self.s).max(0.0)),
            d_negative_semidefinite: Flag::new(top_eig(&self.d).max(0.0)),
        }
    }
}

/// Outcome of one validation check: the measured violation and whether it
/// is within [`VALIDATION_TOL`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Flag {
    pub ok: bool,
    pub violation: f64,
}

impl Flag {
    fn new(violation: f64) -> Self {
        Flag { ok: violation <= VALIDATION_TOL, violation }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidationReport {
    pub orthonormal_yd: Flag,
    pub orthonormal_ys: Flag,
    pub mutually_orthogonal: Flag,
    pub s_symmetric: Flag,
    pub d_symmetric: Flag,
    /// Violation is `max(asymmetry, 2·tol − λ_min(Π))`, clipped at zero.
    pub pi_spd: Flag,
    pub s_negative_semidefinite: Flag,
    pub d_negative_semidefinite: Flag,
}

impl ValidationReport {
    /// Checks without which the product space and its inner product are ill-defined.
    pub fn structurally_valid(&self) -> bool {
        self.orthonormal_yd.ok && self.orthonormal_ys.ok && self.mutually_orthogonal.ok && self.pi_spd.ok
    }

    /// `S` and `D` symmetric, i.e. the form is symmetric.
    pub fn symmetric(&self) -> bool {
        self.s_symmetric.ok && self.d_symmetric.ok
    }

    pub fn entries(&self) -> [(&'static str, Flag); 8] {
        [
            ("orthonormal_Yd", self.orthonormal_yd),
            ("orthonormal_Ys", self.orthonormal_ys),
            ("mutually_orthogonal", self.mutually_orthogonal),
            ("S_symmetric", self.s_symmetric),
            ("D_symmetric", self.d_symmetric),
            ("Pi_spd", self.pi_spd),
            ("S_negative_semidefinite", self.s_negative_semidefinite),
            ("D_negative_semidefinite", self.d_negative_semidefinite),
        ]
    }
}

/// Modified Gram–Schmidt (two passes) with drop tolerance
/// `1e-12·max column norm`; rank-deficient input yields fewer columns.
pub fn orthonormalize(dim: usize, vectors: &[Vec<f64>]) -> Mat {
    let max_norm = vectors.iter().map(|v| crate::numerics::norm2(v)).fold(0.0, f64::max);
    let drop = 1e-12 * max_norm;
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for v in vectors {
        let mut w = v.clone();
        for _ in 0..2 {
            for b in &basis {
                let c = crate::numerics::dot(&w, b);
                w.iter_mut().zip(b).for_each(|(x, y)| *x -= c * y);
            }
        }
        let n = crate::numerics::norm2(&w);
        if n > drop && n > 0.0 {
            w.iter_mut().for_each(|x| *x /= n);
            basis.push(w);
        }
    }
    Mat::from_columns(dim, &basis).expect("vectors share the given dimension")
}

/// Orthogonal projector `B·Bᵀ` onto the span of orthonormal columns `B`.
pub fn projector(basis: &Mat) -> Mat {
    basis.matmul(&basis.transpose())
}

/// Named condition families.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Preset {
    Hinged,
    Clamped,
    Free,
    ContinuityKirchhoff,
    Friedrichs,
    DynamicStar { vertex: String },
    PointMass { joint: Option<String> },
    PointMassDegenerate { joint: Option<String> },
    LaplacianDynamic { vertex: String },
}

impl Preset {
    /// Parses a preset name; `vertex` supplies the distinguished vertex where needed.
    pub fn parse(name: &str, vertex: Option<&str>) -> Result<Self> {
        let need = |v: Option<&str>| {
            v.map(ToString::to_string)
                .ok_or_else(|| Error::InvalidConditions(format!("preset `{name}` needs a vertex")))
        };
        Ok(match name {
            "hinged" => Preset::Hinged,
            "clamped" => Preset::Clamped,
            "free" => Preset::Free,
            "continuity_kirchhoff" => Preset::ContinuityKirchhoff,
            "friedrichs" => Preset::Friedrichs,
            "dynamic_star" => Preset::DynamicStar { vertex: need(vertex)? },
            "point_mass" => Preset::PointMass { joint: vertex.map(ToString::to_string) },
            "point_mass_degenerate" => Preset::PointMassDegenerate { joint: vertex.map(ToString::to_string) },
            "laplacian_dynamic" => Preset::LaplacianDynamic { vertex: need(vertex)? },
            other => return Err(Error::UnknownPreset(other.to_string())),
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Preset::Hinged => "hinged",
            Preset::Clamped => "clamped",
            Preset::Free => "free",
            Preset::ContinuityKirchhoff => "continuity_kirchhoff",
            Preset::Friedrichs => "friedrichs",
            Preset::DynamicStar { .. } => "dynamic_star",
            Preset::PointMass { .. } => "point_mass",
            Preset::PointMassDegenerate { .. } => "point_mass_degenerate",
            Preset::LaplacianDynamic { .. } => "laplacian_dynamic",
        }
    }

    fn required_j(&self) -> Option<usize> {
        match self {
            Preset::DynamicStar { .. } | Preset::PointMass { .. } | Preset::PointMassDegenerate { .. } => Some(2),
            Preset::LaplacianDynamic { .. } => Some(1),
            _ => None,
        }
    }
}

struct SlotVectors<'g> {
    graph: &'g MetricGraph,
    j: usize,
    dim: usize,
}

impl SlotVectors<'_> {
    fn unit(&self, index: usize) -> Vec<f64> {
        let mut v = vec![0.0; self.dim];
        v[index] = 1.0;
        v
    }

    fn slots(&self, v: usize, k: usize) -> Vec<usize> {
        self.graph
            .incident_slots(v, k)
            .expect("vertex index is in range")
            .into_iter()
            .map(|s| boundary_index(s, self.j, self.graph.num_edges()).expect("slot is in range"))
            .collect()
    }

    /// `1_v^k`, unnormalised.
    fn indicator(&self, v: usize, k: usize) -> Vec<f64> {
        let mut out = vec![0.0; self.dim];
        for i in self.slots(v, k) {
            out[i] += 1.0;
        }
        out
    }

    /// Orthonormal basis of the complement of `1_v^k` among the block-`k` slots at `v`.
    fn indicator_complement(&self, v: usize, k: usize) -> Vec<Vec<f64>> {
        let mut raw = vec![self.indicator(v, k)];
        raw.extend(self.slots(v, k).into_iter().map(|i| self.unit(i)));
        let b = orthonormalize(self.dim, &raw);
        (1..b.cols()).map(|c| b.column(c)).collect()
    }

    fn all_block(&self, k: usize) -> Vec<Vec<f64>> {
        let e = self.graph.num_edges();
        (k * 2 * e..(k + 1) * 2 * e).map(|i| self.unit(i)).collect()
    }
}

/// Conditions for a named preset on `graph` at order `j`.
pub fn preset(preset: &Preset, graph: &MetricGraph, j: usize) -> Result<VertexConditions> {
    if j == 0 {
        return Err(Error::InvalidConditions("order j must be at least 1".into()));
    }
    if let Some(req) = preset.required_j() {
        if req != j {
            return Err(Error::InvalidConditions(format!(
                "preset `{}` requires j = {req}, got j = {j}",
                preset.name()
            )));
        }
    }
    let dim = graph.boundary_dim(j);
    let sv = SlotVectors { graph, j, dim };
    let nv = graph.num_vertices();
    let mut yd: Vec<Vec<f64>> = Vec::new();
    let mut ys: Vec<Vec<f64>> = Vec::new();
    let mut s_lifted: Option<Mat> = None;

    match preset {
        Preset::Hinged => {
            for k in (1..j).step_by(2) {
                ys.extend(sv.all_block(k));
            }
        }
        Preset::Clamped => {}
        Preset::Free => {
            for k in 0..j {
                ys.extend(sv.all_block(k));
            }
        }
        Preset::ContinuityKirchhoff => {
            for k in 0..j {
                ys.extend((0..nv).map(|v| sv.indicator(v, k)));
            }
        }
        Preset::Friedrichs => {
            ys.extend((0..nv).map(|v| sv.indicator(v, 0)));
        }
        Preset::LaplacianDynamic { vertex } => {
            let v1 = graph.vertex_index(vertex)?;
            yd.push(sv.indicator(v1, 0));
            ys.extend((0..nv).filter(|&v| v != v1).map(|v| sv.indicator(v, 0)));
        }
        Preset::DynamicStar { vertex } => {
            let v1 = graph.vertex_index(vertex)?;
            yd.push(sv.indicator(v1, 0));
            ys.extend((0..nv).filter(|&v| v != v1).map(|v| sv.indicator(v, 0)));
            ys.extend(sv.slots(v1, 1).into_iter().map(|i| sv.unit(i)));
            for v in (0..nv).filter(|&v| v != v1) {
                ys.extend(sv.indicator_complement(v, 1));
            }
            let one = sv.indicator(v1, 1);
            let scale = -1.0 / graph.degree(v1) as f64;
            let mut m = Mat::zeros(dim, dim);
            for a in 0..dim {
                for b in 0..dim {
                    m[(a, b)] = scale * one[a] * one[b];
                }
            }
            s_lifted = Some(m);
        }
        Preset::PointMass { joint } | Preset::PointMassDegenerate { joint } => {
            let v = point_mass_joint(graph, joint.as_deref())?;
            yd.push(sv.indicator(v, 0));
            let complement = sv.indicator_complement(v, 1);
            if matches!(preset, Preset::PointMass { .. }) {
                ys.extend(complement);
            } else {
                yd.extend(complement);
            }
        }
    }

    let byd = orthonormalize(dim, &yd);
    let bys = orthonormalize(dim, &ys);
    let s = match s_lifted {
        Some(m) => bys.tr_matmul(&m.matmul(&bys)),
        None => Mat::zeros(bys.cols(), bys.cols()),
    };
    let (dd, _) = (byd.cols(), bys.cols());
    let vc = VertexConditions::new(j, byd, bys, s, Mat::zeros(dd, dd), Mat::identity(dd))?;
    Ok(vc.with_label(preset.name()))
}

fn point_mass_joint(graph: &MetricGraph, joint: Option<&str>) -> Result<usize> {
    if graph.num_edges() != 2 {
        return Err(Error::InvalidConditions(format!(
            "point-mass presets need exactly two edges, graph has {}",
            graph.num_edges()
        )));
    }
    let shared: Vec<usize> =
        (0..graph.num_vertices()).filter(|&v| graph.edges().iter().all(|e| e.tail == v || e.head == v)).collect();
    let v = match joint {
        Some(name) => graph.vertex_index(name)?,
        None if shared.len() == 1 => shared[0],
        None => return Err(Error::InvalidConditions("cannot infer the joint vertex; name it explicitly".into())),
    };
    if !shared.contains(&v) || graph.degree(v) != 2 {
        return Err(Error::InvalidConditions(format!("vertex `{}` does not join the two edges", graph.vertices()[v])));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::EdgeSpec;

    fn e(i: usize, n: usize) -> Vec<f64> {
        let mut v = vec![0.0; n];
        v[i] = 1.0;
        v
    }

    fn star() -> MetricGraph {
        MetricGraph::new(&[
            EdgeSpec::new("e0", "c", "a", 1.0),
            EdgeSpec::new("e1", "c", "b", 1.0),
            EdgeSpec::new("e2", "c", "d", 1.0),
        ])
        .unwrap()
    }

    fn single(len: f64) -> MetricGraph {
        MetricGraph::new(&[EdgeSpec::new("e", "a", "b", len)]).unwrap()
    }

    #[test]
    fn validate_examples() {
        let vc = VertexConditions::from_spanning_sets(2, 4, &[e(0, 4)], &[e(2, 4)], None, None, None).unwrap();
        let r = vc.validate();
        assert!(r.entries().iter().all(|(_, f)| f.ok));

        let h = 1.0 / libm::sqrt(2.0);
        let vc = VertexConditions::new(
            2,
            Mat::from_columns(4, &[e(0, 4)]).unwrap(),
            Mat::from_columns(4, &[vec![h, h, 0.0, 0.0]]).unwrap(),
            Mat::zeros(1, 1),
            Mat::zeros(1, 1),
            Mat::identity(1),
        )
        .unwrap();
        let r = vc.validate();
        assert!(!r.mutually_orthogonal.ok);
        assert!((r.mutually_orthogonal.violation - h).abs() < 1e-15);

        let vc = VertexConditions::from_spanning_sets(
            2,
            4,
            &[],
            &[e(2, 4), e(3, 4)],
            Some(Mat::from_rows(&[[0.0, 1.0], [0.0, 0.0]]).unwrap()),
            None,
            None,
        )
        .unwrap();
        let r = vc.validate();
        assert!(!r.s_symmetric.ok);
        assert_eq!(r.s_symmetric.violation, 1.0);
    }

    #[test]
    fn pi_must_be_positive_definite() {
        let vc = VertexConditions::from_spanning_sets(
            1,
            2,
            &[e(0, 2)],
            &[],
            None,
            None,
            Some(Mat::from_rows(&[[0.0]]).unwrap()),
        )
        .unwrap();
        assert!(!vc.validate().pi_spd.ok);
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let err = VertexConditions::from_spanning_sets(2, 4, &[], &[e(2, 4)], Some(Mat::zeros(2, 2)), None, None);
        assert!(matches!(err, Err(Error::Dimension(_))));
        let err = VertexConditions::from_spanning_sets(2, 4, &[vec![1.0, 0.0]], &[], None, None, None);
        assert!(matches!(err, Err(Error::Dimension(_))));
    }

    #[test]
    fn orthonormalize_examples() {
        let b = orthonormalize(2, &[vec![2.0, 0.0], vec![0.0, 3.0]]);
        assert_eq!(b, Mat::identity(2));

        let b = orthonormalize(2, &[vec![1.0, 1.0], vec![2.0, 2.0]]);
        assert_eq!(b.cols(), 1);
        let h = 1.0 / libm::sqrt(2.0);
        assert!((b[(0, 0)] - h).abs() < 1e-15 && (b[(1, 0)] - h).abs() < 1e-15);

        let b = orthonormalize(3, &[]);
        assert_eq!((b.rows(), b.cols()), (3, 0));
    }

    #[test]
    fn projector_examples() {
        let p = projector(&Mat::from_columns(2, &[vec![1.0, 0.0]]).unwrap());
        assert_eq!(p, Mat::from_rows(&[[1.0, 0.0], [0.0, 0.0]]).unwrap());
        assert_eq!(projector(&Mat::zeros(3, 0)), Mat::zeros(3, 3));
        assert_eq!(projector(&Mat::identity(3)), Mat::identity(3));
    }

    #[test]
    fn preset_examples() {
        let vc = preset(&Preset::Hinged, &single(1.0), 2).unwrap();
        assert_eq!(vc.dynamic_dim(), 0);
        assert_eq!(vc.basis_ys().column(0), e(2, 4));
        assert_eq!(vc.basis_ys().column(1), e(3, 4));

        let vc = preset(&Preset::Friedrichs, &star(), 2).unwrap();
        assert_eq!((vc.stationary_dim(), vc.dynamic_dim()), (4, 0));

        let vc = preset(&Preset::LaplacianDynamic { vertex: "c".into() }, &star(), 1).unwrap();
        assert_eq!((vc.dynamic_dim() + vc.stationary_dim(), vc.dynamic_dim()), (4, 1));

        assert!(matches!(Preset::parse("bogus", None), Err(Error::UnknownPreset(_))));
        assert!(preset(&Preset::LaplacianDynamic { vertex: "c".into() }, &star(), 2).is_err());
        assert!(preset(&Preset::DynamicStar { vertex: "zz".into() }, &star(), 2).is_err());
        assert!(Preset::parse("dynamic_star", None).is_err());
    }

    #[test]
    fn dynamic_star_dimensions_and_s() {
        let g = star();
        let vc = preset(&Preset::DynamicStar { vertex: "c".into() }, &g, 2).unwrap();
        // block 0: 4 vertex constants (1 dynamic); block 1: 3 free slots at c, leaves contribute nothing
        assert_eq!(vc.dynamic_dim(), 1);
        assert_eq!(vc.stationary_dim(), 3 + 3);
        let s = vc.s_lifted();
        let c = g.vertex_index("c").unwrap();
        let ones: Vec<usize> =
            g.incident_slots(c, 1).unwrap().into_iter().map(|sl| boundary_index(sl, 2, 3).unwrap()).collect();
        for &a in &ones {
            for &b in &ones {
                assert!((s[(a, b)] + 1.0 / 3.0).abs() < 1e-14);
            }
        }
        assert!(vc.validate().s_negative_semidefinite.ok);
    }

    #[test]
    fn point_mass_presets() {
        let g = MetricGraph::new(&[EdgeSpec::new("l", "a", "m", 1.0), EdgeSpec::new("r", "m", "b", 1.0)]).unwrap();
        let pm = preset(&Preset::PointMass { joint: None }, &g, 2).unwrap();
        assert_eq!((pm.dynamic_dim(), pm.stationary_dim()), (1, 1));
        let pmd = preset(&Preset::PointMassDegenerate { joint: Some("m".into()) }, &g, 2).unwrap();
        assert_eq!((pmd.dynamic_dim(), pmd.stationary_dim()), (2, 0));
        assert!(preset(&Preset::PointMass { joint: Some("a".into()) }, &g, 2).is_err());
        assert!(preset(&Preset::PointMass { joint: None }, &star(), 2).is_err());
    }

    #[test]
    fn friedrichs_and_kirchhoff_agree_for_laplacian() {
        let g = star();
        let f = preset(&Preset::Friedrichs, &g, 1).unwrap();
        let k = preset(&Preset::ContinuityKirchhoff, &g, 1).unwrap();
        assert!(projector(f.basis_ys()).sub(&projector(k.basis_ys())).max_abs() < 1e-14);
    }

    #[test]
    fn every_preset_is_structurally_valid() {
        let g = star();
        let looped = MetricGraph::new(&[EdgeSpec::new("l", "v", "v", 2.0), EdgeSpec::new("e", "v", "w", 1.0)]).unwrap();
        let pm = MetricGraph::new(&[EdgeSpec::new("l", "a", "m", 1.0), EdgeSpec::new("r", "m", "b", 2.0)]).unwrap();
        let cases: Vec<(Preset, &MetricGraph, usize)> = vec![
            (Preset::Hinged, &g, 1),
            (Preset::Hinged, &g, 2),
            (Preset::Hinged, &g, 3),
            (Preset::Clamped, &g, 2),
            (Preset::Free, &looped, 2),
            (Preset::ContinuityKirchhoff, &looped, 3),
            (Preset::Friedrichs, &looped, 2),
            (Preset::DynamicStar { vertex: "c".into() }, &g, 2),
            (Preset::DynamicStar { vertex: "v".into() }, &looped, 2),
            (Preset::PointMass { joint: None }, &pm, 2),
            (Preset::PointMassDegenerate { joint: None }, &pm, 2),
            (Preset::LaplacianDynamic { vertex: "a".into() }, &g, 1),
        ];
        for (p, graph, j) in cases {
            let vc = preset(&p, graph, j).unwrap();
            let r = vc.validate();
            assert!(r.structurally_valid() && r.symmetric(), "{p:?}");
            let (pd, ps) = (projector(vc.basis_yd()), projector(vc.basis_ys()));
            assert!(pd.matmul(&pd).sub(&pd).max_abs() < 1e-12);
            assert!(ps.matmul(&ps).sub(&ps).max_abs() < 1e-12);
            assert!(pd.matmul(&ps).max_abs() < 1e-12);
        }
    }
}
