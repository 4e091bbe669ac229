//! Boundary trace maps of edgewise-smooth functions.
//!
//! The signed normal derivative of order `h` on an edge is
//! `∂ν^h u = (u⁽ʰ⁾(0), u⁽ʰ⁾(ℓ))` for even `h` and `(−u⁽ʰ⁾(0), u⁽ʰ⁾(ℓ))` for
//! odd `h`. Block `k` of `Γ∘u` is `∂ν^k u` and block `k` of `Γ°u` is
//! `(−1)^(j+k) ∂ν^(2j−k−1) u`, which makes
//!
//! ```text
//! ∫ (−1)^j u⁽²ʲ⁾ v − ∫ u⁽ʲ⁾ v⁽ʲ⁾ = Γ°u · Γ∘v
//! ```
//!
//! hold edge by edge.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{boundary_index, BoundarySlot, MetricGraph, Side};
use crate::poly::Poly;

/// A function on the graph given edge by edge, with derivatives available
/// up to [`max_order`](Self::max_order).
pub trait EdgewiseFunction {
    fn num_edges(&self) -> usize;

    fn edge_length(&self, edge: usize) -> f64;

    /// Highest derivative order that can be evaluated.
    fn max_order(&self) -> usize;

    /// `order`-th derivative of `u_e` at local coordinate `x ∈ [0, ℓ_e]`.
    fn derivative(&self, edge: usize, x: f64, order: usize) -> Result<f64>;

    fn value(&self, edge: usize, x: f64) -> Result<f64> {
        self.derivative(edge, x, 0)
    }
}

/// One polynomial per edge, in the local coordinate of that edge.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgePolynomials {
    lengths: Vec<f64>,
    polys: Vec<Poly>,
}

impl EdgePolynomials {
    pub fn new(graph: &MetricGraph, polys: Vec<Poly>) -> Result<Self> {
        if polys.len() != graph.num_edges() {
            return Err(Error::Dimension(format!("{} polynomials for {} edges", polys.len(), graph.num_edges())));
        }
        Ok(EdgePolynomials { lengths: graph.edges().iter().map(|e| e.length).collect(), polys })
    }

    /// The same polynomial on every edge.
    pub fn uniform(graph: &MetricGraph, poly: Poly) -> Self {
        EdgePolynomials {
            lengths: graph.edges().iter().map(|e| e.length).collect(),
            polys: vec![poly; graph.num_edges()],
        }
    }

    pub fn poly(&self, edge: usize) -> &Poly {
        &self.polys[edge]
    }
}

impl EdgewiseFunction for EdgePolynomials {
    fn num_edges(&self) -> usize {
        self.polys.len()
    }

    fn edge_length(&self, edge: usize) -> f64 {
        self.lengths[edge]
    }

    fn max_order(&self) -> usize {
        usize::MAX
    }

    fn derivative(&self, edge: usize, x: f64, order: usize) -> Result<f64> {
        let p = self.polys.get(edge).ok_or_else(|| Error::OutOfRange(format!("edge {edge}")))?;
        Ok(p.eval_derivative(order, x))
    }
}

/// `∂ν^h u` on `edge`: the signed pair (value at 0, value at ℓ).
pub fn normal_derivative<F: EdgewiseFunction + ?Sized>(u: &F, edge: usize, h: usize) -> Result<(f64, f64)> {
    if h > u.max_order() {
        return Err(Error::Smoothness { requested: h, available: u.max_order() });
    }
    let start = u.derivative(edge, 0.0, h)?;
    let end = u.derivative(edge, u.edge_length(edge), h)?;
    Ok((if h % 2 == 1 { -start } else { start }, end))
}

fn fill_blocks<F, G>(u: &F, j: usize, mut order_and_sign: G) -> Result<Vec<f64>>
where
    F: EdgewiseFunction + ?Sized,
    G: FnMut(usize) -> (usize, f64),
{
    let edges = u.num_edges();
    let mut out = vec![0.0; 2 * j * edges];
    for k in 0..j {
        let (h, sign) = order_and_sign(k);
        for edge in 0..edges {
            let (a, b) = normal_derivative(u, edge, h)?;
            out[boundary_index(BoundarySlot { edge, side: Side::Start, k }, j, edges)?] = sign * a;
            out[boundary_index(BoundarySlot { edge, side: Side::End, k }, j, edges)?] = sign * b;
        }
    }
    Ok(out)
}

/// `Γ∘u ∈ ℝ^(2jE)`: block `k` holds `∂ν^k u`.
pub fn gamma_lower<F: EdgewiseFunction + ?Sized>(u: &F, j: usize) -> Result<Vec<f64>> {
    if j == 0 {
        return Err(Error::InvalidArgument("order j must be at least 1".into()));
    }
    fill_blocks(u, j, |k| (k, 1.0))
}

/// `Γ°u ∈ ℝ^(2jE)`: block `k` holds `(−1)^(j+k) ∂ν^(2j−k−1) u`.
pub fn gamma_upper<F: EdgewiseFunction + ?Sized>(u: &F, j: usize) -> Result<Vec<f64>> {
    if j == 0 {
        return Err(Error::InvalidArgument("order j must be at least 1".into()));
    }
    fill_blocks(u, j, |k| (2 * j - k - 1, if (j + k).is_multiple_of(2) { 1.0 } else { -1.0 }))
}

/// The three terms of the integration-by-parts identity and their mismatch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GreenTerms {
    /// `∫ (−1)^j u⁽²ʲ⁾ v`
    pub bulk: f64,
    /// `∫ u⁽ʲ⁾ v⁽ʲ⁾`
    pub energy: f64,
    /// `Γ°u · Γ∘v`
    pub boundary: f64,
    /// `bulk − energy − boundary`
    pub residual: f64,
    /// Magnitude of the individual monomial contributions, for relative tolerances.
    pub scale: f64,
}

/// Evaluates both sides of the Green identity with exact polynomial integration.
pub fn greens_identity(u: &EdgePolynomials, v: &EdgePolynomials, j: usize) -> Result<GreenTerms> {
    if u.num_edges() != v.num_edges() {
        return Err(Error::Dimension("u and v live on different graphs".into()));
    }
    let sign = if j.is_multiple_of(2) { 1.0 } else { -1.0 };
    let mut bulk = 0.0;
    let mut energy = 0.0;
    let mut scale = 0.0;
    for e in 0..u.num_edges() {
        let len = u.edge_length(e);
        let high = u.poly(e).nth_derivative(2 * j).mul(v.poly(e));
        let mixed = u.poly(e).nth_derivative(j).mul(&v.poly(e).nth_derivative(j));
        bulk += sign * high.integrate(len);
        energy += mixed.integrate(len);
        scale += high.integrate_abs_terms(len) + mixed.integrate_abs_terms(len);
    }
    let gu = gamma_upper(u, j)?;
    let gv = gamma_lower(v, j)?;
    let boundary: f64 = gu.iter().zip(&gv).map(|(a, b)| a * b).sum();
    scale += gu.iter().zip(&gv).map(|(a, b)| (a * b).abs()).sum::<f64>();
    Ok(GreenTerms { bulk, energy, boundary, residual: bulk - energy - boundary, scale })
}

/// `∫(−1)^j u⁽²ʲ⁾v − ∫u⁽ʲ⁾v⁽ʲ⁾ − Γ°u·Γ∘v`, zero up to roundoff.
pub fn greens_identity_residual(u: &EdgePolynomials, v: &EdgePolynomials, j: usize) -> Result<f64> {
    Ok(greens_identity(u, v, j)?.residual)
}
