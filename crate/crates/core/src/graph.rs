//! Finite connected metric graphs and the indexing of the boundary space.
//!
//! Every edge `e` is identified with `[0, ℓ_e]`, oriented from its tail
//! (local coordinate 0) to its head (local coordinate `ℓ_e`). For an operator
//! of order `2j` the boundary space has dimension `2jE`, laid out
//! derivative-block-major, then side, then edge:
//!
//! ```text
//! index(e, side, k) = k·2E + side·E + e
//! ```

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Edge description as supplied by the caller.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeSpec {
    pub id: String,
    pub tail: String,
    pub head: String,
    pub length: f64,
    /// Edgewise-constant elasticity coefficient `p_e > 0`.
    pub p: f64,
}

impl EdgeSpec {
    pub fn new(id: impl Into<String>, tail: impl Into<String>, head: impl Into<String>, length: f64) -> Self {
        EdgeSpec { id: id.into(), tail: tail.into(), head: head.into(), length, p: 1.0 }
    }

    pub fn with_p(mut self, p: f64) -> Self {
        self.p = p;
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Edge {
    pub id: String,
    pub tail: usize,
    pub head: usize,
    pub length: f64,
    pub p: f64,
}

/// Endpoint of an edge: `Start` is local coordinate 0, `End` is `ℓ_e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Start = 0,
    End = 1,
}

impl Side {
    pub const BOTH: [Side; 2] = [Side::Start, Side::End];

    pub fn index(self) -> usize {
        self as usize
    }
}

/// One coordinate of the boundary space: edge, endpoint and derivative block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoundarySlot {
    pub edge: usize,
    pub side: Side,
    pub k: usize,
}

/// Global position of `slot` in the boundary space of an order-`2j` operator
/// on a graph with `edges` edges.
pub fn boundary_index(slot: BoundarySlot, j: usize, edges: usize) -> Result<usize> {
    if slot.k >= j {
        return Err(Error::OutOfRange(format!("derivative block {} with j = {j}", slot.k)));
    }
    if slot.edge >= edges {
        return Err(Error::OutOfRange(format!("edge {} with E = {edges}", slot.edge)));
    }
    Ok(slot.k * 2 * edges + slot.side.index() * edges + slot.edge)
}

/// Inverse of [`boundary_index`].
pub fn slot_at(index: usize, j: usize, edges: usize) -> Result<BoundarySlot> {
    if edges == 0 || index >= 2 * j * edges {
        return Err(Error::OutOfRange(format!("boundary index {index} with j = {j}, E = {edges}")));
    }
    let k = index / (2 * edges);
    let rest = index % (2 * edges);
    let side = if rest < edges { Side::Start } else { Side::End };
    Ok(BoundarySlot { edge: rest % edges, side, k })
}

#[derive(Debug, Clone, PartialEq)]
pub struct MetricGraph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
}

impl MetricGraph {
    /// Builds a connected metric graph. Edges keep their input order;
    /// vertices are numbered in order of first appearance.
    pub fn new(specs: &[EdgeSpec]) -> Result<Self> {
        if specs.is_empty() {
            return Err(Error::InvalidGraph("edge list is empty".into()));
        }
        let mut vertices: Vec<String> = Vec::new();
        let vid = |name: &str, vertices: &mut Vec<String>| -> usize {
            match vertices.iter().position(|v| v == name) {
                Some(i) => i,
                None => {
                    vertices.push(name.to_string());
                    vertices.len() - 1
                }
            }
        };
        let mut edges = Vec::with_capacity(specs.len());
        for s in specs {
            if !(s.length > 0.0) || !s.length.is_finite() {
                return Err(Error::InvalidGraph(format!("edge `{}` has length {}", s.id, s.length)));
            }
            if !(s.p > 0.0) || !s.p.is_finite() {
                return Err(Error::InvalidGraph(format!("edge `{}` has coefficient p = {}", s.id, s.p)));
            }
            if edges.iter().any(|e: &Edge| e.id == s.id) {
                return Err(Error::InvalidGraph(format!("duplicate edge id `{}`", s.id)));
            }
            let tail = vid(&s.tail, &mut vertices);
            let head = vid(&s.head, &mut vertices);
            edges.push(Edge { id: s.id.clone(), tail, head, length: s.length, p: s.p });
        }
        let g = MetricGraph { vertices, edges };
        if !g.is_connected() {
            return Err(Error::InvalidGraph("graph is not connected".into()));
        }
        Ok(g)
    }

    fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for e in &self.edges {
                for (a, b) in [(e.tail, e.head), (e.head, e.tail)] {
                    if a == v && !seen[b] {
                        seen[b] = true;
                        stack.push(b);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    pub fn total_length(&self) -> f64 {
        self.edges.iter().map(|e| e.length).sum()
    }

    pub fn vertex_index(&self, name: &str) -> Result<usize> {
        self.vertices.iter().position(|v| v == name).ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn edge_index(&self, id: &str) -> Result<usize> {
        self.edges.iter().position(|e| e.id == id).ok_or_else(|| Error::InvalidArgument(format!("unknown edge `{id}`")))
    }

    /// Number of edge endpoints at vertex `v` (a loop counts twice).
    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().map(|e| (e.tail == v) as usize + (e.head == v) as usize).sum()
    }

    /// Vertex at the given endpoint of edge `e`.
    pub fn endpoint(&self, e: usize, side: Side) -> usize {
        match side {
            Side::Start => self.edges[e].tail,
            Side::End => self.edges[e].head,
        }
    }

    /// All slots at derivative block `k` whose endpoint is vertex `v`, in
    /// edge order; a loop contributes its start then its end.
    pub fn incident_slots(&self, v: usize, k: usize) -> Result<Vec<BoundarySlot>> {
        if v >= self.vertices.len() {
            return Err(Error::UnknownVertex(format!("#{v}")));
        }
        let mut out = Vec::new();
        for (e, edge) in self.edges.iter().enumerate() {
            if edge.tail == v {
                out.push(BoundarySlot { edge: e, side: Side::Start, k });
            }
            if edge.head == v {
                out.push(BoundarySlot { edge: e, side: Side::End, k });
            }
        }
        Ok(out)
    }

    /// Same as [`incident_slots`](Self::incident_slots) but addressed by vertex name.
    pub fn incident_slots_named(&self, vertex: &str, k: usize) -> Result<Vec<BoundarySlot>> {
        self.incident_slots(self.vertex_index(vertex)?, k)
    }

    pub fn boundary_dim(&self, j: usize) -> usize {
        2 * j * self.edges.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn star() -> MetricGraph {
        MetricGraph::new(&[
            EdgeSpec::new("e0", "c", "a", 1.0),
            EdgeSpec::new("e1", "c", "b", 1.0),
            EdgeSpec::new("e2", "c", "d", 1.0),
        ])
        .unwrap()
    }

    #[test]
    fn build_examples() {
        let g = MetricGraph::new(&[EdgeSpec::new("e", "v1", "v2", 1.0)]).unwrap();
        assert_eq!((g.num_edges(), g.num_vertices()), (1, 2));

        let g = star();
        assert_eq!((g.num_edges(), g.num_vertices()), (3, 4));
        assert_eq!(g.degree(g.vertex_index("c").unwrap()), 3);

        assert!(MetricGraph::new(&[EdgeSpec::new("e", "a", "b", -1.0)]).is_err());
        assert!(MetricGraph::new(&[EdgeSpec::new("e", "a", "b", 1.0).with_p(0.0)]).is_err());
        assert!(MetricGraph::new(&[]).is_err());
    }

    #[test]
    fn disconnected_graph_rejected() {
        let err =
            MetricGraph::new(&[EdgeSpec::new("e0", "a", "b", 1.0), EdgeSpec::new("e1", "c", "d", 1.0)]).unwrap_err();
        assert!(matches!(err, Error::InvalidGraph(_)));
    }

    #[test]
    fn boundary_index_examples() {
        let s = |edge, side, k| BoundarySlot { edge, side, k };
        assert_eq!(boundary_index(s(0, Side::Start, 0), 2, 2).unwrap(), 0);
        assert_eq!(boundary_index(s(0, Side::Start, 1), 2, 2).unwrap(), 4);
        assert_eq!(boundary_index(s(1, Side::End, 1), 2, 2).unwrap(), 7);
        assert!(boundary_index(s(0, Side::Start, 2), 2, 2).is_err());
        assert!(boundary_index(s(2, Side::Start, 0), 2, 2).is_err());
    }

    #[test]
    fn boundary_index_is_a_bijection() {
        for j in 1..=4 {
            for edges in 1..=5 {
                let mut hit = vec![false; 2 * j * edges];
                for k in 0..j {
                    for side in Side::BOTH {
                        for edge in 0..edges {
                            let slot = BoundarySlot { edge, side, k };
                            let i = boundary_index(slot, j, edges).unwrap();
                            assert!(!hit[i]);
                            hit[i] = true;
                            assert_eq!(slot_at(i, j, edges).unwrap(), slot);
                        }
                    }
                }
                assert!(hit.into_iter().all(|h| h));
            }
        }
    }

    #[test]
    fn incident_slot_examples() {
        let g = star();
        let c = g.vertex_index("c").unwrap();
        let slots = g.incident_slots(c, 0).unwrap();
        assert_eq!(slots.len(), 3);
        assert!(slots.iter().all(|s| s.side == Side::Start));
        assert_eq!(g.incident_slots_named("a", 1).unwrap(), vec![BoundarySlot { edge: 0, side: Side::End, k: 1 }]);
        assert!(g.incident_slots_named("zz", 0).is_err());

        let looped = MetricGraph::new(&[EdgeSpec::new("l", "v", "v", 2.0), EdgeSpec::new("e", "v", "w", 1.0)]).unwrap();
        let v = looped.vertex_index("v").unwrap();
        assert_eq!(looped.incident_slots(v, 0).unwrap().len(), 3);
        assert_eq!(looped.degree(v), 3);
    }

    #[test]
    fn incident_slots_partition_endpoints() {
        let g = MetricGraph::new(&[
            EdgeSpec::new("l", "v", "v", 2.0),
            EdgeSpec::new("a", "v", "w", 1.0),
            EdgeSpec::new("b", "w", "v", 1.5),
            EdgeSpec::new("c", "w", "x", 0.5),
        ])
        .unwrap();
        for k in 0..3 {
            let mut all: Vec<BoundarySlot> =
                (0..g.num_vertices()).flat_map(|v| g.incident_slots(v, k).unwrap()).collect();
            all.sort();
            let mut expected: Vec<BoundarySlot> =
                (0..g.num_edges()).flat_map(|edge| Side::BOTH.map(|side| BoundarySlot { edge, side, k })).collect();
            expected.sort();
            assert_eq!(all, expected);
        }
    }
}
