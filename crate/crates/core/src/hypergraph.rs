//! Finite nonuniform hypergraphs and their basic statistics.
//!
//! Vertices are dense ids `0..n`. Edges are stored in a flat CSR layout and
//! each edge is a strictly increasing run of vertex ids. The edge sequence is
//! a multiset: the same vertex set may appear several times.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::HypergraphError;

/// A finite hypergraph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    n: usize,
    offsets: Vec<usize>,
    vertices: Vec<usize>,
}

impl Hypergraph {
    /// Builds a hypergraph from raw edges, sorting each edge.
    ///
    /// Duplicate ids inside one edge are rejected rather than collapsed.
    pub fn new<E, I>(n: usize, raw_edges: E) -> Result<Self, HypergraphError>
    where
        E: IntoIterator<Item = I>,
        I: AsRef<[usize]>,
    {
        let mut offsets = vec![0];
        let mut vertices = Vec::new();
        for (index, raw) in raw_edges.into_iter().enumerate() {
            let raw = raw.as_ref();
            if n == 0 {
                return Err(HypergraphError::EmptyVertexSet);
            }
            let start = vertices.len();
            vertices.extend_from_slice(raw);
            let edge = &mut vertices[start..];
            edge.sort_unstable();
            if let Some(&vertex) = edge.iter().find(|&&v| v >= n) {
                return Err(HypergraphError::VertexOutOfRange { edge: index, vertex, n });
            }
            if let Some(pair) = edge.windows(2).find(|w| w[0] == w[1]) {
                return Err(HypergraphError::DuplicateVertex { edge: index, vertex: pair[0] });
            }
            if edge.len() < 2 {
                return Err(HypergraphError::EdgeTooSmall { edge: index, size: edge.len() });
            }
            offsets.push(vertices.len());
        }
        Ok(Self { n, offsets, vertices })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.edge_count() == 0
    }

    /// Vertex ids of edge `index`, strictly increasing.
    pub fn edge(&self, index: usize) -> &[usize] {
        &self.vertices[self.offsets[index]..self.offsets[index + 1]]
    }

    pub fn edge_size(&self, index: usize) -> usize {
        self.offsets[index + 1] - self.offsets[index]
    }

    pub fn edges(&self) -> impl ExactSizeIterator<Item = &[usize]> + '_ {
        self.offsets.windows(2).map(move |w| &self.vertices[w[0]..w[1]])
    }

    /// Total number of vertex-edge incidences.
    pub fn incidence_count(&self) -> usize {
        self.vertices.len()
    }

    /// Edge indices containing each vertex, in increasing edge order.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut lists = vec![Vec::new(); self.n];
        for (index, edge) in self.edges().enumerate() {
            for &v in edge {
                lists[v].push(index);
            }
        }
        lists
    }

    /// Disjoint union: the vertices of `other` are shifted past `self`'s.
    pub fn disjoint_union(&self, other: &Hypergraph) -> Hypergraph {
        let shift = self.n;
        let mut offsets = self.offsets.clone();
        let mut vertices = self.vertices.clone();
        for edge in other.edges() {
            vertices.extend(edge.iter().map(|v| v + shift));
            offsets.push(vertices.len());
        }
        Hypergraph { n: self.n + other.n, offsets, vertices }
    }

    pub fn stats(&self) -> HypergraphStats {
        HypergraphStats::of(self)
    }
}

/// Contribution `2^(1-j)` of one edge of size `j` to `q`.
///
/// Underflows to zero for edges larger than about 1075 vertices.
pub fn edge_weight(size: usize) -> f64 {
    let exponent = 1i64 - size as i64;
    if exponent < i32::MIN as i64 {
        0.0
    } else {
        2f64.powi(exponent as i32)
    }
}

/// Summary statistics: `q`, the per-size profile `q_j`, and size range.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HypergraphStats {
    pub n: usize,
    pub m: usize,
    pub s_min: Option<usize>,
    pub s_max: Option<usize>,
    pub q: f64,
    /// Size `j` to `q_j = (#edges of size j) * 2^(1-j)`.
    pub q_profile: BTreeMap<usize, f64>,
    /// Size `j` to the number of edges of that size.
    pub size_counts: BTreeMap<usize, usize>,
}

impl HypergraphStats {
    fn of(h: &Hypergraph) -> Self {
        let mut size_counts = BTreeMap::new();
        for index in 0..h.edge_count() {
            *size_counts.entry(h.edge_size(index)).or_insert(0usize) += 1;
        }
        let q_profile: BTreeMap<usize, f64> = size_counts
            .iter()
            .map(|(&j, &count)| (j, count as f64 * edge_weight(j)))
            .collect();
        let q = q_profile.values().fold(0.0, |a, b| a + b);
        Self {
            n: h.vertex_count(),
            m: h.edge_count(),
            s_min: size_counts.keys().next().copied(),
            s_max: size_counts.keys().next_back().copied(),
            q,
            q_profile,
            size_counts,
        }
    }

    pub fn q_j(&self, j: usize) -> f64 {
        self.q_profile.get(&j).copied().unwrap_or(0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn minimal_instance_is_valid() {
        let h = Hypergraph::new(2, [[0, 1]]).unwrap();
        assert_eq!(h.edge_count(), 1);
        assert_eq!(h.edge(0), &[0, 1]);
    }

    #[test]
    fn repeated_vertex_is_rejected() {
        let err = Hypergraph::new(3, [[1, 1]]).unwrap_err();
        assert!(matches!(err, HypergraphError::DuplicateVertex { edge: 0, vertex: 1 }));
    }

    #[test]
    fn singleton_edge_is_too_small() {
        let err = Hypergraph::new(3, [vec![2]]).unwrap_err();
        assert!(matches!(err, HypergraphError::EdgeTooSmall { edge: 0, size: 1 }));
    }

    #[test]
    fn out_of_range_vertex() {
        let err = Hypergraph::new(2, [[0, 2]]).unwrap_err();
        assert!(matches!(err, HypergraphError::VertexOutOfRange { vertex: 2, n: 2, .. }));
    }

    #[test]
    fn empty_vertex_set_with_edges() {
        let err = Hypergraph::new(0, [[0, 1]]).unwrap_err();
        assert!(matches!(err, HypergraphError::EmptyVertexSet));
        assert!(Hypergraph::new(0, Vec::<Vec<usize>>::new()).is_ok());
    }

    #[test]
    fn edges_are_sorted() {
        let h = Hypergraph::new(5, [vec![4, 0, 2]]).unwrap();
        assert_eq!(h.edge(0), &[0, 2, 4]);
    }

    #[test]
    fn duplicate_edges_are_kept() {
        let h = Hypergraph::new(3, [[0, 1], [1, 0]]).unwrap();
        assert_eq!(h.edge_count(), 2);
        assert_eq!(h.stats().q, 1.0);
    }

    #[test]
    fn single_edge_q() {
        let h = Hypergraph::new(2, [[0, 1]]).unwrap();
        assert_eq!(h.stats().q, 0.5);
    }

    #[test]
    fn fano_stats() {
        let s = fixtures::fano().stats();
        assert_eq!(s.q, 7.0 / 4.0);
        assert_eq!(s.s_min, Some(3));
        assert_eq!(s.s_max, Some(3));
        assert_eq!(s.q_j(3), 1.75);
    }

    #[test]
    fn empty_edge_set_stats() {
        let s = Hypergraph::new(4, Vec::<Vec<usize>>::new()).unwrap().stats();
        assert_eq!(s.q, 0.0);
        assert_eq!(s.s_min, None);
        assert_eq!(s.s_max, None);
    }

    #[test]
    fn huge_edges_underflow_to_zero() {
        assert_eq!(edge_weight(2000), 0.0);
        assert_eq!(edge_weight(51), 2f64.powi(-50));
    }

    #[test]
    fn incidence_lists() {
        let h = Hypergraph::new(3, [[0, 1], [1, 2]]).unwrap();
        assert_eq!(h.incidence(), vec![vec![0], vec![0, 1], vec![1]]);
    }
}
