//! Immutable directed weighted graph in compressed sparse row form.

use thiserror::Error;

use crate::weight::Weight;

/// 0-based vertex index.
pub type VertexId = usize;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GraphError {
    #[error("edge {edge}: vertex {vertex} out of range for n = {n}")]
    IndexOutOfRange { edge: usize, vertex: usize, n: usize },
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("edge {edge}: weight is not finite")]
    NonFiniteWeight { edge: usize },
    #[error("edge {edge}: negative self-loop on vertex {vertex}")]
    NegativeSelfLoop { edge: usize, vertex: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("header declares {declared} edges but {found} edge lines follow")]
    HeaderMismatch { declared: usize, found: usize },
}

/// Plain edge-list form of a graph, the unit of text serialization.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeListDoc<W = f64> {
    pub n: usize,
    pub edges: Vec<(VertexId, VertexId, W)>,
}

impl<W: Weight> EdgeListDoc<W> {
    pub fn new(n: usize) -> Self {
        Self { n, edges: Vec::new() }
    }

    pub fn validate(&self) -> Result<(), GraphError> {
        for (i, &(u, v, w)) in self.edges.iter().enumerate() {
            for x in [u, v] {
                if x >= self.n {
                    return Err(GraphError::IndexOutOfRange { edge: i, vertex: x, n: self.n });
                }
            }
            if !w.is_finite() {
                return Err(GraphError::NonFiniteWeight { edge: i });
            }
            if u == v && w < W::zero() {
                return Err(GraphError::NegativeSelfLoop { edge: i, vertex: u });
            }
        }
        Ok(())
    }
}

/// Directed graph with per-vertex contiguous out-edge ranges.
///
/// `offsets[u]..offsets[u + 1]` indexes the out-edges of `u` in `targets`
/// and `weights`. Immutable once built, so it can be shared freely between
/// threads.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph<W = f64> {
    offsets: Vec<usize>,
    targets: Vec<u32>,
    weights: Vec<W>,
}

impl<W: Weight> Graph<W> {
    /// Builds the CSR arrays with a stable counting sort on the tail, so the
    /// i-th edge of `u` in the document is the i-th entry of `out_edges(u)`.
    pub fn from_edge_list(doc: &EdgeListDoc<W>) -> Result<Self, GraphError> {
        doc.validate()?;
        assert!(doc.n <= u32::MAX as usize, "vertex count exceeds u32 index space");
        let n = doc.n;
        let mut offsets = vec![0usize; n + 1];
        for &(u, _, _) in &doc.edges {
            offsets[u + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let m = doc.edges.len();
        let mut cursor = offsets.clone();
        let mut targets = vec![0u32; m];
        let mut weights = vec![W::zero(); m];
        for &(u, v, w) in &doc.edges {
            let slot = cursor[u];
            targets[slot] = v as u32;
            weights[slot] = w;
            cursor[u] += 1;
        }
        Ok(Self { offsets, targets, weights })
    }

    /// Graph with `n` vertices and no edges.
    pub fn empty(n: usize) -> Self {
        Self { offsets: vec![0; n + 1], targets: Vec::new(), weights: Vec::new() }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.targets.len()
    }

    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    #[inline]
    pub fn degree(&self, u: VertexId) -> usize {
        self.offsets[u + 1] - self.offsets[u]
    }

    /// Raw out-edge slices of `u`: heads and weights, index-aligned.
    ///
    /// Panics if `u >= n`; solvers call this on validated sources only.
    #[inline]
    pub fn adjacency(&self, u: VertexId) -> (&[u32], &[W]) {
        let (a, b) = (self.offsets[u], self.offsets[u + 1]);
        (&self.targets[a..b], &self.weights[a..b])
    }

    /// Out-edges of `u` as `(head, weight)` pairs, in construction order.
    pub fn out_edges(&self, u: VertexId) -> Result<OutEdges<'_, W>, GraphError> {
        self.check_vertex(u)?;
        let (targets, weights) = self.adjacency(u);
        Ok(OutEdges { targets, weights, pos: 0 })
    }

    pub fn check_vertex(&self, u: VertexId) -> Result<(), GraphError> {
        if u < self.n() {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange { vertex: u, n: self.n() })
        }
    }

    /// All edges as `(tail, head, weight)`, grouped by tail.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId, W)> + '_ {
        (0..self.n()).flat_map(move |u| {
            let (t, w) = self.adjacency(u);
            t.iter().zip(w).map(move |(&v, &w)| (u, v as VertexId, w))
        })
    }

    pub fn to_edge_list(&self) -> EdgeListDoc<W> {
        EdgeListDoc { n: self.n(), edges: self.edges().collect() }
    }

    /// Same topology with every weight converted to another scalar type.
    pub fn cast<V: Weight>(&self) -> Graph<V> {
        Graph {
            offsets: self.offsets.clone(),
            targets: self.targets.clone(),
            weights: self.weights.iter().map(|w| V::from_f64_exact(w.to_f64().unwrap_or(f64::NAN))).collect(),
        }
    }

    pub fn has_negative_weight(&self) -> bool {
        self.weights.iter().any(|&w| w < W::zero())
    }

    /// Smallest weight among the (possibly parallel) edges `u -> v`.
    pub fn min_edge_weight(&self, u: VertexId, v: VertexId) -> Option<W> {
        let (t, w) = self.adjacency(u);
        t.iter()
            .zip(w)
            .filter(|(&h, _)| h as usize == v)
            .map(|(_, &w)| w)
            .fold(None, |acc: Option<W>, w| Some(acc.map_or(w, |a| a.min(w))))
    }
}

/// Iterator over `(head, weight)` for one tail vertex.
#[derive(Debug, Clone)]
pub struct OutEdges<'a, W> {
    targets: &'a [u32],
    weights: &'a [W],
    pos: usize,
}

impl<W: Copy> Iterator for OutEdges<'_, W> {
    type Item = (VertexId, W);

    fn next(&mut self) -> Option<Self::Item> {
        let i = self.pos;
        if i < self.targets.len() {
            self.pos += 1;
            Some((self.targets[i] as VertexId, self.weights[i]))
        } else {
            None
        }
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let rest = self.targets.len() - self.pos;
        (rest, Some(rest))
    }
}

impl<W: Copy> ExactSizeIterator for OutEdges<'_, W> {}

#[cfg(test)]
mod tests {
    use super::*;

    fn doc(n: usize, edges: &[(usize, usize, f64)]) -> EdgeListDoc {
        EdgeListDoc { n, edges: edges.to_vec() }
    }

    #[test]
    fn single_vertex_without_edges() {
        let g = Graph::from_edge_list(&doc(1, &[])).unwrap();
        assert_eq!((g.n(), g.m()), (1, 0));
        assert_eq!(g.out_edges(0).unwrap().count(), 0);
    }

    #[test]
    fn out_edges_follow_input() {
        let g = Graph::from_edge_list(&doc(3, &[(0, 1, 2.0), (1, 2, -1.0)])).unwrap();
        assert_eq!(g.out_edges(1).unwrap().collect::<Vec<_>>(), vec![(2, -1.0)]);
        assert_eq!(g.out_edges(0).unwrap().collect::<Vec<_>>(), vec![(1, 2.0)]);
        assert!(g.out_edges(2).unwrap().next().is_none());
    }

    #[test]
    fn star_center_has_all_spokes() {
        let edges: Vec<_> = (1..=5).map(|v| (0, v, v as f64)).collect();
        let g = Graph::from_edge_list(&doc(6, &edges)).unwrap();
        assert_eq!(g.out_edges(0).unwrap().len(), 5);
        assert_eq!(g.degree(0), 5);
    }

    #[test]
    fn rejects_bad_documents() {
        assert!(matches!(
            Graph::from_edge_list(&doc(2, &[(0, 5, 1.0)])),
            Err(GraphError::IndexOutOfRange { vertex: 5, .. })
        ));
        assert!(matches!(
            Graph::from_edge_list(&doc(2, &[(0, 1, f64::NAN)])),
            Err(GraphError::NonFiniteWeight { edge: 0 })
        ));
        assert!(matches!(
            Graph::from_edge_list(&doc(2, &[(0, 1, 1.0), (1, 0, f64::INFINITY)])),
            Err(GraphError::NonFiniteWeight { edge: 1 })
        ));
        assert!(matches!(
            Graph::from_edge_list(&doc(2, &[(1, 1, -0.5)])),
            Err(GraphError::NegativeSelfLoop { vertex: 1, .. })
        ));
    }

    #[test]
    fn keeps_nonnegative_self_loops_and_parallel_edges() {
        let g = Graph::from_edge_list(&doc(2, &[(0, 0, 0.0), (0, 1, 3.0), (0, 1, 1.0)])).unwrap();
        assert_eq!(g.m(), 3);
        assert_eq!(g.min_edge_weight(0, 1), Some(1.0));
        assert_eq!(g.min_edge_weight(1, 0), None);
    }

    #[test]
    fn out_of_range_query() {
        let g: Graph = Graph::empty(2);
        assert!(matches!(g.out_edges(2), Err(GraphError::VertexOutOfRange { vertex: 2, n: 2 })));
    }

    #[test]
    fn edge_list_groups_by_tail_stably() {
        let d = doc(3, &[(2, 0, 1.0), (0, 1, 2.0), (2, 1, 3.0), (0, 2, 4.0)]);
        let g = Graph::from_edge_list(&d).unwrap();
        assert_eq!(g.to_edge_list().edges, vec![(0, 1, 2.0), (0, 2, 4.0), (2, 0, 1.0), (2, 1, 3.0)]);
    }
}
