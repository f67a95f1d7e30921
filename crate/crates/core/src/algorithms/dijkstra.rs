use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use crate::graph::{Graph, VertexId};
use crate::weight::Weight;

use super::{AlgoError, Algorithm, SsspResult, State};

/// Heap entry ordered by key, then vertex. Keys are never NaN.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Keyed<W> {
    pub key: W,
    pub v: VertexId,
}

impl<W: Weight> Eq for Keyed<W> {}

impl<W: Weight> PartialOrd for Keyed<W> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<W: Weight> Ord for Keyed<W> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key.partial_cmp(&other.key).expect("distance keys are never NaN").then(self.v.cmp(&other.v))
    }
}

/// Binary-heap Dijkstra with lazy deletion, used as an oracle on graphs
/// with non-negative weights.
pub fn dijkstra_oracle<W: Weight>(g: &Graph<W>, s: VertexId) -> Result<SsspResult<W>, AlgoError> {
    let mut st = State::new(g, s, Algorithm::Dijkstra)?;
    if g.has_negative_weight() {
        return Err(AlgoError::NegativeWeightPresent);
    }
    let mut heap = BinaryHeap::with_capacity(g.n());
    heap.push(Reverse(Keyed { key: W::zero(), v: s }));
    st.stats.queue_pushes = 1;
    while let Some(Reverse(Keyed { key, v: u })) = heap.pop() {
        if key > st.dist[u] {
            st.stats.stale_pops += 1;
            continue;
        }
        st.stats.activations[u] += 1;
        st.stats.outer_iterations += 1;
        let g = st.g;
        let (targets, weights) = g.adjacency(u);
        for (&v, &w) in targets.iter().zip(weights) {
            let v = v as usize;
            if st.relax(u, v, w).0 {
                heap.push(Reverse(Keyed { key: st.dist[v], v }));
                st.stats.queue_pushes += 1;
            }
        }
    }
    Ok(st.finish(s, false, None))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algorithms::test_support::*;

    #[test]
    fn single_vertex() {
        assert_eq!(dijkstra_oracle(&graph(1, &[]), 0).unwrap().dist, vec![0.0]);
    }

    #[test]
    fn triangle() {
        let r = dijkstra_oracle(&super::super::test_support::triangle(), 0).unwrap();
        assert_eq!(r.dist, vec![0.0, 2.0, 1.0]);
        assert!(!r.neg_cycle);
    }

    #[test]
    fn rejects_negative_weight() {
        let g = graph(3, &[(0, 1, 2.0), (1, 2, -1.0)]);
        assert_eq!(dijkstra_oracle(&g, 0), Err(AlgoError::NegativeWeightPresent));
    }
}
