use std::collections::VecDeque;

use crate::graph::{Graph, VertexId};
use crate::weight::Weight;

use super::{AlgoError, Algorithm, SsspResult, State};

/// Queue-based Bellman–Ford with a FIFO queue.
pub fn spfa_fifo<W: Weight>(g: &Graph<W>, s: VertexId) -> Result<SsspResult<W>, AlgoError> {
    spfa(g, s, false)
}

/// SPFA with the Small Label First rule: a newly queued vertex goes to the
/// front of the deque when its label is below the current front's label.
pub fn spfa_slf<W: Weight>(g: &Graph<W>, s: VertexId) -> Result<SsspResult<W>, AlgoError> {
    spfa(g, s, true)
}

fn spfa<W: Weight>(g: &Graph<W>, s: VertexId, slf: bool) -> Result<SsspResult<W>, AlgoError> {
    let algorithm = if slf { Algorithm::SpfaSlf } else { Algorithm::SpfaFifo };
    let mut st = State::new(g, s, algorithm)?;
    let mut queue = VecDeque::with_capacity(g.n());
    let mut queued = vec![false; g.n()];
    queue.push_back(s);
    queued[s] = true;
    st.stats.queue_pushes = 1;

    let mut tripped = None;
    'outer: while let Some(u) = queue.pop_front() {
        queued[u] = false;
        st.stats.activations[u] += 1;
        st.stats.outer_iterations += 1;
        let (targets, weights) = g.adjacency(u);
        for (&v, &w) in targets.iter().zip(weights) {
            let v = v as usize;
            let (improved, long_walk) = st.relax(u, v, w);
            if !improved {
                continue;
            }
            if long_walk {
                tripped = Some(v);
                break 'outer;
            }
            if !queued[v] {
                queued[v] = true;
                st.stats.queue_pushes += 1;
                match queue.front() {
                    Some(&f) if slf && st.dist[v] < st.dist[f] => queue.push_front(v),
                    _ => queue.push_back(v),
                }
            }
        }
    }
    Ok(st.finish(s, tripped.is_some(), tripped))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algorithms::test_support::*;

    #[test]
    fn path_graph() {
        let g = graph(3, &[(0, 1, 1.0), (1, 2, 1.0)]);
        assert_eq!(spfa_fifo(&g, 0).unwrap().dist, vec![0.0, 1.0, 2.0]);
        assert_eq!(spfa_slf(&g, 0).unwrap().dist, vec![0.0, 1.0, 2.0]);
    }

    #[test]
    fn negative_two_cycle() {
        assert!(spfa_fifo(&two_cycle(), 0).unwrap().neg_cycle);
        assert!(spfa_slf(&two_cycle(), 0).unwrap().neg_cycle);
    }

    #[test]
    fn slf_puts_small_labels_first() {
        // source edges discovered in order 1 (w=5), 2 (w=1): SLF pops 2 before 1
        let g = graph(4, &[(0, 1, 5.0), (0, 2, 1.0), (1, 3, 0.0), (2, 3, 10.0)]);
        let slf = spfa_slf(&g, 0).unwrap();
        let fifo = spfa_fifo(&g, 0).unwrap();
        assert_eq!(slf.dist, fifo.dist);
        assert_eq!(slf.dist, vec![0.0, 5.0, 1.0, 5.0]);
        // FIFO: 0,1,2,3 ; SLF: 0,2,3,1,3 (3 improved again by 1)
        assert_eq!(fifo.stats.successful_relaxations, 3);
        assert_eq!(slf.stats.successful_relaxations, 4);
    }

    #[test]
    fn many_parallel_improvements_are_not_a_cycle() {
        // a vertex improved more than n times through parallel edges
        let edges: Vec<_> = (0..10).map(|i| (0, 1, 100.0 - i as f64)).collect();
        let g = graph(2, &edges);
        let r = spfa_fifo(&g, 0).unwrap();
        assert!(!r.neg_cycle);
        assert_eq!(r.stats.improvements[1], 10);
        assert_eq!(r.dist, vec![0.0, 91.0]);
    }
}
