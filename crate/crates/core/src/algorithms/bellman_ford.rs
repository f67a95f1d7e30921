use crate::graph::{Graph, VertexId};
use crate::weight::Weight;

use super::{AlgoError, Algorithm, SsspResult, State};

/// Classic Bellman–Ford with early exit.
///
/// Each pass scans every vertex with a finite label in index order. A pass
/// without improvement ends the run; an improvement in pass `n` means a
/// negative cycle is reachable.
pub fn bellman_ford<W: Weight>(g: &Graph<W>, s: VertexId) -> Result<SsspResult<W>, AlgoError> {
    let mut st = State::new(g, s, Algorithm::BellmanFord)?;
    let n = g.n();
    let mut hint = None;
    let mut neg_cycle = false;
    for pass in 1..=n {
        st.stats.outer_iterations += 1;
        let mut improved = false;
        for u in 0..n {
            if !st.dist[u].is_finite() {
                continue;
            }
            st.stats.activations[u] += 1;
            if let Some(v) = st.scan(u, |v| {
                improved = true;
                hint = Some(v);
            }) {
                hint = Some(v);
                neg_cycle = true;
            }
        }
        if neg_cycle || !improved {
            break;
        }
        if pass == n {
            neg_cycle = true;
        }
    }
    Ok(st.finish(s, neg_cycle, hint))
}
