use crate::graph::{Graph, VertexId};
use crate::weight::Weight;

use super::{AlgoError, SsspResult};

/// Extracts a negative cycle from a result that reports one.
///
/// Walks `n` parent steps from the hint to land on a cycle of the parent
/// graph. If the pointers left by the solver do not contain a negative
/// cycle, further relaxation passes are run on a copy of the labels and
/// the search is repeated. The cycle is rotated to start at its smallest
/// vertex; `None` means no cycle could be isolated.
pub fn detect_negative_cycle<W: Weight>(
    result: &SsspResult<W>,
    g: &Graph<W>,
) -> Result<Option<Vec<VertexId>>, AlgoError> {
    if !result.neg_cycle {
        return Err(AlgoError::NoCycleRecorded);
    }
    let n = g.n();
    if result.parent.len() != n || result.dist.len() != n {
        return Err(AlgoError::InvalidConfig("result does not belong to this graph".into()));
    }
    let mut dist = result.dist.clone();
    let mut parent = result.parent.clone();

    if let Some(c) = result.cycle_hint.and_then(|h| walk_from(h, &parent, n)) {
        if cycle_weight(g, &c).is_some_and(|w| w < W::zero()) {
            return Ok(Some(rotate(c)));
        }
    }
    // a reachable negative cycle keeps relaxations alive, and within a
    // bounded number of passes the parent graph closes one
    for _ in 0..2 * n + 2 {
        if let Some(c) = any_negative_cycle(g, &parent) {
            return Ok(Some(rotate(c)));
        }
        if !relax_pass(g, &mut dist, &mut parent) {
            break;
        }
    }
    Ok(any_negative_cycle(g, &parent).map(rotate))
}

fn walk_from(start: VertexId, parent: &[Option<VertexId>], n: usize) -> Option<Vec<VertexId>> {
    let mut v = start;
    for _ in 0..n {
        v = parent[v]?;
    }
    extract(v, parent)
}

/// Collects the parent cycle through `v`, in edge direction.
fn extract(v: VertexId, parent: &[Option<VertexId>]) -> Option<Vec<VertexId>> {
    let mut rev = vec![v];
    let mut u = parent[v]?;
    while u != v {
        if rev.len() > parent.len() {
            return None;
        }
        rev.push(u);
        u = parent[u]?;
    }
    rev.reverse();
    Some(rev)
}

/// Searches the whole parent graph for a cycle of negative weight.
fn any_negative_cycle<W: Weight>(g: &Graph<W>, parent: &[Option<VertexId>]) -> Option<Vec<VertexId>> {
    // 0 unvisited, 1 on the current walk, 2 done
    let n = parent.len();
    let mut state = vec![0u8; n];
    let mut walk = Vec::new();
    for start in 0..n {
        if state[start] != 0 {
            continue;
        }
        walk.clear();
        let mut v = start;
        loop {
            if state[v] == 1 {
                if let Some(c) = extract(v, parent) {
                    if cycle_weight(g, &c).is_some_and(|w| w < W::zero()) {
                        return Some(c);
                    }
                }
                break;
            }
            if state[v] == 2 {
                break;
            }
            state[v] = 1;
            walk.push(v);
            match parent[v] {
                Some(p) => v = p,
                None => break,
            }
        }
        for &w in &walk {
            state[w] = 2;
        }
    }
    None
}

fn relax_pass<W: Weight>(g: &Graph<W>, dist: &mut [W], parent: &mut [Option<VertexId>]) -> bool {
    let mut any = false;
    for u in 0..g.n() {
        if !dist[u].is_finite() {
            continue;
        }
        let (targets, weights) = g.adjacency(u);
        for (&v, &w) in targets.iter().zip(weights) {
            let v = v as usize;
            if dist[u] + w < dist[v] {
                dist[v] = dist[u] + w;
                parent[v] = Some(u);
                any = true;
            }
        }
    }
    any
}

fn rotate(mut c: Vec<VertexId>) -> Vec<VertexId> {
    if let Some(i) = c.iter().enumerate().min_by_key(|&(_, v)| *v).map(|(i, _)| i) {
        c.rotate_left(i);
    }
    c
}

/// Weight of the closed walk `c[0] → c[1] → … → c[0]` using the lightest
/// parallel edge at each step, or `None` if an edge is missing.
pub fn cycle_weight<W: Weight>(g: &Graph<W>, cycle: &[VertexId]) -> Option<W> {
    if cycle.is_empty() {
        return None;
    }
    let mut total = W::zero();
    for (i, &u) in cycle.iter().enumerate() {
        let v = cycle[(i + 1) % cycle.len()];
        total = total + g.min_edge_weight(u, v)?;
    }
    Some(total)
}

/// Weight of the open path through `path` using the lightest parallel edge
/// at each step, or `None` if an edge is missing.
pub fn path_weight<W: Weight>(g: &Graph<W>, path: &[VertexId]) -> Option<W> {
    path.windows(2).try_fold(W::zero(), |acc, e| Some(acc + g.min_edge_weight(e[0], e[1])?))
}

/// Follows parent pointers from `v` back to the source.
pub fn reconstruct_path<W: Weight>(result: &SsspResult<W>, v: VertexId) -> Result<Vec<VertexId>, AlgoError> {
    if result.neg_cycle {
        return Err(AlgoError::NegCycleResult);
    }
    if v >= result.dist.len() || !result.dist[v].is_finite() {
        return Err(AlgoError::Unreachable(v));
    }
    let mut path = vec![v];
    let mut u = v;
    while u != result.source {
        u = result.parent[u].ok_or(AlgoError::Unreachable(v))?;
        path.push(u);
        if path.len() > result.dist.len() {
            return Err(AlgoError::InvalidConfig("parent pointers contain a cycle".into()));
        }
    }
    path.reverse();
    Ok(path)
}
