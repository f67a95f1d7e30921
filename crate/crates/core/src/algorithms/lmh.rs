//! Local multi-hop propagation: depth-bounded relaxation around a seed set.
//!
//! Round 1 scans the seeds; round `r + 1` scans the vertices improved in
//! round `r`. After `k` rounds every path of at most `k` edges starting at a
//! seed has been relaxed in order, and only vertices within `k - 1` hops of
//! the seeds have had their out-edges scanned. Each vertex is scanned at
//! most once per round, so one call inspects at most
//! `k * sum(deg(v) for v in window)` edges.

use std::time::Instant;

use crate::graph::{Graph, VertexId};
use crate::weight::Weight;

use super::{AlgoError, LmhCall, RunStats, State};

/// Callbacks through which the driving solver observes a propagation.
pub(crate) trait LmhHooks {
    /// Vertices the call must not scan.
    fn skip(&self, _v: VertexId) -> bool {
        false
    }
    fn on_scan(&mut self, _v: VertexId) {}
    fn on_improve(&mut self, _v: VertexId) {}
}

impl LmhHooks for () {}

/// Epoch-stamped marks so calls never clear O(n) arrays.
pub(crate) struct LmhScratch {
    layer_mark: Vec<u32>,
    layer_epoch: u32,
    window_mark: Vec<u32>,
    window_epoch: u32,
    cur: Vec<VertexId>,
    next: Vec<VertexId>,
}

impl LmhScratch {
    pub fn new(n: usize) -> Self {
        Self {
            layer_mark: vec![0; n],
            layer_epoch: 0,
            window_mark: vec![0; n],
            window_epoch: 0,
            cur: Vec::new(),
            next: Vec::new(),
        }
    }

    fn bump(marks: &mut [u32], epoch: &mut u32) -> u32 {
        if *epoch == u32::MAX {
            marks.fill(0);
            *epoch = 0;
        }
        *epoch += 1;
        *epoch
    }
}

pub(crate) struct LmhOutcome {
    /// Vertices improved in the final round, whose new labels have not been
    /// pushed along their out-edges.
    pub pending: Vec<VertexId>,
    pub tripped: Option<VertexId>,
}

pub(crate) fn propagate<W: Weight, H: LmhHooks>(
    st: &mut State<'_, W>,
    scratch: &mut LmhScratch,
    seeds: &[VertexId],
    rounds: u32,
    hooks: &mut H,
) -> LmhOutcome {
    let g = st.g;
    let before = st.stats.edge_inspections;
    let LmhScratch { layer_mark, layer_epoch, window_mark, window_epoch, cur, next } = scratch;

    let wep = LmhScratch::bump(window_mark, window_epoch);
    let mut window_vertices = 0u32;
    let mut window_degree_sum = 0u64;
    let mut enter_window = |v: VertexId, window_mark: &mut [u32]| {
        if window_mark[v] != wep {
            window_mark[v] = wep;
            window_vertices += 1;
            window_degree_sum += g.degree(v) as u64;
        }
    };

    let ep = LmhScratch::bump(layer_mark, layer_epoch);
    cur.clear();
    for &s in seeds {
        enter_window(s, window_mark);
        if layer_mark[s] != ep {
            layer_mark[s] = ep;
            cur.push(s);
        }
    }

    let mut tripped = None;
    let mut round = 0;
    while round < rounds && !cur.is_empty() {
        round += 1;
        let ep = LmhScratch::bump(layer_mark, layer_epoch);
        next.clear();
        for &u in cur.iter() {
            if hooks.skip(u) {
                continue;
            }
            enter_window(u, window_mark);
            hooks.on_scan(u);
            tripped = st.scan(u, |v| {
                hooks.on_improve(v);
                if layer_mark[v] != ep {
                    layer_mark[v] = ep;
                    next.push(v);
                }
            });
            if tripped.is_some() {
                break;
            }
        }
        std::mem::swap(cur, next);
        if tripped.is_some() {
            break;
        }
    }
    // after the loop `cur` holds the last layer of improvements, or nothing
    // if propagation died out early
    let pending = if round == 0 { Vec::new() } else { cur.clone() };

    let inspections = st.stats.edge_inspections - before;
    st.stats.lmh_inspections += inspections;
    st.stats.lmh_calls.push(LmhCall { rounds, inspections, window_vertices, window_degree_sum });
    LmhOutcome { pending, tripped }
}

/// Runs a standalone `k`-round propagation from `seeds` over existing
/// labels and returns the distinct vertices it strictly improved.
///
/// Inspections are added to both `edge_inspections` and `lmh_inspections`
/// of `stats`, and one [`LmhCall`] record is appended.
pub fn lmh_propagate<W: Weight>(
    g: &Graph<W>,
    seeds: &[VertexId],
    k: u32,
    dist: &mut Vec<W>,
    parent: &mut Vec<Option<VertexId>>,
    stats: &mut RunStats,
) -> Result<Vec<VertexId>, AlgoError> {
    if k == 0 {
        return Err(AlgoError::InvalidConfig("k must be at least 1".into()));
    }
    if seeds.is_empty() {
        return Err(AlgoError::InvalidConfig("propagation needs at least one seed".into()));
    }
    let n = g.n();
    for &s in seeds {
        g.check_vertex(s)?;
    }
    if dist.len() != n || parent.len() != n {
        return Err(AlgoError::InvalidConfig("label vectors must have one entry per vertex".into()));
    }
    stats.improvements.resize(n, 0);
    stats.activations.resize(n, 0);

    let mut st = State {
        g,
        dist: std::mem::take(dist),
        parent: std::mem::take(parent),
        hops: vec![0; n],
        stats: std::mem::take(stats),
        started: Instant::now(),
    };

    struct Collect {
        seen: Vec<bool>,
        improved: Vec<VertexId>,
    }
    impl LmhHooks for Collect {
        fn on_improve(&mut self, v: VertexId) {
            if !self.seen[v] {
                self.seen[v] = true;
                self.improved.push(v);
            }
        }
    }
    let mut collect = Collect { seen: vec![false; n], improved: Vec::new() };
    let mut scratch = LmhScratch::new(n);
    propagate(&mut st, &mut scratch, seeds, k, &mut collect);

    *dist = st.dist;
    *parent = st.parent;
    *stats = st.stats;
    Ok(collect.improved)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algorithms::test_support::graph;
    use std::collections::VecDeque;

    fn fresh(n: usize, src: &[(usize, f64)]) -> (Vec<f64>, Vec<Option<usize>>, RunStats) {
        let mut d = vec![f64::INFINITY; n];
        for &(v, x) in src {
            d[v] = x;
        }
        (d, vec![None; n], RunStats::default())
    }

    /// Vertices within `k` hops of `seeds`, by breadth-first search.
    fn k_hop_window(g: &Graph, seeds: &[usize], k: usize) -> Vec<usize> {
        let mut depth = vec![usize::MAX; g.n()];
        let mut q = VecDeque::new();
        for &s in seeds {
            depth[s] = 0;
            q.push_back(s);
        }
        while let Some(u) = q.pop_front() {
            if depth[u] == k {
                continue;
            }
            for (v, _) in g.out_edges(u).unwrap() {
                if depth[v] == usize::MAX {
                    depth[v] = depth[u] + 1;
                    q.push_back(v);
                }
            }
        }
        (0..g.n()).filter(|&v| depth[v] != usize::MAX).collect()
    }

    #[test]
    fn chain_three_rounds() {
        let g = graph(4, &[(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0)]);
        let (mut d, mut p, mut s) = fresh(4, &[(0, 0.0)]);
        let improved = lmh_propagate(&g, &[0], 3, &mut d, &mut p, &mut s).unwrap();
        assert_eq!(d, vec![0.0, 1.0, 2.0, 3.0]);
        assert_eq!(p, vec![None, Some(0), Some(1), Some(2)]);
        assert_eq!(improved, vec![1, 2, 3]);
        assert_eq!(s.edge_inspections, 3);
        assert_eq!(s.lmh_inspections, 3);
    }

    #[test]
    fn depth_one_is_single_scan() {
        let g = graph(5, &[(0, 1, 1.0), (0, 2, 5.0), (1, 3, 1.0), (2, 4, -1.0)]);
        let (mut d, mut p, mut s) = fresh(5, &[(0, 0.0)]);
        lmh_propagate(&g, &[0], 1, &mut d, &mut p, &mut s).unwrap();

        let (mut d2, mut p2, _) = fresh(5, &[(0, 0.0)]);
        for (v, w) in g.out_edges(0).unwrap() {
            if d2[0] + w < d2[v] {
                d2[v] = d2[0] + w;
                p2[v] = Some(0);
            }
        }
        assert_eq!((d, p), (d2, p2));
        assert_eq!(s.edge_inspections, 2);
    }

    #[test]
    fn cost_within_k_hop_budget() {
        // dense-ish little graph with a negative edge so labels move twice
        let g = graph(
            6,
            &[(0, 1, 4.0), (0, 2, 1.0), (2, 1, -2.0), (1, 3, 1.0), (2, 3, 5.0), (3, 4, 1.0), (4, 5, 1.0), (1, 5, 9.0)],
        );
        for k in 1..=5u32 {
            let (mut d, mut p, mut s) = fresh(6, &[(0, 0.0)]);
            lmh_propagate(&g, &[0], k, &mut d, &mut p, &mut s).unwrap();
            let window = k_hop_window(&g, &[0], k as usize);
            let budget: u64 = window.iter().map(|&v| g.degree(v) as u64).sum::<u64>() * k as u64;
            assert!(s.lmh_inspections <= budget, "k={k}: {} > {budget}", s.lmh_inspections);
            let call = s.lmh_calls[0];
            assert!(call.inspections <= k as u64 * call.window_degree_sum);
            assert!(call.window_degree_sum <= budget / k as u64);
        }
    }

    #[test]
    fn rejects_bad_arguments() {
        let g = graph(2, &[(0, 1, 1.0)]);
        let (mut d, mut p, mut s) = fresh(2, &[(0, 0.0)]);
        assert!(lmh_propagate(&g, &[0], 0, &mut d, &mut p, &mut s).is_err());
        assert!(lmh_propagate(&g, &[], 1, &mut d, &mut p, &mut s).is_err());
        assert!(lmh_propagate(&g, &[7], 1, &mut d, &mut p, &mut s).is_err());
    }
}
