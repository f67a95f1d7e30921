//! Event-driven Jump Frontier Relaxation.
//!
//! The active vertex with the smallest tentative distance is selected from a
//! lazily updated binary heap. A vertex selected again after further
//! improvement triggers a depth-`k` local propagation from itself instead of
//! a plain scan. When the frontier grows dense, vertices whose current label
//! has already been pushed along their out-edges and has stayed unchanged for
//! `stability_window` selections are dropped from it.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::graph::{Graph, VertexId};
use crate::weight::Weight;

use super::dijkstra::Keyed;
use super::lmh::{propagate, LmhHooks, LmhScratch};
use super::{AlgoError, Algorithm, Frontier, JfrConfig, JfrMode, SsspResult, State};

/// Min-heap of `(tentative distance, vertex)` entries with lazy deletion.
#[derive(Debug, Clone, Default)]
pub struct PqQueue<W> {
    heap: BinaryHeap<Reverse<Keyed<W>>>,
}

impl<W: Weight> PqQueue<W> {
    pub fn new() -> Self {
        Self { heap: BinaryHeap::new() }
    }

    pub fn push(&mut self, key: W, v: VertexId) {
        self.heap.push(Reverse(Keyed { key, v }));
    }

    pub fn pop(&mut self) -> Option<(W, VertexId)> {
        self.heap.pop().map(|Reverse(k)| (k.key, k.v))
    }

    pub fn len(&self) -> usize {
        self.heap.len()
    }

    pub fn is_empty(&self) -> bool {
        self.heap.is_empty()
    }

    /// Drops entries for vertices outside `frontier` or whose key no longer
    /// matches the vertex's label.
    pub fn retain_live(&mut self, frontier: &Frontier, dist: &[W]) {
        self.heap.retain(|Reverse(e)| frontier.contains(e.v) && e.key == dist[e.v]);
    }
}

/// Per-vertex bookkeeping behind the stability criterion and filtering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilityAux {
    /// The vertex's current label has been pushed along its out-edges.
    pub clean: Vec<bool>,
    /// Selection count at the vertex's latest improvement.
    pub last_improved: Vec<u64>,
    /// Improvement count when the vertex was last selected.
    pub imp_at_pop: Vec<u32>,
    /// Selections so far.
    pub selection: u64,
    pub stability_window: u32,
}

impl StabilityAux {
    pub fn new(n: usize, stability_window: u32) -> Self {
        Self {
            clean: vec![false; n],
            last_improved: vec![0; n],
            imp_at_pop: vec![0; n],
            selection: 0,
            stability_window,
        }
    }

    fn is_stable(&self, v: VertexId) -> bool {
        self.clean[v] && self.selection - self.last_improved[v] >= self.stability_window as u64
    }
}

/// Removes stable vertices from `frontier` and purges queue entries that
/// no longer refer to a live frontier member. Returns how many vertices
/// were removed.
pub fn filter_stable_vertices<W: Weight>(
    frontier: &mut Frontier,
    queue: &mut PqQueue<W>,
    aux: &StabilityAux,
    dist: &[W],
) -> usize {
    let before = frontier.len();
    frontier.retain(|v| !aux.is_stable(v));
    queue.retain_live(frontier, dist);
    before - frontier.len()
}

struct PqHooks<'a> {
    aux: &'a mut StabilityAux,
    frontier: &'a mut Frontier,
    improved: &'a mut Vec<VertexId>,
}

impl PqHooks<'_> {
    fn improve(&mut self, v: VertexId) {
        self.aux.clean[v] = false;
        self.aux.last_improved[v] = self.aux.selection;
        self.frontier.insert(v);
        self.improved.push(v);
    }
}

impl LmhHooks for PqHooks<'_> {
    fn on_scan(&mut self, v: VertexId) {
        self.aux.clean[v] = true;
    }

    fn on_improve(&mut self, v: VertexId) {
        self.improve(v);
    }
}

pub fn jfr_pq<W: Weight>(g: &Graph<W>, s: VertexId, cfg: &JfrConfig) -> Result<SsspResult<W>, AlgoError> {
    cfg.validate()?;
    if cfg.mode != JfrMode::PqDynamic {
        return Err(AlgoError::InvalidConfig("jfr_pq requires the pq-dynamic mode".into()));
    }
    let mut st = State::new(g, s, Algorithm::JfrPq)?;
    st.stats.depth = Some(cfg.k);
    let n = g.n();

    let mut frontier = Frontier::new(n);
    let mut queue = PqQueue::new();
    let mut aux = StabilityAux::new(n, cfg.stability_window);
    let mut scratch = LmhScratch::new(n);
    let mut improved = Vec::new();
    let threshold = cfg.filter_alpha * n as f64;

    frontier.insert(s);
    queue.push(W::zero(), s);
    st.stats.queue_pushes = 1;

    let mut tripped = None;
    while let Some((key, u)) = queue.pop() {
        if !frontier.contains(u) || key != st.dist[u] {
            st.stats.stale_pops += 1;
            continue;
        }
        frontier.remove(u);
        if aux.clean[u] {
            // already pushed by a propagation since it was queued
            st.stats.stale_pops += 1;
            continue;
        }
        aux.selection += 1;
        st.stats.outer_iterations += 1;
        st.stats.activations[u] += 1;

        let relapse = st.stats.activations[u] > 1 && st.stats.improvements[u] > aux.imp_at_pop[u];
        aux.imp_at_pop[u] = st.stats.improvements[u];
        improved.clear();
        let mut hooks = PqHooks { aux: &mut aux, frontier: &mut frontier, improved: &mut improved };
        if relapse {
            tripped = propagate(&mut st, &mut scratch, &[u], cfg.k, &mut hooks).tripped;
        } else {
            hooks.aux.clean[u] = true;
            tripped = st.scan(u, |v| hooks.improve(v));
        }
        if tripped.is_some() {
            break;
        }
        for &v in &improved {
            if frontier.contains(v) && !aux.clean[v] {
                queue.push(st.dist[v], v);
                st.stats.queue_pushes += 1;
            }
        }

        if aux.selection.is_multiple_of(cfg.filter_period as u64) && frontier.len() as f64 > threshold {
            filter_stable_vertices(&mut frontier, &mut queue, &aux, &st.dist);
        }
    }
    Ok(st.finish(s, tripped.is_some(), tripped))
}
