//! Instrumented single-source shortest-path solvers.
//!
//! Every solver returns an [`SsspResult`] with the same distance contract:
//! on a graph without a negative cycle reachable from the source all of
//! them produce identical distance vectors. Negative cycles are reported
//! through [`SsspResult::neg_cycle`]; when it is set, `dist` and `parent`
//! are not meaningful.
//!
//! Besides the per-algorithm termination rules, the queue-driven solvers
//! stop on a walk-length guard: a label whose producing walk has `n` or
//! more edges proves a negative cycle (a repeated vertex on a strictly
//! improving walk closes a negative loop).

mod bellman_ford;
mod cycle;
mod dijkstra;
mod frontier;
mod jfr_pq;
mod jfr_strict;
mod lmh;
mod spfa;
mod stats;

use std::time::Instant;

use thiserror::Error;

use crate::graph::{Graph, GraphError, VertexId};
use crate::weight::Weight;

pub use bellman_ford::bellman_ford;
pub use cycle::{cycle_weight, detect_negative_cycle, path_weight, reconstruct_path};
pub use dijkstra::dijkstra_oracle;
pub use frontier::Frontier;
pub use jfr_pq::{filter_stable_vertices, jfr_pq, PqQueue, StabilityAux};
pub use jfr_strict::jfr_strict;
pub use lmh::lmh_propagate;
pub use spfa::{spfa_fifo, spfa_slf};
pub use stats::{Algorithm, LmhCall, RunStats, UnknownAlgorithm};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AlgoError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("graph has a negative edge weight; dijkstra requires non-negative weights")]
    NegativeWeightPresent,
    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),
    #[error("result does not record a negative cycle")]
    NoCycleRecorded,
    #[error("result records a negative cycle; distances are undefined")]
    NegCycleResult,
    #[error("vertex {0} is unreachable from the source")]
    Unreachable(VertexId),
}

/// Distances, shortest-path tree and instrumentation of one solver run.
#[derive(Debug, Clone, PartialEq)]
pub struct SsspResult<W = f64> {
    pub source: VertexId,
    /// `+∞` marks an unreachable vertex.
    pub dist: Vec<W>,
    /// π: predecessor on a shortest path, `None` for the source and for
    /// unreachable vertices.
    pub parent: Vec<Option<VertexId>>,
    pub neg_cycle: bool,
    /// A vertex whose label kept improving past the point that proves a
    /// negative cycle, used to start the parent walk.
    pub cycle_hint: Option<VertexId>,
    pub stats: RunStats,
}

impl<W: Weight> SsspResult<W> {
    pub fn is_reachable(&self, v: VertexId) -> bool {
        self.dist[v].is_finite()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JfrMode {
    /// Round-based: frontier relaxation plus depth-bounded propagation.
    StrictK,
    /// Event-driven: minimum-distance selection with adaptive propagation.
    PqDynamic,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JfrConfig {
    pub mode: JfrMode,
    /// Propagation depth, at least 1.
    pub k: u32,
    /// Frontier filtering runs once `|F| > filter_alpha * n`. A value of 1
    /// disables filtering since the frontier never exceeds `n`.
    pub filter_alpha: f64,
    /// Selections without improvement before a propagated vertex counts as
    /// stable.
    pub stability_window: u32,
    /// Selections between evaluations of the filtering condition.
    pub filter_period: u32,
}

impl JfrConfig {
    pub const DEFAULT_PQ_DEPTH: u32 = 2;

    pub fn strict(k: u32) -> Self {
        Self { mode: JfrMode::StrictK, k, ..Self::pq() }
    }

    pub fn pq() -> Self {
        Self {
            mode: JfrMode::PqDynamic,
            k: Self::DEFAULT_PQ_DEPTH,
            filter_alpha: 0.1,
            stability_window: Self::DEFAULT_PQ_DEPTH,
            filter_period: 64,
        }
    }

    pub fn with_k(self, k: u32) -> Self {
        Self { k, ..self }
    }

    pub fn validate(&self) -> Result<(), AlgoError> {
        if self.k == 0 {
            return Err(AlgoError::InvalidConfig("k must be at least 1".into()));
        }
        if !(self.filter_alpha > 0.0 && self.filter_alpha <= 1.0) {
            return Err(AlgoError::InvalidConfig("filter_alpha must lie in (0, 1]".into()));
        }
        if self.stability_window == 0 || self.filter_period == 0 {
            return Err(AlgoError::InvalidConfig("stability_window and filter_period must be at least 1".into()));
        }
        Ok(())
    }
}

impl Default for JfrConfig {
    fn default() -> Self {
        Self::pq()
    }
}

/// Runs `algorithm` from `source`. `k` is the propagation depth used by the
/// JFR solvers and ignored by the others.
pub fn solve<W: Weight>(
    g: &Graph<W>,
    source: VertexId,
    algorithm: Algorithm,
    k: u32,
) -> Result<SsspResult<W>, AlgoError> {
    match algorithm {
        Algorithm::BellmanFord => bellman_ford(g, source),
        Algorithm::SpfaFifo => spfa_fifo(g, source),
        Algorithm::SpfaSlf => spfa_slf(g, source),
        Algorithm::Dijkstra => dijkstra_oracle(g, source),
        Algorithm::JfrStrict => jfr_strict(g, source, k),
        Algorithm::JfrPq => jfr_pq(g, source, &JfrConfig::pq().with_k(k)),
    }
}

/// Labels plus instrumentation, shared by the solver loops.
pub(crate) struct State<'g, W> {
    pub g: &'g Graph<W>,
    pub dist: Vec<W>,
    pub parent: Vec<Option<VertexId>>,
    /// Edge count of the walk that produced each label.
    pub hops: Vec<u32>,
    pub stats: RunStats,
    started: Instant,
}

impl<'g, W: Weight> State<'g, W> {
    pub fn new(g: &'g Graph<W>, source: VertexId, algorithm: Algorithm) -> Result<Self, AlgoError> {
        g.check_vertex(source)?;
        let n = g.n();
        let mut dist = vec![W::infinity(); n];
        dist[source] = W::zero();
        Ok(Self {
            g,
            dist,
            parent: vec![None; n],
            hops: vec![0; n],
            stats: RunStats::new(algorithm, n),
            started: Instant::now(),
        })
    }

    /// Evaluates one edge `u -> v`. Returns whether `v` improved and
    /// whether its walk length reached `n`.
    #[inline]
    pub fn relax(&mut self, u: VertexId, v: VertexId, w: W) -> (bool, bool) {
        self.stats.edge_inspections += 1;
        let nd = self.dist[u] + w;
        if nd < self.dist[v] {
            let hops = self.hops[u] + 1;
            self.dist[v] = nd;
            self.parent[v] = Some(u);
            self.hops[v] = hops;
            self.stats.improvements[v] += 1;
            self.stats.successful_relaxations += 1;
            (true, hops as usize >= self.dist.len())
        } else {
            (false, false)
        }
    }

    /// Relaxes every out-edge of `u`, calling `on_improve(v)` on each
    /// strict improvement. Returns a vertex whose walk length reached `n`,
    /// if any. Tails with an infinite label are skipped uncounted.
    #[inline]
    pub fn scan(&mut self, u: VertexId, mut on_improve: impl FnMut(VertexId)) -> Option<VertexId> {
        if !self.dist[u].is_finite() {
            return None;
        }
        let g = self.g;
        let (targets, weights) = g.adjacency(u);
        let mut tripped = None;
        for (&v, &w) in targets.iter().zip(weights) {
            let v = v as usize;
            let (improved, long_walk) = self.relax(u, v, w);
            if improved {
                if long_walk {
                    tripped = Some(v);
                }
                on_improve(v);
            }
        }
        tripped
    }

    pub fn finish(mut self, source: VertexId, neg_cycle: bool, cycle_hint: Option<VertexId>) -> SsspResult<W> {
        self.stats.wall_time_ns = (self.started.elapsed().as_nanos() as u64).max(1);
        SsspResult {
            source,
            dist: self.dist,
            parent: self.parent,
            neg_cycle,
            cycle_hint: if neg_cycle { cycle_hint } else { None },
            stats: self.stats,
        }
    }
}
