use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// The solvers this crate ships, by their command-line names.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Algorithm {
    #[serde(rename = "bf")]
    BellmanFord,
    #[serde(rename = "spfa")]
    SpfaFifo,
    #[serde(rename = "slf")]
    SpfaSlf,
    #[serde(rename = "dijkstra")]
    Dijkstra,
    #[serde(rename = "jfr-strict")]
    JfrStrict,
    #[serde(rename = "jfr-pq")]
    JfrPq,
}

impl Algorithm {
    pub const ALL: [Algorithm; 6] = [
        Algorithm::BellmanFord,
        Algorithm::SpfaFifo,
        Algorithm::SpfaSlf,
        Algorithm::Dijkstra,
        Algorithm::JfrStrict,
        Algorithm::JfrPq,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::BellmanFord => "bf",
            Algorithm::SpfaFifo => "spfa",
            Algorithm::SpfaSlf => "slf",
            Algorithm::Dijkstra => "dijkstra",
            Algorithm::JfrStrict => "jfr-strict",
            Algorithm::JfrPq => "jfr-pq",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown algorithm `{0}` (expected one of bf, spfa, slf, dijkstra, jfr-strict, jfr-pq)")]
pub struct UnknownAlgorithm(pub String);

impl FromStr for Algorithm {
    type Err = UnknownAlgorithm;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Algorithm::ALL.into_iter().find(|a| a.name() == s).ok_or_else(|| UnknownAlgorithm(s.to_owned()))
    }
}

/// Cost record of one local multi-hop propagation call.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct LmhCall {
    /// Relaxation rounds the call was allowed.
    pub rounds: u32,
    pub inspections: u64,
    /// Seeds plus every vertex whose out-edges the call scanned.
    pub window_vertices: u32,
    pub window_degree_sum: u64,
}

/// Instrumentation shared by every solver.
///
/// `edge_inspections` counts every evaluation of `d[u] + w(u,v) < d[v]`,
/// including those made inside local propagation, so counts are comparable
/// across algorithms. Tails with infinite distance are never evaluated.
#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct RunStats {
    pub algorithm: Option<Algorithm>,
    /// Propagation depth `k` for the JFR solvers.
    pub depth: Option<u32>,
    pub edge_inspections: u64,
    pub successful_relaxations: u64,
    /// Subset of `edge_inspections` made by local multi-hop propagation.
    pub lmh_inspections: u64,
    pub queue_pushes: u64,
    /// Queue pops discarded without activating the vertex.
    pub stale_pops: u64,
    /// Passes (BF), outer rounds (strict JFR) or selections (queue solvers).
    pub outer_iterations: u64,
    /// s(v): how many times each vertex entered the active set and had its
    /// out-edges scanned as a frontier member.
    pub activations: Vec<u32>,
    /// D_v: strict distance decreases per vertex.
    pub improvements: Vec<u32>,
    pub lmh_calls: Vec<LmhCall>,
    pub wall_time_ns: u64,
}

impl RunStats {
    pub fn new(algorithm: Algorithm, n: usize) -> Self {
        Self { algorithm: Some(algorithm), activations: vec![0; n], improvements: vec![0; n], ..Self::default() }
    }

    /// Inspections made outside local propagation.
    pub fn frontier_inspections(&self) -> u64 {
        self.edge_inspections - self.lmh_inspections
    }
}
