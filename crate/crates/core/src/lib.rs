//! Single-source shortest paths on graphs with negative edge weights.
//!
//! The crate provides Jump Frontier Relaxation (JFR) in a round-based
//! strict-`k` mode and an event-driven priority-queue mode, next to
//! Bellman–Ford, FIFO SPFA, SPFA with the Small Label First rule and a
//! Dijkstra oracle. Every solver counts its edge inspections so runs can be
//! compared independently of the machine.
//!
//! ```
//! use jfr_core::{jfr_strict, EdgeListDoc, Graph64};
//!
//! let doc = EdgeListDoc { n: 3, edges: vec![(0, 1, 4.0), (0, 2, 1.0), (2, 1, -2.0)] };
//! let g = Graph64::from_edge_list(&doc).unwrap();
//! let r = jfr_strict(&g, 0, 2).unwrap();
//! assert_eq!(r.dist, vec![0.0, -1.0, 1.0]);
//! ```

pub mod algorithms;
pub mod generators;
pub mod graph;
pub mod metrics;
pub mod text;
pub mod verify;
pub mod weight;

pub use algorithms::{
    bellman_ford, cycle_weight, detect_negative_cycle, dijkstra_oracle, filter_stable_vertices, jfr_pq, jfr_strict,
    lmh_propagate, path_weight, reconstruct_path, solve, spfa_fifo, spfa_slf, AlgoError, Algorithm, Frontier,
    JfrConfig, JfrMode, LmhCall, PqQueue, RunStats, SsspResult, StabilityAux, UnknownAlgorithm,
};
pub use generators::{
    add_edges, gen_neg_dense, gen_neg_dense_with_potentials, gen_slf_killer, gen_sparse_random, gen_windmill, generate,
    plant_negative_cycle, EdgeIncrement, Family, GenError, GenSpec, Generated, Potentials,
};
pub use graph::{EdgeListDoc, Graph, GraphError, OutEdges, VertexId};
pub use metrics::{bound_check, compare, strict_invariants, BoundReport, Comparison, MetricsError, StrictInvariants};
pub use text::{read_bytes, read_result, read_text, write_result, write_text, ResultDoc};
pub use verify::{check_optimality_conditions, oracle_compare, Mismatch, VerifyReport};
pub use weight::{Weight, WEIGHT_QUANTUM};

pub type Graph64 = Graph<f64>;
pub type Graph32 = Graph<f32>;
pub type SsspResult64 = SsspResult<f64>;
pub type SsspResult32 = SsspResult<f32>;
pub type EdgeListDoc64 = EdgeListDoc<f64>;
pub type EdgeListDoc32 = EdgeListDoc<f32>;
