//! Machine-independent efficiency indicators and checks of the amortized
//! inspection bounds.

use serde::Serialize;
use thiserror::Error;

use crate::algorithms::{Algorithm, RunStats};
use crate::graph::Graph;
use crate::weight::Weight;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MetricsError {
    #[error("operation counts must be positive")]
    ZeroOps,
    #[error("statistics do not come from a strict-mode run with depth {expected}")]
    ModeMismatch { expected: u32 },
    #[error("statistics cover {stats} vertices but the graph has {graph}")]
    SizeMismatch { stats: usize, graph: usize },
}

/// Baseline run against a JFR run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Comparison {
    pub ops_base: u64,
    pub ops_jfr: u64,
    pub time_base_ns: u64,
    pub time_jfr_ns: u64,
    /// Relaxation reduction factor `ops_base / ops_jfr`.
    pub rho_ops: f64,
    /// Unit-time cost factor `(time_jfr / ops_jfr) / (time_base / ops_base)`.
    pub rho_tpr: f64,
    /// Normalized work reduction `ops_jfr / ops_base`.
    pub nwr: f64,
    /// `rho_ops > rho_tpr`, decided exactly on the integer inputs.
    pub predicted_speedup: bool,
    pub observed_speedup: bool,
}

impl Comparison {
    /// Builds a comparison from raw counts. Times below one nanosecond are
    /// raised to one.
    pub fn from_counts(ops_base: u64, time_base_ns: u64, ops_jfr: u64, time_jfr_ns: u64) -> Result<Self, MetricsError> {
        if ops_base == 0 || ops_jfr == 0 {
            return Err(MetricsError::ZeroOps);
        }
        let (tb, tj) = (time_base_ns.max(1), time_jfr_ns.max(1));
        let (ob, oj) = (ops_base as f64, ops_jfr as f64);
        let rho_ops = ob / oj;
        let rho_tpr = (tj as f64 / oj) / (tb as f64 / ob);
        let nwr = oj / ob;

        // ob/oj > tj*ob/(oj*tb), cleared of denominators
        let (ob, oj, tb, tj) = (ops_base as u128, ops_jfr as u128, tb as u128, tj as u128);
        let predicted_speedup = ob * oj * tb > tj * ob * oj;
        let observed_speedup = tj < tb;
        debug_assert_eq!(predicted_speedup, observed_speedup);
        Ok(Self {
            ops_base,
            ops_jfr,
            time_base_ns: tb as u64,
            time_jfr_ns: tj as u64,
            rho_ops,
            rho_tpr,
            nwr,
            predicted_speedup,
            observed_speedup,
        })
    }
}

/// Compares two runs on edge inspections and wall time.
pub fn compare(base: &RunStats, jfr: &RunStats) -> Result<Comparison, MetricsError> {
    Comparison::from_counts(base.edge_inspections, base.wall_time_ns, jfr.edge_inspections, jfr.wall_time_ns)
}

/// Amortized inspection bound of one strict-mode run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundReport {
    /// `sum(activations[v] * deg(v))`
    pub lhs: u64,
    /// `m + sum(improvements[v] * deg(v)) / k`
    pub rhs: f64,
    /// `lhs <= rhs + n`, decided in integers.
    pub holds: bool,
}

fn strict_depth(stats: &RunStats, n: usize) -> Result<u32, MetricsError> {
    let k = stats.depth.unwrap_or(0);
    if stats.algorithm != Some(Algorithm::JfrStrict) || k == 0 {
        return Err(MetricsError::ModeMismatch { expected: k });
    }
    if stats.activations.len() != n || stats.improvements.len() != n {
        return Err(MetricsError::SizeMismatch { stats: stats.activations.len(), graph: n });
    }
    Ok(k)
}

fn weighted_sum<W: Weight>(g: &Graph<W>, counts: &[u32]) -> u64 {
    counts.iter().enumerate().map(|(v, &c)| c as u64 * g.degree(v) as u64).sum()
}

pub fn bound_check<W: Weight>(stats: &RunStats, g: &Graph<W>, k: u32) -> Result<BoundReport, MetricsError> {
    let depth = strict_depth(stats, g.n())?;
    if depth != k {
        return Err(MetricsError::ModeMismatch { expected: k });
    }
    let lhs = weighted_sum(g, &stats.activations);
    let improved = weighted_sum(g, &stats.improvements);
    let (m, n) = (g.m() as u128, g.n() as u128);
    let holds = lhs as u128 * k as u128 <= (m + n) * k as u128 + improved as u128;
    Ok(BoundReport { lhs, rhs: g.m() as f64 + improved as f64 / k as f64, holds })
}

/// Per-run structural invariants of the strict mode.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StrictInvariants {
    /// Inspections outside propagation equal `sum(activations * deg)`.
    pub decomposition_exact: bool,
    /// Vertices breaking `activations[v] <= 1 + ceil(improvements[v] / k)`.
    pub activation_violations: Vec<usize>,
    /// Indices of propagation calls whose inspections exceed
    /// `k * window_degree_sum`.
    pub lmh_cost_violations: Vec<usize>,
    pub bound: BoundReport,
}

impl StrictInvariants {
    pub fn all_hold(&self) -> bool {
        self.decomposition_exact
            && self.activation_violations.is_empty()
            && self.lmh_cost_violations.is_empty()
            && self.bound.holds
    }
}

pub fn strict_invariants<W: Weight>(stats: &RunStats, g: &Graph<W>) -> Result<StrictInvariants, MetricsError> {
    let k = strict_depth(stats, g.n())?;
    let decomposition_exact = stats.frontier_inspections() == weighted_sum(g, &stats.activations);
    let activation_violations =
        (0..g.n()).filter(|&v| stats.activations[v] > 1 + stats.improvements[v].div_ceil(k)).collect();
    let lmh_cost_violations = stats
        .lmh_calls
        .iter()
        .enumerate()
        .filter(|(_, c)| c.inspections > k as u64 * c.window_degree_sum)
        .map(|(i, _)| i)
        .collect();
    Ok(StrictInvariants {
        decomposition_exact,
        activation_violations,
        lmh_cost_violations,
        bound: bound_check(stats, g, k)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algorithms::{bellman_ford, jfr_strict};
    use crate::graph::EdgeListDoc;

    #[test]
    fn table_row_ratios() {
        let c = Comparison::from_counts(44_693_930, 1_064_710_000, 1_007_091, 13_560_000).unwrap();
        assert!((c.rho_ops - 44.38).abs() < 0.005);
        assert!((c.rho_tpr - 0.565).abs() < 0.0005);
        assert!(c.predicted_speedup && c.observed_speedup);
    }

    #[test]
    fn identity_case() {
        let c = Comparison::from_counts(500, 7, 500, 7).unwrap();
        assert_eq!((c.rho_ops, c.rho_tpr, c.nwr), (1.0, 1.0, 1.0));
        assert!(!c.predicted_speedup && !c.observed_speedup);
    }

    #[test]
    fn zero_ops() {
        assert_eq!(Comparison::from_counts(0, 1, 5, 1), Err(MetricsError::ZeroOps));
        assert_eq!(Comparison::from_counts(5, 1, 0, 1), Err(MetricsError::ZeroOps));
    }

    #[test]
    fn prediction_tracks_observation() {
        for (ob, tb, oj, tj) in [(3, 10, 7, 9), (1, 1, 1, 2), (u32::MAX as u64, 5, 1, 5), (9, 0, 4, 0)] {
            let c = Comparison::from_counts(ob, tb, oj, tj).unwrap();
            assert_eq!(c.predicted_speedup, c.observed_speedup);
            assert!((c.rho_ops * c.nwr - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn edgeless_bound() {
        let g = Graph::<f64>::empty(4);
        let r = jfr_strict(&g, 0, 2).unwrap();
        let b = bound_check(&r.stats, &g, 2).unwrap();
        assert_eq!(b.lhs, 0);
        assert!(b.holds);
    }

    #[test]
    fn unit_chain_k1() {
        let doc = EdgeListDoc { n: 11, edges: (0..10).map(|i| (i, i + 1, 1.0)).collect() };
        let g = Graph::from_edge_list(&doc).unwrap();
        let r = jfr_strict(&g, 0, 1).unwrap();
        let b = bound_check(&r.stats, &g, 1).unwrap();
        // every vertex is activated once; vertex 10 has no out-edge
        assert_eq!(b.lhs, 10);
        assert_eq!(b.rhs, 19.0);
        assert!(b.holds);
        assert!(strict_invariants(&r.stats, &g).unwrap().all_hold());
    }

    #[test]
    fn mode_mismatch() {
        let g = Graph::<f64>::empty(2);
        let r = bellman_ford(&g, 0).unwrap();
        assert!(matches!(bound_check(&r.stats, &g, 1), Err(MetricsError::ModeMismatch { .. })));
        let r = jfr_strict(&g, 0, 2).unwrap();
        assert!(matches!(bound_check(&r.stats, &g, 3), Err(MetricsError::ModeMismatch { .. })));
    }
}
