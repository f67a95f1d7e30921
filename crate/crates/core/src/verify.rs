//! Correctness checks against a Bellman–Ford oracle and the fixed-point
//! conditions of shortest-path labels.

use serde::{Serialize, Serializer};

use crate::algorithms::{bellman_ford, AlgoError, SsspResult};
use crate::graph::{EdgeListDoc, Graph, VertexId};
use crate::weight::Weight;

fn float_token<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    if x.is_finite() {
        s.serialize_f64(*x)
    } else {
        s.serialize_str(&x.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Mismatch {
    pub vertex: VertexId,
    #[serde(serialize_with = "float_token")]
    pub expected: f64,
    #[serde(serialize_with = "float_token")]
    pub actual: f64,
}

/// Outcome of a verification. Checks that were not run are `None`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub distances_match: Option<bool>,
    pub neg_cycle_agree: Option<bool>,
    /// No edge out of a reachable vertex can still improve its head.
    pub triangle_ok: bool,
    /// Every parent edge exists and is tight, every reachable non-source
    /// vertex has one, and the source sits at distance 0.
    pub parent_ok: bool,
    pub first_mismatch: Option<Mismatch>,
    /// A second oracle pass over reversed edge order disagreed with the
    /// first, so exact equality is not authoritative on this instance.
    pub ties_detected: bool,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.distances_match != Some(false) && self.neg_cycle_agree != Some(false) && self.triangle_ok && self.parent_ok
    }
}

fn to_f64<W: Weight>(x: W) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

fn first_difference<W: Weight>(expected: &[W], actual: &[W]) -> Option<Mismatch> {
    if expected.len() != actual.len() {
        let vertex = expected.len().min(actual.len());
        let get = |d: &[W]| d.get(vertex).map_or(f64::NAN, |&x| to_f64(x));
        return Some(Mismatch { vertex, expected: get(expected), actual: get(actual) });
    }
    // `!=` on +∞ is false, so unreachable patterns compare as equal
    expected.iter().zip(actual).position(|(e, a)| e != a).map(|vertex| Mismatch {
        vertex,
        expected: to_f64(expected[vertex]),
        actual: to_f64(actual[vertex]),
    })
}

/// Compares `candidate` against Bellman–Ford from `s`.
///
/// Distances must match exactly. When neither side reports a negative
/// cycle the optimality conditions of the candidate are checked too.
pub fn oracle_compare<W: Weight>(
    g: &Graph<W>,
    s: VertexId,
    candidate: &SsspResult<W>,
) -> Result<VerifyReport, AlgoError> {
    let oracle = bellman_ford(g, s)?;
    let neg_cycle_agree = oracle.neg_cycle == candidate.neg_cycle;
    let mut report = VerifyReport {
        distances_match: None,
        neg_cycle_agree: Some(neg_cycle_agree),
        triangle_ok: true,
        parent_ok: true,
        first_mismatch: None,
        ties_detected: false,
    };
    if oracle.neg_cycle || candidate.neg_cycle {
        return Ok(report);
    }
    let mismatch = first_difference(&oracle.dist, &candidate.dist);
    report.distances_match = Some(mismatch.is_none());
    report.first_mismatch = mismatch;
    if mismatch.is_some() {
        report.ties_detected = reversed_oracle(g, s)?.dist != oracle.dist;
    }
    let local = check_optimality_conditions(g, s, candidate)?;
    report.triangle_ok = local.triangle_ok;
    report.parent_ok = local.parent_ok;
    Ok(report)
}

fn reversed_oracle<W: Weight>(g: &Graph<W>, s: VertexId) -> Result<SsspResult<W>, AlgoError> {
    let mut edges: Vec<_> = g.edges().collect();
    edges.reverse();
    let flipped = Graph::from_edge_list(&EdgeListDoc { n: g.n(), edges })?;
    bellman_ford(&flipped, s)
}

/// Checks the Bellman fixed point of `result` without an oracle run.
pub fn check_optimality_conditions<W: Weight>(
    g: &Graph<W>,
    s: VertexId,
    result: &SsspResult<W>,
) -> Result<VerifyReport, AlgoError> {
    if result.neg_cycle {
        return Err(AlgoError::NegCycleResult);
    }
    g.check_vertex(s)?;
    let n = g.n();
    let mut report = VerifyReport {
        distances_match: None,
        neg_cycle_agree: None,
        triangle_ok: true,
        parent_ok: true,
        first_mismatch: None,
        ties_detected: false,
    };
    if result.dist.len() != n || result.parent.len() != n {
        report.triangle_ok = false;
        report.parent_ok = false;
        return Ok(report);
    }
    let dist = &result.dist;

    for (u, v, w) in g.edges() {
        if dist[u].is_finite() && dist[u] + w < dist[v] {
            report.triangle_ok = false;
            break;
        }
    }

    report.parent_ok = dist[s] == W::zero() && result.parent[s].is_none();
    for v in (0..n).filter(|&v| v != s) {
        if !report.parent_ok {
            break;
        }
        report.parent_ok = match result.parent[v] {
            None => !dist[v].is_finite(),
            Some(p) => {
                p < n
                    && dist[v].is_finite()
                    && dist[p].is_finite()
                    && g.adjacency(p)
                        .0
                        .iter()
                        .zip(g.adjacency(p).1)
                        .any(|(&h, &w)| h as usize == v && dist[p] + w == dist[v])
            }
        };
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algorithms::{jfr_pq, JfrConfig};

    fn triangle() -> Graph {
        Graph::from_edge_list(&EdgeListDoc { n: 3, edges: vec![(0, 1, 4.0), (0, 2, 1.0), (2, 1, 1.0)] }).unwrap()
    }

    #[test]
    fn oracle_against_itself() {
        let g = triangle();
        let r = bellman_ford(&g, 0).unwrap();
        let rep = oracle_compare(&g, 0, &r).unwrap();
        assert_eq!(rep.distances_match, Some(true));
        assert!(rep.all_pass() && rep.first_mismatch.is_none());
    }

    #[test]
    fn perturbed_distance() {
        let g = triangle();
        let mut r = jfr_pq(&g, 0, &JfrConfig::pq()).unwrap();
        r.dist[2] += 1.0;
        let rep = oracle_compare(&g, 0, &r).unwrap();
        assert_eq!(rep.distances_match, Some(false));
        assert_eq!(rep.first_mismatch, Some(Mismatch { vertex: 2, expected: 1.0, actual: 2.0 }));
        assert!(!rep.ties_detected);
        assert!(!rep.all_pass());
    }

    #[test]
    fn non_tight_parent() {
        let g = triangle();
        let mut r = bellman_ford(&g, 0).unwrap();
        r.parent[1] = Some(0);
        let rep = check_optimality_conditions(&g, 0, &r).unwrap();
        assert!(rep.triangle_ok && !rep.parent_ok);
    }

    #[test]
    fn below_optimum_breaks_triangle() {
        let g = triangle();
        let mut r = bellman_ford(&g, 0).unwrap();
        r.dist[2] = 0.5;
        let rep = check_optimality_conditions(&g, 0, &r).unwrap();
        assert!(!rep.triangle_ok);
    }

    #[test]
    fn wrong_source() {
        let g = triangle();
        let r = bellman_ford(&g, 2).unwrap();
        assert_eq!(oracle_compare(&g, 0, &r).unwrap().distances_match, Some(false));
    }

    #[test]
    fn neg_cycle_result_rejected() {
        let g = Graph::from_edge_list(&EdgeListDoc { n: 2, edges: vec![(0, 1, 1.0), (1, 0, -2.0)] }).unwrap();
        let r = bellman_ford(&g, 0).unwrap();
        assert_eq!(check_optimality_conditions(&g, 0, &r), Err(AlgoError::NegCycleResult));
        let rep = oracle_compare(&g, 0, &r).unwrap();
        assert_eq!(rep.neg_cycle_agree, Some(true));
        assert!(rep.all_pass());
    }
}
