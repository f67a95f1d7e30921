use std::fmt;

use jfr_core::{solve, AlgoError, Algorithm, Graph64, SsspResult64, VertexId};
use serde::Serialize;

/// Oracle verdict of one run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Check {
    Pass,
    Fail,
    Skipped,
    Unchecked,
}

impl Check {
    pub fn as_str(self) -> &'static str {
        match self {
            Check::Pass => "PASS",
            Check::Fail => "FAIL",
            Check::Skipped => "SKIPPED",
            Check::Unchecked => "UNCHECKED",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A run whose time is the median over repetitions. Operation counts come
/// from the first repetition; they are identical across repetitions.
#[derive(Debug, Clone)]
pub struct Measured {
    pub result: SsspResult64,
    pub time_ns: u64,
}

pub fn median(values: &mut [u64]) -> u64 {
    assert!(!values.is_empty(), "median of an empty sample");
    values.sort_unstable();
    let mid = values.len() / 2;
    if values.len() % 2 == 1 {
        values[mid]
    } else {
        values[mid - 1] + (values[mid] - values[mid - 1]) / 2
    }
}

pub fn measure(
    g: &Graph64,
    source: VertexId,
    algorithm: Algorithm,
    k: u32,
    repetitions: usize,
) -> Result<Measured, AlgoError> {
    let first = solve(g, source, algorithm, k)?;
    let mut times = vec![first.stats.wall_time_ns];
    for _ in 1..repetitions {
        times.push(solve(g, source, algorithm, k)?.stats.wall_time_ns);
    }
    let time_ns = median(&mut times);
    Ok(Measured { result: first, time_ns })
}

/// PASS when `result` agrees with the Bellman–Ford `oracle`: both report a
/// negative cycle, or neither does and the distances are exactly equal.
pub fn check_against(result: &SsspResult64, oracle: &SsspResult64) -> Check {
    let ok = if oracle.neg_cycle {
        result.neg_cycle
    } else {
        !result.neg_cycle
            && result.dist.len() == oracle.dist.len()
            && result.dist.iter().zip(&oracle.dist).all(|(a, b)| a == b)
    };
    if ok {
        Check::Pass
    } else {
        Check::Fail
    }
}
