//! Edge-increment sweep: operation counts before and after adding a
//! fraction of random edges to the same instance.

use std::fmt::Write as _;

use anyhow::{bail, Result};
use jfr_core::{add_edges, bellman_ford, generate, Algorithm, EdgeIncrement, GenSpec, Graph64, Potentials};
use rayon::prelude::*;

use crate::measure::{check_against, measure, Check};
use crate::suite::SCHEMA_LINE;

/// Where the base graphs come from.
#[derive(Debug, Clone)]
pub enum SweepBase {
    /// One generated instance per seed `spec.seed + i`, `i < seeds`.
    Generated { spec: GenSpec, seeds: usize },
    /// A fixed graph, incremented with non-negative edges only.
    Fixed { graph: Graph64, weight_lo: f64, weight_hi: f64 },
}

#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub base: SweepBase,
    pub fractions: Vec<f64>,
    pub algorithm: Algorithm,
    pub k: u32,
    pub source: usize,
    pub timing_repetitions: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub seed: u64,
    pub fraction: f64,
    pub m_base: usize,
    pub m_new: usize,
    pub ops_base: u64,
    pub ops_new: u64,
    pub time_base_ns: u64,
    pub time_new_ns: u64,
    pub check: Check,
}

impl SweepRow {
    pub fn delta_edges(&self) -> i64 {
        self.m_new as i64 - self.m_base as i64
    }

    pub fn delta_ops(&self) -> i64 {
        self.ops_new as i64 - self.ops_base as i64
    }
}

/// Per-fraction sign distribution of the operation change.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSummary {
    pub fraction: f64,
    pub runs: usize,
    pub negative: usize,
    pub zero: usize,
    pub positive: usize,
    pub delta_edges_total: i64,
    pub delta_ops_total: i64,
}

#[derive(Debug, Clone)]
pub struct SweepReport {
    pub rows: Vec<SweepRow>,
    pub summaries: Vec<SweepSummary>,
}

/// Seed of the increment applied at fraction index `fi` to instance `seed`.
fn increment_seed(seed: u64, fi: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(fi as u64 + 1)
}

fn sweep_one(
    spec: &SweepSpec,
    seed: u64,
    g: &Graph64,
    potentials: Option<&Potentials>,
    inc_base: EdgeIncrement,
) -> Result<Vec<SweepRow>> {
    let base = measure(g, spec.source, spec.algorithm, spec.k, spec.timing_repetitions)?;
    let base_check = check_against(&base.result, &bellman_ford(g, spec.source)?);
    let mut rows = Vec::with_capacity(spec.fractions.len());
    for (fi, &fraction) in spec.fractions.iter().enumerate() {
        let inc = EdgeIncrement { fraction, seed: increment_seed(seed, fi), ..inc_base };
        let h = add_edges(g, &inc, potentials)?;
        let new = measure(&h, spec.source, spec.algorithm, spec.k, spec.timing_repetitions)?;
        let new_check = check_against(&new.result, &bellman_ford(&h, spec.source)?);
        rows.push(SweepRow {
            seed,
            fraction,
            m_base: g.m(),
            m_new: h.m(),
            ops_base: base.result.stats.edge_inspections,
            ops_new: new.result.stats.edge_inspections,
            time_base_ns: base.time_ns,
            time_new_ns: new.time_ns,
            check: base_check.max(new_check),
        });
    }
    Ok(rows)
}

pub fn run_sweep(spec: &SweepSpec, threads: Option<usize>) -> Result<SweepReport> {
    if spec.fractions.is_empty() {
        bail!("invalid generator spec: the fractions list is empty");
    }
    if let Some(f) = spec.fractions.iter().find(|f| !(**f > 0.0 && **f <= 1.0)) {
        bail!("invalid generator spec: fraction {f} is outside (0, 1]");
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads.unwrap_or(0)).build()?;
    let rows: Vec<SweepRow> = match &spec.base {
        SweepBase::Generated { spec: gs, seeds } => {
            let inc_base = EdgeIncrement {
                fraction: 1.0,
                weight_lo: gs.weight_lo,
                weight_hi: gs.weight_hi,
                neg_fraction: gs.neg_fraction,
                seed: 0,
            };
            let per_seed = pool.install(|| {
                (0..*seeds)
                    .into_par_iter()
                    .map(|i| {
                        let seed = gs.seed.wrapping_add(i as u64);
                        let generated = generate(&gs.clone().with_seed(seed))?;
                        let inc = if generated.potentials.is_some() {
                            inc_base
                        } else {
                            EdgeIncrement { neg_fraction: 0.0, ..inc_base }
                        };
                        sweep_one(spec, seed, &generated.graph, generated.potentials.as_ref(), inc)
                    })
                    .collect::<Result<Vec<_>>>()
            })?;
            per_seed.into_iter().flatten().collect()
        }
        SweepBase::Fixed { graph, weight_lo, weight_hi } => {
            let inc = EdgeIncrement {
                fraction: 1.0,
                weight_lo: *weight_lo,
                weight_hi: *weight_hi,
                neg_fraction: 0.0,
                seed: 0,
            };
            sweep_one(spec, 0, graph, None, inc)?
        }
    };

    let summaries = spec
        .fractions
        .iter()
        .map(|&fraction| {
            let sel: Vec<&SweepRow> = rows.iter().filter(|r| r.fraction == fraction).collect();
            SweepSummary {
                fraction,
                runs: sel.len(),
                negative: sel.iter().filter(|r| r.delta_ops() < 0).count(),
                zero: sel.iter().filter(|r| r.delta_ops() == 0).count(),
                positive: sel.iter().filter(|r| r.delta_ops() > 0).count(),
                delta_edges_total: sel.iter().map(|r| r.delta_edges()).sum(),
                delta_ops_total: sel.iter().map(|r| r.delta_ops()).sum(),
            }
        })
        .collect();
    Ok(SweepReport { rows, summaries })
}

pub const SWEEP_COLUMNS: &str =
    "seed,fraction,m_base,m_new,delta_edges,ops_base,ops_new,delta_ops,time_base_ns,time_new_ns,check";

impl SweepReport {
    /// Rows, then one `#summary` comment line per fraction.
    pub fn csv(&self) -> String {
        let mut out = format!("{SCHEMA_LINE}\n{SWEEP_COLUMNS}\n");
        for r in &self.rows {
            writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{},{}",
                r.seed,
                r.fraction,
                r.m_base,
                r.m_new,
                r.delta_edges(),
                r.ops_base,
                r.ops_new,
                r.delta_ops(),
                r.time_base_ns,
                r.time_new_ns,
                r.check
            )
            .unwrap();
        }
        for s in &self.summaries {
            writeln!(
                out,
                "#summary fraction={} runs={} negative={} zero={} positive={} delta_edges_total={} delta_ops_total={}",
                s.fraction, s.runs, s.negative, s.zero, s.positive, s.delta_edges_total, s.delta_ops_total
            )
            .unwrap();
        }
        out
    }
}
