//! Table experiments: generated instance groups, every selected solver on
//! each instance, one aggregated row per (group, algorithm).

use std::fmt::Write as _;

use anyhow::{bail, Context, Result};
use jfr_core::{
    bellman_ford, generate, plant_negative_cycle, AlgoError, Algorithm, Comparison, Family, GenSpec, Graph64,
    StrictInvariants,
};
use rayon::prelude::*;
use serde::Deserialize;

use crate::measure::{check_against, measure, median, Check};

pub const SCHEMA_LINE: &str = "#schema=1";

/// The bundled desk-scale suite.
pub const DESK_SUITE: &str = include_str!("../suites/desk_suite.toml");

fn default_seed() -> u64 {
    1
}
fn default_timing() -> usize {
    5
}
fn default_k() -> u32 {
    2
}
fn default_baseline() -> Algorithm {
    Algorithm::SpfaSlf
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteSpec {
    #[serde(default)]
    pub name: String,
    /// Instance `i` of every group uses seed `seed + i`.
    #[serde(default = "default_seed")]
    pub seed: u64,
    /// Generated instances per group.
    pub repetitions: usize,
    /// Timed runs per (instance, algorithm); the median is kept.
    #[serde(default = "default_timing")]
    pub timing_repetitions: usize,
    #[serde(default = "default_k")]
    pub k: u32,
    #[serde(default)]
    pub source: usize,
    pub algorithms: Vec<Algorithm>,
    /// Algorithm every JFR run is compared against.
    #[serde(default = "default_baseline")]
    pub baseline: Algorithm,
    pub groups: Vec<GroupSpec>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub family: Family,
    pub n: Option<usize>,
    pub m: Option<usize>,
    pub blades: Option<usize>,
    pub blade_size: Option<usize>,
    pub weight_lo: Option<f64>,
    pub weight_hi: Option<f64>,
    pub neg_fraction: Option<f64>,
    /// Adds a reachable negative cycle to every instance; rows then check
    /// that the cycle is reported.
    #[serde(default)]
    pub plant_cycle: bool,
}

impl GroupSpec {
    pub fn gen_spec(&self, seed: u64) -> Result<GenSpec> {
        let need = |v: Option<usize>, flag: &str| {
            v.with_context(|| format!("invalid generator spec: {} needs `{flag}`", self.family))
        };
        let mut spec = match self.family {
            Family::SparseRandom => GenSpec::sparse_random(need(self.n, "n")?, need(self.m, "m")?, seed),
            Family::NegDense => {
                GenSpec::neg_dense(need(self.n, "n")?, need(self.m, "m")?, self.neg_fraction.unwrap_or(0.3), seed)
            }
            Family::Windmill => {
                GenSpec::windmill(need(self.blades, "blades")?, need(self.blade_size, "blade_size")?, seed)
            }
            Family::SlfKiller => GenSpec::slf_killer(need(self.n, "n")?, seed),
        };
        if let Some(lo) = self.weight_lo {
            spec.weight_lo = lo;
        }
        if let Some(hi) = self.weight_hi {
            spec.weight_hi = hi;
        }
        Ok(spec)
    }

    pub fn build(&self, seed: u64, source: usize) -> Result<Graph64> {
        let g = generate(&self.gen_spec(seed)?)?.graph;
        if self.plant_cycle {
            Ok(plant_negative_cycle(&g, source, seed)?)
        } else {
            Ok(g)
        }
    }
}

impl SuiteSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let spec: SuiteSpec = toml::from_str(text).context("invalid suite spec")?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.repetitions == 0 || self.timing_repetitions == 0 {
            bail!("invalid suite spec: repetitions must be at least 1");
        }
        if self.algorithms.is_empty() {
            bail!("invalid suite spec: select at least one algorithm");
        }
        if self.groups.is_empty() {
            bail!("invalid suite spec: no instance groups");
        }
        if self.k == 0 {
            bail!("invalid suite spec: k must be at least 1");
        }
        for g in &self.groups {
            g.gen_spec(self.seed)?;
        }
        Ok(())
    }

    fn jfr_algorithms(&self) -> impl Iterator<Item = Algorithm> + '_ {
        self.algorithms.iter().copied().filter(|a| matches!(a, Algorithm::JfrStrict | Algorithm::JfrPq))
    }
}

/// One algorithm on one instance.
#[derive(Debug, Clone)]
pub struct RunRecord {
    pub algorithm: Algorithm,
    pub check: Check,
    pub note: String,
    pub ops: u64,
    pub relaxations: u64,
    pub outer_iterations: u64,
    pub time_ns: u64,
    /// Present for strict-mode runs.
    pub invariants: Option<StrictInvariants>,
}

#[derive(Debug, Clone)]
pub struct InstanceOutcome {
    pub group: usize,
    pub instance: usize,
    pub seed: u64,
    pub graph_id: String,
    pub family: Family,
    pub n: usize,
    pub m: usize,
    pub runs: Vec<RunRecord>,
}

/// Aggregate over the instances of one group for one algorithm.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub graph: String,
    pub family: Family,
    pub n: usize,
    pub m: usize,
    pub algorithm: Algorithm,
    pub instances: usize,
    /// Median over instances of each instance's median time.
    pub time_ns: u64,
    pub ops_mean: f64,
    pub relaxations_mean: f64,
    pub outer_iterations_mean: f64,
    pub check: Check,
    pub note: String,
}

#[derive(Debug, Clone)]
pub struct ComparisonRow {
    pub graph: String,
    pub instance: usize,
    pub seed: u64,
    pub base: Algorithm,
    pub jfr: Algorithm,
    pub comparison: Comparison,
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub name: String,
    pub outcomes: Vec<InstanceOutcome>,
    pub rows: Vec<ResultRow>,
    pub comparisons: Vec<ComparisonRow>,
}

fn run_instance(spec: &SuiteSpec, group: usize, instance: usize) -> Result<InstanceOutcome> {
    let gs = &spec.groups[group];
    let seed = spec.seed.wrapping_add(instance as u64);
    let g = gs.build(seed, spec.source)?;
    let oracle = bellman_ford(&g, spec.source)?;
    let mut runs = Vec::with_capacity(spec.algorithms.len());
    for &algorithm in &spec.algorithms {
        let record = match measure(&g, spec.source, algorithm, spec.k, spec.timing_repetitions) {
            Ok(m) => {
                let s = &m.result.stats;
                let invariants = if algorithm == Algorithm::JfrStrict && !m.result.neg_cycle {
                    Some(jfr_core::strict_invariants(s, &g)?)
                } else {
                    None
                };
                RunRecord {
                    algorithm,
                    check: check_against(&m.result, &oracle),
                    note: String::new(),
                    ops: s.edge_inspections,
                    relaxations: s.successful_relaxations,
                    outer_iterations: s.outer_iterations,
                    time_ns: m.time_ns,
                    invariants,
                }
            }
            Err(AlgoError::NegativeWeightPresent) => RunRecord {
                algorithm,
                check: Check::Skipped,
                note: "negative edge weights".into(),
                ops: 0,
                relaxations: 0,
                outer_iterations: 0,
                time_ns: 0,
                invariants: None,
            },
            Err(e) => return Err(e.into()),
        };
        runs.push(record);
    }
    let plant = if gs.plant_cycle { "-cycle" } else { "" };
    Ok(InstanceOutcome {
        group,
        instance,
        seed,
        graph_id: format!("{}-n{}-m{}{plant}", gs.family, g.n(), g.m()),
        family: gs.family,
        n: g.n(),
        m: g.m(),
        runs,
    })
}

/// Runs every (group, instance) pair, in parallel on up to `threads`
/// workers (all cores when `None`). Results do not depend on the thread
/// count.
pub fn run_suite(spec: &SuiteSpec, threads: Option<usize>) -> Result<SuiteReport> {
    spec.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.unwrap_or(0))
        .build()
        .context("cannot start worker threads")?;
    let units: Vec<(usize, usize)> =
        (0..spec.groups.len()).flat_map(|g| (0..spec.repetitions).map(move |i| (g, i))).collect();
    let outcomes =
        pool.install(|| units.par_iter().map(|&(g, i)| run_instance(spec, g, i)).collect::<Result<Vec<_>>>())?;

    let rows = aggregate(spec, &outcomes);
    let comparisons = compare_outcomes(spec, &outcomes)?;
    Ok(SuiteReport { name: spec.name.clone(), outcomes, rows, comparisons })
}

fn mean(values: impl Iterator<Item = u64>) -> f64 {
    let (sum, count) = values.fold((0u128, 0u64), |(s, c), v| (s + v as u128, c + 1));
    if count == 0 {
        0.0
    } else {
        sum as f64 / count as f64
    }
}

fn aggregate(spec: &SuiteSpec, outcomes: &[InstanceOutcome]) -> Vec<ResultRow> {
    let mut rows = Vec::new();
    for group in 0..spec.groups.len() {
        let inst: Vec<&InstanceOutcome> = outcomes.iter().filter(|o| o.group == group).collect();
        let Some(first) = inst.first() else { continue };
        for (ai, &algorithm) in spec.algorithms.iter().enumerate() {
            let runs: Vec<&RunRecord> = inst.iter().map(|o| &o.runs[ai]).collect();
            let skipped: Vec<&&RunRecord> = runs.iter().filter(|r| r.check == Check::Skipped).collect();
            let row = if let Some(s) = skipped.first() {
                ResultRow {
                    graph: first.graph_id.clone(),
                    family: first.family,
                    n: first.n,
                    m: first.m,
                    algorithm,
                    instances: runs.len(),
                    time_ns: 0,
                    ops_mean: 0.0,
                    relaxations_mean: 0.0,
                    outer_iterations_mean: 0.0,
                    check: Check::Skipped,
                    note: s.note.clone(),
                }
            } else {
                let mut times: Vec<u64> = runs.iter().map(|r| r.time_ns).collect();
                let failed = runs.iter().filter(|r| r.check != Check::Pass).count();
                let broken = runs.iter().filter(|r| r.invariants.as_ref().is_some_and(|i| !i.all_hold())).count();
                let mut note = Vec::new();
                if failed > 0 {
                    note.push(format!("{failed} oracle mismatches"));
                }
                if broken > 0 {
                    note.push(format!("{broken} invariant violations"));
                }
                ResultRow {
                    graph: first.graph_id.clone(),
                    family: first.family,
                    n: first.n,
                    m: first.m,
                    algorithm,
                    instances: runs.len(),
                    time_ns: median(&mut times),
                    ops_mean: mean(runs.iter().map(|r| r.ops)),
                    relaxations_mean: mean(runs.iter().map(|r| r.relaxations)),
                    outer_iterations_mean: mean(runs.iter().map(|r| r.outer_iterations)),
                    check: if failed == 0 && broken == 0 { Check::Pass } else { Check::Fail },
                    note: note.join("; "),
                }
            };
            rows.push(row);
        }
    }
    rows.sort_by(|a, b| {
        (a.family.name(), a.n, a.m, &a.graph, a.algorithm).cmp(&(b.family.name(), b.n, b.m, &b.graph, b.algorithm))
    });
    rows
}

fn compare_outcomes(spec: &SuiteSpec, outcomes: &[InstanceOutcome]) -> Result<Vec<ComparisonRow>> {
    let Some(bi) = spec.algorithms.iter().position(|&a| a == spec.baseline) else {
        return Ok(Vec::new());
    };
    let mut out = Vec::new();
    for o in outcomes {
        let base = &o.runs[bi];
        if base.check == Check::Skipped {
            continue;
        }
        for jfr in spec.jfr_algorithms().filter(|&a| a != spec.baseline) {
            let ji = spec.algorithms.iter().position(|&a| a == jfr).expect("selected algorithm");
            let run = &o.runs[ji];
            if run.check == Check::Skipped {
                continue;
            }
            let comparison = Comparison::from_counts(base.ops, base.time_ns, run.ops, run.time_ns)?;
            out.push(ComparisonRow {
                graph: o.graph_id.clone(),
                instance: o.instance,
                seed: o.seed,
                base: spec.baseline,
                jfr,
                comparison,
            });
        }
    }
    out.sort_by(|a, b| (&a.graph, a.instance, a.jfr).cmp(&(&b.graph, b.instance, b.jfr)));
    Ok(out)
}

pub const RESULT_COLUMNS: &str =
    "graph,algorithm,time_ms,ops,check,family,n,m,instances,relaxations,outer_iterations,time_ns,note";

pub const COMPARISON_COLUMNS: &str = "graph,instance,seed,base,jfr,ops_base,ops_jfr,time_base_ns,time_jfr_ns,\
rho_ops,rho_tpr,nwr,predicted_speedup,observed_speedup";

impl SuiteReport {
    pub fn results_csv(&self) -> String {
        let mut out = format!("{SCHEMA_LINE}\n{RESULT_COLUMNS}\n");
        for r in &self.rows {
            writeln!(
                out,
                "{},{},{:.3},{:.3},{},{},{},{},{},{:.3},{:.3},{},{}",
                r.graph,
                r.algorithm,
                r.time_ns as f64 / 1e6,
                r.ops_mean,
                r.check,
                r.family,
                r.n,
                r.m,
                r.instances,
                r.relaxations_mean,
                r.outer_iterations_mean,
                r.time_ns,
                r.note
            )
            .unwrap();
        }
        out
    }

    pub fn comparisons_csv(&self) -> String {
        let mut out = format!("{SCHEMA_LINE}\n{COMPARISON_COLUMNS}\n");
        for c in &self.comparisons {
            let x = &c.comparison;
            writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{:.6},{:.6},{:.6},{},{}",
                c.graph,
                c.instance,
                c.seed,
                c.base,
                c.jfr,
                x.ops_base,
                x.ops_jfr,
                x.time_base_ns,
                x.time_jfr_ns,
                x.rho_ops,
                x.rho_tpr,
                x.nwr,
                x.predicted_speedup,
                x.observed_speedup
            )
            .unwrap();
        }
        out
    }

    pub fn all_checks_pass(&self) -> bool {
        self.rows.iter().all(|r| matches!(r.check, Check::Pass | Check::Skipped))
    }
}

/// Keeps the named columns of a suite CSV, for comparing re-runs.
pub fn project_columns(csv: &str, columns: &[&str]) -> Result<Vec<String>> {
    let mut lines = csv.lines().filter(|l| !l.starts_with('#'));
    let header: Vec<&str> = lines.next().context("empty CSV")?.split(',').collect();
    let idx: Vec<usize> = columns
        .iter()
        .map(|c| header.iter().position(|h| h == c).with_context(|| format!("no column `{c}`")))
        .collect::<Result<_>>()?;
    Ok(lines
        .map(|l| {
            let cells: Vec<&str> = l.split(',').collect();
            idx.iter().map(|&i| cells.get(i).copied().unwrap_or("")).collect::<Vec<_>>().join(",")
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_suite_parses() {
        let s = SuiteSpec::parse(DESK_SUITE).unwrap();
        assert_eq!(s.repetitions, 30);
        assert_eq!(s.groups.len(), 4);
        assert_eq!(s.groups[2].gen_spec(1).unwrap().n, 20 * 14 + 1);
    }

    #[test]
    fn rejects_bad_specs() {
        let base = "repetitions = 1\nalgorithms = [\"bf\"]\n[[groups]]\nfamily = \"sparse-random\"\nn = 5\nm = 5\n";
        assert!(SuiteSpec::parse(base).is_ok());
        assert!(SuiteSpec::parse(&base.replace("repetitions = 1", "repetitions = 0")).is_err());
        assert!(SuiteSpec::parse(&base.replace("[\"bf\"]", "[]")).is_err());
        assert!(SuiteSpec::parse(&base.replace("m = 5\n", "")).is_err());
        assert!(SuiteSpec::parse(&base.replace("\"bf\"", "\"astar\"")).is_err());
    }

    #[test]
    fn single_instance_means_are_the_run() {
        let text = "repetitions = 1\ntiming_repetitions = 1\nalgorithms = [\"slf\", \"jfr-pq\"]\n\
                    [[groups]]\nfamily = \"slf-killer\"\nn = 64\n";
        let spec = SuiteSpec::parse(text).unwrap();
        let rep = run_suite(&spec, Some(1)).unwrap();
        let g = spec.groups[0].build(1, 0).unwrap();
        let slf = jfr_core::spfa_slf(&g, 0).unwrap();
        let row = rep.rows.iter().find(|r| r.algorithm == Algorithm::SpfaSlf).unwrap();
        assert_eq!(row.ops_mean, slf.stats.edge_inspections as f64);
        assert_eq!(row.relaxations_mean, slf.stats.successful_relaxations as f64);
        assert_eq!(rep.comparisons.len(), 1);
    }

    #[test]
    fn dijkstra_skipped_on_negative_graphs() {
        let text = "repetitions = 2\ntiming_repetitions = 1\nalgorithms = [\"dijkstra\", \"bf\"]\n\
                    [[groups]]\nfamily = \"neg-dense\"\nn = 30\nm = 200\n";
        let rep = run_suite(&SuiteSpec::parse(text).unwrap(), Some(2)).unwrap();
        let row = rep.rows.iter().find(|r| r.algorithm == Algorithm::Dijkstra).unwrap();
        assert_eq!(row.check, Check::Skipped);
        assert_eq!(row.note, "negative edge weights");
        assert!(rep.results_csv().contains(",SKIPPED,"));
    }
}
