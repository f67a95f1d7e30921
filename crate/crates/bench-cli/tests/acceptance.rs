//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use jfr_bench::measure::Check;
use jfr_bench::suite::{project_columns, run_suite, SuiteReport, SuiteSpec, DESK_SUITE, RESULT_COLUMNS};
use jfr_bench::sweep::{run_sweep, SweepBase, SweepSpec};
use jfr_core::{
    bellman_ford, bound_check, cycle_weight, detect_negative_cycle, generate, jfr_pq, jfr_strict, plant_negative_cycle,
    spfa_fifo, spfa_slf, strict_invariants, Algorithm, GenSpec, Graph64, JfrConfig, SsspResult64,
};
use rayon::prelude::*;

const KS: [u32; 4] = [1, 2, 4, 8];

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Self { pass, detail: detail.into() }
    }
}

/// Small instance `i` of the mixed corpus.
fn mixed_instance(i: u64) -> Graph64 {
    let seed = 10_000 + i;
    let n = 20 + (i as usize * 37) % 181;
    let spec = match i % 10 {
        0..=5 => GenSpec::neg_dense(n, n * (3 + (i as usize % 6)), 0.1 + 0.1 * (i % 5) as f64, seed),
        6 => GenSpec::neg_dense(n, n * 2, 0.5, seed).with_weights(0.0, 8.0),
        7 => GenSpec::sparse_random(n, n * 4, seed),
        8 => GenSpec::windmill(2 + (i as usize % 5), 3 + (i as usize % 6), seed),
        _ => GenSpec::slf_killer(n, seed),
    };
    generate(&spec).expect("generator spec is valid").graph
}

fn same(a: &SsspResult64, b: &SsspResult64) -> bool {
    !a.neg_cycle && !b.neg_cycle && a.dist == b.dist
}

#[derive(Default)]
struct StrictTally {
    runs: usize,
    decomposition_failures: usize,
    activation_failures: usize,
    bound_failures: usize,
    lmh_calls: usize,
    lmh_violations: usize,
}

impl StrictTally {
    fn merge(mut self, o: Self) -> Self {
        self.runs += o.runs;
        self.decomposition_failures += o.decomposition_failures;
        self.activation_failures += o.activation_failures;
        self.bound_failures += o.bound_failures;
        self.lmh_calls += o.lmh_calls;
        self.lmh_violations += o.lmh_violations;
        self
    }
}

#[derive(Default)]
struct OracleSweep {
    instances: usize,
    runs: usize,
    mismatches: Vec<String>,
    strict: StrictTally,
}

fn oracle_sweep(count: u64) -> OracleSweep {
    let per: Vec<OracleSweep> = (0..count)
        .into_par_iter()
        .map(|i| {
            let g = mixed_instance(i);
            let oracle = bellman_ford(&g, 0).unwrap();
            let mut out = OracleSweep { instances: 1, ..Default::default() };
            assert!(!oracle.neg_cycle, "instance {i} has a negative cycle");

            let mut check = |name: String, r: SsspResult64| {
                out.runs += 1;
                if !same(&r, &oracle) {
                    out.mismatches.push(format!("instance {i} {name}"));
                }
            };
            check("spfa".into(), spfa_fifo(&g, 0).unwrap());
            check("slf".into(), spfa_slf(&g, 0).unwrap());
            check("jfr-pq".into(), jfr_pq(&g, 0, &JfrConfig::pq()).unwrap());
            for k in KS {
                let r = jfr_strict(&g, 0, k).unwrap();
                let inv = strict_invariants(&r.stats, &g).unwrap();
                let bound = bound_check(&r.stats, &g, k).unwrap();
                let t = &mut out.strict;
                t.runs += 1;
                t.decomposition_failures += usize::from(!inv.decomposition_exact);
                t.activation_failures += usize::from(!inv.activation_violations.is_empty());
                t.bound_failures += usize::from(!bound.holds);
                t.lmh_calls += r.stats.lmh_calls.len();
                t.lmh_violations += inv.lmh_cost_violations.len();
                check(format!("jfr-strict k={k}"), r);
            }
            out
        })
        .collect();
    per.into_iter().fold(OracleSweep::default(), |mut acc, o| {
        acc.instances += o.instances;
        acc.runs += o.runs;
        acc.mismatches.extend(o.mismatches);
        acc.strict = acc.strict.merge(o.strict);
        acc
    })
}

fn planted_cycles(count: u64) -> Outcome {
    let misses: Vec<String> = (0..count)
        .into_par_iter()
        .flat_map_iter(|i| {
            let base = mixed_instance(3 * i + 1);
            let g = plant_negative_cycle(&base, 0, 500 + i).unwrap();
            let mut runs: Vec<(String, SsspResult64)> = vec![
                ("bf".into(), bellman_ford(&g, 0).unwrap()),
                ("spfa".into(), spfa_fifo(&g, 0).unwrap()),
                ("slf".into(), spfa_slf(&g, 0).unwrap()),
                ("jfr-pq".into(), jfr_pq(&g, 0, &JfrConfig::pq()).unwrap()),
            ];
            runs.extend(KS.map(|k| (format!("jfr-strict k={k}"), jfr_strict(&g, 0, k).unwrap())));
            runs.into_iter()
                .filter_map(|(name, r)| {
                    if !r.neg_cycle {
                        return Some(format!("instance {i} {name}: no cycle reported"));
                    }
                    match detect_negative_cycle(&r, &g) {
                        Ok(Some(c)) if cycle_weight(&g, &c).is_some_and(|w| w < 0.0) => None,
                        other => Some(format!("instance {i} {name}: extraction gave {other:?}")),
                    }
                })
                .collect::<Vec<_>>()
        })
        .collect();
    let runs = count * 8;
    Outcome::new(misses.is_empty(), format!("{runs} runs on {count} instances, misses={}", misses.len()))
}

fn adversarial(seeds: u64) -> Outcome {
    let (slf, jfr): (Vec<u64>, Vec<u64>) = (0..seeds)
        .into_par_iter()
        .map(|s| {
            let g = generate(&GenSpec::slf_killer(2000, s + 1)).unwrap().graph;
            let a = spfa_slf(&g, 0).unwrap();
            let b = jfr_pq(&g, 0, &JfrConfig::pq()).unwrap();
            assert!(same(&a, &b));
            (a.stats.edge_inspections, b.stats.edge_inspections)
        })
        .unzip();
    let mean = |v: &[u64]| v.iter().sum::<u64>() as f64 / v.len() as f64;
    let (ms, mj) = (mean(&slf), mean(&jfr));
    let ratio = ms / mj;
    Outcome::new(
        ratio >= 10.0,
        format!("n=2000 seeds={seeds} mean slf ops={ms:.1} mean jfr-pq ops={mj:.1} ratio={ratio:.2}"),
    )
}

fn metric_identities(report: &SuiteReport) -> Outcome {
    let mut worst = 0.0f64;
    let mut disagree = 0;
    for c in &report.comparisons {
        let x = &c.comparison;
        worst = worst.max((x.rho_ops * x.nwr - 1.0).abs());
        disagree += usize::from(x.predicted_speedup != x.observed_speedup);
    }
    Outcome::new(
        !report.comparisons.is_empty() && worst <= 1e-12 && disagree == 0,
        format!(
            "{} comparisons, max |rho_ops*nwr - 1|={worst:.3e}, predicted!=observed: {disagree}",
            report.comparisons.len()
        ),
    )
}

fn edge_sweep(seeds: usize) -> Outcome {
    let spec = SweepSpec {
        base: SweepBase::Generated { spec: GenSpec::neg_dense(500, 30_000, 0.3, 1), seeds },
        fractions: vec![0.05, 0.10, 0.15],
        algorithm: Algorithm::JfrPq,
        k: JfrConfig::DEFAULT_PQ_DEPTH,
        source: 0,
        timing_repetitions: 1,
    };
    match run_sweep(&spec, None) {
        Err(e) => Outcome::new(false, format!("sweep failed: {e:#}")),
        Ok(rep) => {
            write_artifact("sweep_edges.csv", &rep.csv());
            let checks_ok = rep.rows.iter().all(|r| r.check == Check::Pass);
            let dist: Vec<String> = rep
                .summaries
                .iter()
                .map(|s| {
                    let trend = if 2 * s.negative > s.runs { "majority negative" } else { "not majority negative" };
                    format!(
                        "f={}: dE={} dOps={} neg={} zero={} pos={} ({trend})",
                        s.fraction, s.delta_edges_total, s.delta_ops_total, s.negative, s.zero, s.positive
                    )
                })
                .collect();
            Outcome::new(checks_ok && rep.rows.len() == seeds * 3, dist.join("; "))
        }
    }
}

fn determinism(first: &SuiteReport, second: &SuiteReport) -> Outcome {
    let cols = ["graph", "algorithm", "ops", "relaxations", "outer_iterations", "check"];
    let a = project_columns(&first.results_csv(), &cols).unwrap();
    let b = project_columns(&second.results_csv(), &cols).unwrap();
    let ca = project_columns(&first.comparisons_csv(), &["graph", "instance", "seed", "ops_base", "ops_jfr"]).unwrap();
    let cb = project_columns(&second.comparisons_csv(), &["graph", "instance", "seed", "ops_base", "ops_jfr"]).unwrap();
    let same_rows = a == b && ca == cb;
    Outcome::new(
        same_rows && !a.is_empty(),
        format!("{} result rows and {} comparison rows, ops columns identical: {same_rows}", a.len(), ca.len()),
    )
}

fn table_shape(report: &SuiteReport) -> Outcome {
    let csv = report.results_csv();
    let header = csv.lines().find(|l| !l.starts_with('#')).unwrap_or("");
    let shape_ok = header == RESULT_COLUMNS && header.starts_with("graph,algorithm,time_ms,ops,check");
    let bad: Vec<String> = report
        .rows
        .iter()
        .filter(|r| {
            let skipped_ok =
                r.check == Check::Skipped && r.algorithm == Algorithm::Dijkstra && r.note == "negative edge weights";
            r.check != Check::Pass && !skipped_ok
        })
        .map(|r| format!("{} {}={}", r.graph, r.algorithm, r.check))
        .collect();
    let skipped = report.rows.iter().filter(|r| r.check == Check::Skipped).count();
    let mean_ops = |family: &str, algo: Algorithm| {
        report.rows.iter().find(|r| r.graph.starts_with(family) && r.algorithm == algo).map(|r| r.ops_mean)
    };
    let windmill = match (mean_ops("windmill", Algorithm::SpfaSlf), mean_ops("windmill", Algorithm::JfrPq)) {
        (Some(b), Some(j)) => format!("{:.3}", b / j),
        _ => "n/a".into(),
    };
    Outcome::new(
        shape_ok && bad.is_empty(),
        format!(
            "{} rows, {skipped} skipped (dijkstra on negative weights), non-pass={bad:?}, windmill rho_ops={windmill}",
            report.rows.len()
        ),
    )
}

fn write_artifact(name: &str, body: &str) {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("acceptance");
    if fs::create_dir_all(&dir).is_ok() {
        let _ = fs::write(dir.join(name), body);
    }
}

fn main() -> ExitCode {
    let mut results: Vec<(u32, &str, Outcome)> = Vec::new();

    let t = Instant::now();
    let sweep = oracle_sweep(2000);
    let secs = t.elapsed().as_secs_f64();
    results.push((
        1,
        "oracle equivalence",
        Outcome::new(
            sweep.instances >= 2000 && sweep.mismatches.is_empty() && secs < 120.0,
            format!(
                "{} instances, {} solver runs, mismatches={} {:?}, {secs:.1}s",
                sweep.instances,
                sweep.runs,
                sweep.mismatches.len(),
                sweep.mismatches.iter().take(3).collect::<Vec<_>>()
            ),
        ),
    ));

    results.push((2, "negative-cycle detection", planted_cycles(200)));

    let t = Instant::now();
    let mut adv = adversarial(30);
    let secs = t.elapsed().as_secs_f64();
    adv.pass &= secs < 60.0;
    adv.detail.push_str(&format!(", {secs:.1}s"));
    results.push((3, "adversarial suppression", adv));

    let s = &sweep.strict;
    results.push((
        4,
        "strict-mode invariants",
        Outcome::new(
            s.runs > 0 && s.decomposition_failures == 0 && s.activation_failures == 0 && s.bound_failures == 0,
            format!(
                "{} runs, decomposition failures={}, activation-bound failures={}, bound_check failures={}",
                s.runs, s.decomposition_failures, s.activation_failures, s.bound_failures
            ),
        ),
    ));

    let spec = SuiteSpec::parse(DESK_SUITE).expect("bundled suite parses");
    let t = Instant::now();
    let first = run_suite(&spec, None).expect("desk suite runs");
    let suite_secs = t.elapsed().as_secs_f64();
    write_artifact("desk_results.csv", &first.results_csv());
    write_artifact("desk_comparisons.csv", &first.comparisons_csv());

    results.push((5, "metric identities", metric_identities(&first)));

    results.push((
        6,
        "propagation cost bound",
        Outcome::new(s.lmh_violations == 0, format!("{} calls, violations={}", s.lmh_calls, s.lmh_violations)),
    ));

    results.push((7, "edge-increment sweep", edge_sweep(30)));

    let second = run_suite(&spec, Some(2)).expect("desk suite re-runs");
    results.push((8, "determinism", determinism(&first, &second)));

    let mut shape = table_shape(&first);
    shape.detail.push_str(&format!(", suite {suite_secs:.1}s"));
    results.push((9, "table shape", shape));

    let mut failed = 0;
    for (id, name, o) in &results {
        let tag = if o.pass { "PASS" } else { "FAIL" };
        failed += usize::from(!o.pass);
        println!("[{tag}] {id} {name}: {}", o.detail);
    }
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
