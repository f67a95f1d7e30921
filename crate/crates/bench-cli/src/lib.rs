//! Benchmark harness for the `jfr-core` solvers.
//!
//! Subcommands generate graphs, run one solver with instrumentation,
//! compare a baseline against a JFR mode, execute table suites, sweep
//! edge increments and verify result files. CSV outputs start with a
//! `#schema=1` line.

pub mod measure;
pub mod suite;
pub mod sweep;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, CommandFactory, Parser, Subcommand};
use jfr_core::{
    oracle_compare, read_result, read_text, write_result, write_text, Algorithm, Comparison, Family, GenSpec, Graph64,
    ResultDoc, SsspResult64, VerifyReport,
};
use serde::Serialize;

use measure::{measure, Check};
use suite::{SuiteSpec, COMPARISON_COLUMNS, DESK_SUITE, SCHEMA_LINE};
use sweep::{run_sweep, SweepBase, SweepSpec};

#[derive(Debug, Parser)]
#[command(name = "jfr-bench", version, about = "Shortest-path solver benchmarks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a graph in the text edge-list format.
    Gen(GenArgs),
    /// Run one solver and print a JSON result row.
    Run(RunArgs),
    /// Compare a baseline solver against a JFR solver; prints one CSV row.
    Compare(CompareArgs),
    /// Run a suite spec and print the aggregated result table.
    Suite(SuiteArgs),
    /// Report operation counts before and after random edge increments.
    SweepEdges(SweepArgs),
    /// Check a result file against the Bellman–Ford oracle.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct GenFlags {
    #[arg(long)]
    pub family: Family,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub blades: Option<usize>,
    #[arg(long)]
    pub blade_size: Option<usize>,
    #[arg(long)]
    pub weight_lo: Option<f64>,
    #[arg(long)]
    pub weight_hi: Option<f64>,
    #[arg(long)]
    pub neg_fraction: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

impl GenFlags {
    pub fn to_spec(&self) -> Result<GenSpec> {
        let group = suite::GroupSpec {
            family: self.family,
            n: self.n,
            m: self.m,
            blades: self.blades,
            blade_size: self.blade_size,
            weight_lo: self.weight_lo,
            weight_hi: self.weight_hi,
            neg_fraction: self.neg_fraction,
            plant_cycle: false,
        };
        group.gen_spec(self.seed).map_err(|e| {
            let usage = Cli::command().render_usage();
            anyhow!("{e}\n\n{usage}")
        })
    }
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[command(flatten)]
    pub flags: GenFlags,
    /// Output file; standard output when absent.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SolveFlags {
    #[arg(long, default_value_t = 0)]
    pub source: usize,
    /// Propagation depth of the JFR solvers.
    #[arg(long, default_value_t = 2)]
    pub k: u32,
    /// Timed runs; the median time is reported.
    #[arg(long, default_value_t = 1)]
    pub repetitions: usize,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    pub graph: PathBuf,
    #[arg(long)]
    pub algo: Algorithm,
    #[command(flatten)]
    pub solve: SolveFlags,
    /// Compare against the Bellman–Ford oracle.
    #[arg(long)]
    pub check: bool,
    /// Also write distances and parents in the result-file format.
    #[arg(long)]
    pub dist_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    pub graph: PathBuf,
    #[arg(long, default_value = "slf")]
    pub base: Algorithm,
    #[arg(long, default_value = "jfr-pq")]
    pub jfr: Algorithm,
    #[command(flatten)]
    pub solve: SolveFlags,
    /// Omit the schema and header lines.
    #[arg(long)]
    pub no_header: bool,
}

#[derive(Debug, Args)]
pub struct SuiteArgs {
    /// Suite spec in TOML; the bundled desk suite when absent.
    pub spec: Option<PathBuf>,
    /// Write the result table here instead of standard output.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    /// Write the per-instance comparison table here.
    #[arg(long)]
    pub comparisons: Option<PathBuf>,
    #[arg(long, env = "BENCH_THREADS")]
    pub threads: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Base graph file; otherwise graphs are generated from the flags.
    #[arg(long, conflicts_with = "family")]
    pub graph: Option<PathBuf>,
    #[arg(long)]
    pub family: Option<Family>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub neg_fraction: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub weight_lo: f64,
    #[arg(long, default_value_t = 100.0)]
    pub weight_hi: f64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Generated instances, seeds `seed..seed + seeds`.
    #[arg(long, default_value_t = 1)]
    pub seeds: usize,
    /// Increment sizes as fractions of m, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub fractions: Vec<f64>,
    #[arg(long, default_value = "jfr-pq")]
    pub algo: Algorithm,
    #[command(flatten)]
    pub solve: SolveFlags,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    #[arg(long, env = "BENCH_THREADS")]
    pub threads: Option<usize>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub graph: PathBuf,
    pub result: PathBuf,
    /// Source to verify against; the result file's source when absent.
    #[arg(long)]
    pub source: Option<usize>,
}

/// JSON row printed by `run`.
#[derive(Debug, Clone, Serialize)]
pub struct RunRow {
    pub graph: String,
    pub algorithm: Algorithm,
    pub n: usize,
    pub m: usize,
    pub source: usize,
    pub k: Option<u32>,
    pub repetitions: usize,
    pub time_ns: u64,
    pub edge_inspections: u64,
    pub successful_relaxations: u64,
    pub lmh_inspections: u64,
    pub queue_pushes: u64,
    pub stale_pops: u64,
    pub outer_iterations: u64,
    pub neg_cycle: bool,
    pub check: Check,
}

pub fn load_graph(path: &Path) -> Result<Graph64> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let doc = read_text(&text).with_context(|| format!("cannot parse {}", path.display()))?;
    Ok(Graph64::from_edge_list(&doc)?)
}

fn write_out(path: Option<&Path>, text: &str, out: &mut dyn Write) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => Ok(out.write_all(text.as_bytes())?),
    }
}

fn graph_name(path: &Path) -> String {
    path.file_name().map_or_else(|| path.display().to_string(), |f| f.to_string_lossy().into_owned())
}

fn check_repetitions(r: usize) -> Result<()> {
    if r == 0 {
        bail!("--repetitions must be at least 1");
    }
    Ok(())
}

/// Runs a parsed command line. Returns the process exit code.
pub fn execute(cli: Cli, out: &mut dyn Write) -> Result<u8> {
    match cli.command {
        Command::Gen(a) => cmd_gen(a, out),
        Command::Run(a) => cmd_run(a, out),
        Command::Compare(a) => cmd_compare(a, out),
        Command::Suite(a) => cmd_suite(a, out),
        Command::SweepEdges(a) => cmd_sweep(a, out),
        Command::Verify(a) => cmd_verify(a, out),
    }
}

fn cmd_gen(a: GenArgs, out: &mut dyn Write) -> Result<u8> {
    let spec = a.flags.to_spec()?;
    let g = jfr_core::generate(&spec)?.graph;
    let text = write_text(&g.to_edge_list());
    match &a.output {
        Some(p) => {
            fs::write(p, text).with_context(|| format!("cannot write {}", p.display()))?;
            writeln!(out, "n={} m={} seed={}", g.n(), g.m(), spec.seed)?;
        }
        None => {
            out.write_all(text.as_bytes())?;
            eprintln!("n={} m={} seed={}", g.n(), g.m(), spec.seed);
        }
    }
    Ok(0)
}

fn cmd_run(a: RunArgs, out: &mut dyn Write) -> Result<u8> {
    check_repetitions(a.solve.repetitions)?;
    let g = load_graph(&a.graph)?;
    let s = &a.solve;
    let m = measure(&g, s.source, a.algo, s.k, s.repetitions)?;
    let check = if a.check {
        let rep = oracle_compare(&g, s.source, &m.result)?;
        if rep.all_pass() {
            Check::Pass
        } else {
            Check::Fail
        }
    } else {
        Check::Unchecked
    };
    if let Some(p) = &a.dist_out {
        fs::write(p, write_result(&to_doc(&m.result)))?;
    }
    let st = &m.result.stats;
    let row = RunRow {
        graph: graph_name(&a.graph),
        algorithm: a.algo,
        n: g.n(),
        m: g.m(),
        source: s.source,
        k: st.depth,
        repetitions: s.repetitions,
        time_ns: m.time_ns,
        edge_inspections: st.edge_inspections,
        successful_relaxations: st.successful_relaxations,
        lmh_inspections: st.lmh_inspections,
        queue_pushes: st.queue_pushes,
        stale_pops: st.stale_pops,
        outer_iterations: st.outer_iterations,
        neg_cycle: m.result.neg_cycle,
        check,
    };
    writeln!(out, "{}", serde_json::to_string(&row)?)?;
    Ok(if check == Check::Fail { 1 } else { 0 })
}

fn to_doc(r: &SsspResult64) -> ResultDoc {
    ResultDoc { source: r.source, neg_cycle: r.neg_cycle, dist: r.dist.clone(), parent: r.parent.clone() }
}

fn cmd_compare(a: CompareArgs, out: &mut dyn Write) -> Result<u8> {
    check_repetitions(a.solve.repetitions)?;
    let g = load_graph(&a.graph)?;
    let s = &a.solve;
    let base = measure(&g, s.source, a.base, s.k, s.repetitions)?;
    let jfr = measure(&g, s.source, a.jfr, s.k, s.repetitions)?;
    let c = Comparison::from_counts(
        base.result.stats.edge_inspections,
        base.time_ns,
        jfr.result.stats.edge_inspections,
        jfr.time_ns,
    )?;
    if !a.no_header {
        writeln!(out, "{SCHEMA_LINE}\n{COMPARISON_COLUMNS}")?;
    }
    writeln!(
        out,
        "{},0,,{},{},{},{},{},{},{:.6},{:.6},{:.6},{},{}",
        graph_name(&a.graph),
        a.base,
        a.jfr,
        c.ops_base,
        c.ops_jfr,
        c.time_base_ns,
        c.time_jfr_ns,
        c.rho_ops,
        c.rho_tpr,
        c.nwr,
        c.predicted_speedup,
        c.observed_speedup
    )?;
    Ok(0)
}

fn cmd_suite(a: SuiteArgs, out: &mut dyn Write) -> Result<u8> {
    let text = match &a.spec {
        Some(p) => fs::read_to_string(p).with_context(|| format!("cannot read {}", p.display()))?,
        None => DESK_SUITE.to_owned(),
    };
    let spec = SuiteSpec::parse(&text)?;
    let report = suite::run_suite(&spec, a.threads)?;
    write_out(a.output.as_deref(), &report.results_csv(), out)?;
    if let Some(p) = &a.comparisons {
        fs::write(p, report.comparisons_csv()).with_context(|| format!("cannot write {}", p.display()))?;
    }
    Ok(if report.all_checks_pass() { 0 } else { 1 })
}

fn cmd_sweep(a: SweepArgs, out: &mut dyn Write) -> Result<u8> {
    check_repetitions(a.solve.repetitions)?;
    let base = match (&a.graph, a.family) {
        (Some(p), _) => SweepBase::Fixed { graph: load_graph(p)?, weight_lo: a.weight_lo, weight_hi: a.weight_hi },
        (None, Some(family)) => {
            let flags = GenFlags {
                family,
                n: a.n,
                m: a.m,
                blades: None,
                blade_size: None,
                weight_lo: Some(a.weight_lo),
                weight_hi: Some(a.weight_hi),
                neg_fraction: a.neg_fraction,
                seed: a.seed,
            };
            SweepBase::Generated { spec: flags.to_spec()?, seeds: a.seeds }
        }
        (None, None) => bail!("invalid generator spec: give --graph or --family"),
    };
    let spec = SweepSpec {
        base,
        fractions: a.fractions,
        algorithm: a.algo,
        k: a.solve.k,
        source: a.solve.source,
        timing_repetitions: a.solve.repetitions,
    };
    let report = run_sweep(&spec, a.threads)?;
    write_out(a.output.as_deref(), &report.csv(), out)?;
    Ok(0)
}

/// JSON document printed by `verify`.
#[derive(Debug, Serialize)]
pub struct VerifyOutput {
    pub source: usize,
    pub pass: bool,
    #[serde(flatten)]
    pub report: VerifyReport,
}

fn cmd_verify(a: VerifyArgs, out: &mut dyn Write) -> Result<u8> {
    let g = load_graph(&a.graph)?;
    let text = fs::read_to_string(&a.result).with_context(|| format!("cannot read {}", a.result.display()))?;
    let doc: ResultDoc = read_result(&text).with_context(|| format!("cannot parse {}", a.result.display()))?;
    let source = a.source.unwrap_or(doc.source);
    g.check_vertex(source)?;
    let candidate = SsspResult64 {
        source: doc.source,
        dist: doc.dist,
        parent: doc.parent,
        neg_cycle: doc.neg_cycle,
        cycle_hint: None,
        stats: Default::default(),
    };
    let mut report = oracle_compare(&g, source, &candidate)?;
    if candidate.source != source {
        report.parent_ok = false;
    }
    let pass = report.all_pass();
    writeln!(out, "{}", serde_json::to_string_pretty(&VerifyOutput { source, pass, report })?)?;
    Ok(if pass { 0 } else { 1 })
}
