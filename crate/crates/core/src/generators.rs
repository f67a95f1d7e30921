//! Seeded benchmark graph families.
//!
//! Every generator is a pure function of its [`GenSpec`]: the same spec,
//! seed included, yields the same edge list in the same order. Randomness
//! comes from ChaCha8 seeded with the 64-bit seed. Weights are drawn as
//! integer multiples of [`WEIGHT_QUANTUM`], so they print with at most six
//! decimals and every path sum is exact.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{EdgeListDoc, Graph, GraphError, VertexId};
use crate::weight::WEIGHT_QUANTUM;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GenError {
    #[error("invalid generator spec: {0}")]
    SpecInvalid(String),
    #[error("a negative-cycle-safe increment needs the potentials the graph was built with")]
    PotentialUnavailable,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn invalid<T>(msg: impl Into<String>) -> Result<T, GenError> {
    Err(GenError::SpecInvalid(msg.into()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    SparseRandom,
    NegDense,
    Windmill,
    SlfKiller,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::SparseRandom, Family::NegDense, Family::Windmill, Family::SlfKiller];

    pub fn name(self) -> &'static str {
        match self {
            Family::SparseRandom => "sparse-random",
            Family::NegDense => "neg-dense",
            Family::Windmill => "windmill",
            Family::SlfKiller => "slf-killer",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = GenError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| GenError::SpecInvalid(format!("unknown family `{s}`")))
    }
}

/// Parameters of one generated instance.
///
/// `m` and `neg_fraction` apply to the random families, `blades` and
/// `blade_size` to the windmill, whose `n` is derived from them. The
/// SLF-killer fixes its own weights and ignores the weight range.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenSpec {
    pub family: Family,
    pub n: usize,
    pub m: usize,
    pub weight_lo: f64,
    pub weight_hi: f64,
    pub neg_fraction: f64,
    pub seed: u64,
    pub blades: usize,
    pub blade_size: usize,
}

impl GenSpec {
    fn base(family: Family, n: usize, seed: u64) -> Self {
        Self { family, n, m: 0, weight_lo: 1.0, weight_hi: 100.0, neg_fraction: 0.0, seed, blades: 0, blade_size: 0 }
    }

    pub fn sparse_random(n: usize, m: usize, seed: u64) -> Self {
        Self { m, ..Self::base(Family::SparseRandom, n, seed) }
    }

    pub fn neg_dense(n: usize, m: usize, neg_fraction: f64, seed: u64) -> Self {
        Self { m, neg_fraction, ..Self::base(Family::NegDense, n, seed) }
    }

    pub fn windmill(blades: usize, blade_size: usize, seed: u64) -> Self {
        let n = windmill_order(blades, blade_size);
        Self { blades, blade_size, ..Self::base(Family::Windmill, n, seed) }
    }

    pub fn slf_killer(n: usize, seed: u64) -> Self {
        Self::base(Family::SlfKiller, n, seed)
    }

    pub fn with_weights(self, weight_lo: f64, weight_hi: f64) -> Self {
        Self { weight_lo, weight_hi, ..self }
    }

    pub fn with_seed(self, seed: u64) -> Self {
        Self { seed, ..self }
    }
}

fn windmill_order(blades: usize, blade_size: usize) -> usize {
    blades.saturating_mul(blade_size.saturating_sub(1)).saturating_add(1)
}

/// Hidden vertex potentials of a `neg-dense` graph, needed to add further
/// edges without creating a negative cycle.
#[derive(Debug, Clone, PartialEq)]
pub struct Potentials(Vec<i64>);

impl Potentials {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, v: VertexId) -> f64 {
        units_to_weight(self.0[v])
    }
}

/// A generated graph together with the potentials it was built from, if any.
#[derive(Debug, Clone, PartialEq)]
pub struct Generated {
    pub graph: Graph,
    pub potentials: Option<Potentials>,
}

#[inline]
fn units_to_weight(u: i64) -> f64 {
    u as f64 * WEIGHT_QUANTUM
}

/// Integer unit range covered by `[lo, hi]`.
fn unit_range(lo: f64, hi: f64) -> Result<(i64, i64), GenError> {
    if !(lo.is_finite() && hi.is_finite()) || lo > hi {
        return invalid(format!("weight range [{lo}, {hi}] is not a finite interval"));
    }
    let bound = (1u64 << 40) as f64;
    if lo.abs() > bound || hi.abs() > bound {
        return invalid("weights must stay below 2^40 in magnitude");
    }
    let lo_u = (lo / WEIGHT_QUANTUM).ceil() as i64;
    let hi_u = (hi / WEIGHT_QUANTUM).floor() as i64;
    if lo_u > hi_u {
        return invalid(format!("weight range [{lo}, {hi}] contains no multiple of {WEIGHT_QUANTUM}"));
    }
    Ok((lo_u, hi_u))
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn check_order(n: usize) -> Result<(), GenError> {
    if n == 0 {
        return invalid("n must be at least 1");
    }
    if n > u32::MAX as usize {
        return invalid("n must fit in 32 bits");
    }
    Ok(())
}

fn check_family(spec: &GenSpec, family: Family) -> Result<(), GenError> {
    if spec.family != family {
        return invalid(format!("spec is for family {}, not {family}", spec.family));
    }
    Ok(())
}

fn build(doc: EdgeListDoc) -> Result<Graph, GenError> {
    Ok(Graph::from_edge_list(&doc)?)
}

/// Dispatches on `spec.family`.
pub fn generate(spec: &GenSpec) -> Result<Generated, GenError> {
    match spec.family {
        Family::SparseRandom => Ok(Generated { graph: gen_sparse_random(spec)?, potentials: None }),
        Family::NegDense => {
            let (graph, p) = gen_neg_dense_with_potentials(spec)?;
            Ok(Generated { graph, potentials: Some(p) })
        }
        Family::Windmill => {
            if spec.n != windmill_order(spec.blades, spec.blade_size) {
                return invalid("windmill n must equal blades * (blade_size - 1) + 1");
            }
            let graph = windmill_doc(spec.blades, spec.blade_size, spec.weight_lo, spec.weight_hi, spec.seed)
                .and_then(build)?;
            Ok(Generated { graph, potentials: None })
        }
        Family::SlfKiller => Ok(Generated { graph: gen_slf_killer(spec.n, spec.seed)?, potentials: None }),
    }
}

/// `m` edges with independent uniform endpoints and uniform weights in
/// `[weight_lo, weight_hi]`.
pub fn gen_sparse_random(spec: &GenSpec) -> Result<Graph, GenError> {
    check_family(spec, Family::SparseRandom)?;
    check_order(spec.n)?;
    if spec.weight_lo < 0.0 {
        return invalid("sparse-random weights must be non-negative");
    }
    let (lo, hi) = unit_range(spec.weight_lo, spec.weight_hi)?;
    let mut r = rng(spec.seed);
    let n = spec.n;
    let mut doc = EdgeListDoc::new(n);
    doc.edges.reserve(spec.m);
    for _ in 0..spec.m {
        let u = r.gen_range(0..n);
        let v = r.gen_range(0..n);
        doc.edges.push((u, v, units_to_weight(r.gen_range(lo..=hi))));
    }
    build(doc)
}

pub fn gen_neg_dense(spec: &GenSpec) -> Result<Graph, GenError> {
    gen_neg_dense_with_potentials(spec).map(|(g, _)| g)
}

/// Attempts at finding an endpoint pair that admits a negative weight
/// before settling for a non-negative edge.
const NEGATIVE_ATTEMPTS: usize = 64;

/// Draws one potential-shifted edge: `w = w0 + p(u) - p(v)` with
/// `w0` in `[lo, hi]` units, negative with probability `neg_fraction`.
fn shifted_edge(r: &mut ChaCha8Rng, p: &[i64], lo: i64, hi: i64, neg_fraction: f64) -> (VertexId, VertexId, f64) {
    let n = p.len();
    if neg_fraction > 0.0 && r.gen_bool(neg_fraction) {
        for _ in 0..NEGATIVE_ATTEMPTS {
            let (a, b) = (r.gen_range(0..n), r.gen_range(0..n));
            // orient uphill in potential so the shift is negative
            let (u, v) = if p[a] <= p[b] { (a, b) } else { (b, a) };
            let gap = p[v] - p[u];
            if gap > lo {
                let w0 = r.gen_range(lo..=hi.min(gap - 1));
                return (u, v, units_to_weight(w0 + p[u] - p[v]));
            }
        }
    }
    let (u, v) = (r.gen_range(0..n), r.gen_range(0..n));
    let gap = p[v] - p[u];
    let start = lo.max(gap);
    let w0 = r.gen_range(start..=start + (hi - lo));
    (u, v, units_to_weight(w0 + p[u] - p[v]))
}

/// Dense graph with roughly `neg_fraction` negative edges and no negative
/// cycle. Every weight is `w0 + p(u) - p(v)` for hidden potentials `p` and
/// `w0 >= weight_lo >= 0`, so each cycle weighs `sum(w0) >= 0`.
pub fn gen_neg_dense_with_potentials(spec: &GenSpec) -> Result<(Graph, Potentials), GenError> {
    check_family(spec, Family::NegDense)?;
    check_order(spec.n)?;
    if !(0.0..=1.0).contains(&spec.neg_fraction) {
        return invalid("neg_fraction must lie in [0, 1]");
    }
    if spec.weight_lo < 0.0 {
        return invalid("neg-dense base weights must be non-negative");
    }
    let (lo, hi) = unit_range(spec.weight_lo, spec.weight_hi)?;
    let mut r = rng(spec.seed);
    let n = spec.n;
    let p: Vec<i64> = if spec.neg_fraction == 0.0 {
        vec![0; n]
    } else {
        let span = (2 * hi).max(64);
        (0..n).map(|_| r.gen_range(0..=span)).collect()
    };
    let mut doc = EdgeListDoc::new(n);
    doc.edges.reserve(spec.m);
    for _ in 0..spec.m {
        doc.edges.push(shifted_edge(&mut r, &p, lo, hi, spec.neg_fraction));
    }
    Ok((build(doc)?, Potentials(p)))
}

/// `blades` complete bidirected graphs on `blade_size` vertices sharing
/// hub vertex 0, with uniform positive weights.
pub fn gen_windmill(blades: usize, blade_size: usize, seed: u64) -> Result<Graph, GenError> {
    let spec = GenSpec::windmill(blades, blade_size, seed);
    windmill_doc(blades, blade_size, spec.weight_lo, spec.weight_hi, seed).and_then(build)
}

fn windmill_doc(blades: usize, blade_size: usize, lo: f64, hi: f64, seed: u64) -> Result<EdgeListDoc, GenError> {
    if blades < 1 || blade_size < 2 {
        return invalid("windmill needs blades >= 1 and blade_size >= 2");
    }
    if lo <= 0.0 {
        return invalid("windmill weights must be positive");
    }
    let (lo, hi) = unit_range(lo, hi)?;
    let n = windmill_order(blades, blade_size);
    check_order(n)?;
    let mut r = rng(seed);
    let mut doc = EdgeListDoc::new(n);
    let mut members = Vec::with_capacity(blade_size);
    for b in 0..blades {
        members.clear();
        members.push(0);
        members.extend((0..blade_size - 1).map(|i| 1 + b * (blade_size - 1) + i));
        for &x in &members {
            for &y in &members {
                if x != y {
                    doc.edges.push((x, y, units_to_weight(r.gen_range(lo..=hi))));
                }
            }
        }
    }
    Ok(doc)
}

/// Adversarial instance for the Small Label First rule.
///
/// Vertex 0 is the source and vertex 1 a zero-weight sink whose edge is
/// listed first. Vertices `2..n` form a chain `u_0 → … → u_{L-1}` with
/// unit edges and shortcuts `u_i → u_{i+j}` for `2 <= j <= log2 n`
/// weighing slightly more than `j`. The source reaches every `u_i`
/// directly, with weights near `1000 + 3i` listed from `u_{L-1}` down to
/// `u_0`, so each later source edge offers a smaller label that the deque
/// front then cascades down the whole chain.
pub fn gen_slf_killer(n: usize, seed: u64) -> Result<Graph, GenError> {
    if n < 8 {
        return invalid("slf-killer needs n >= 8");
    }
    check_order(n)?;
    let mut r = rng(seed);
    let len = n - 2;
    let chain = |i: usize| 2 + i;
    let unit = (1.0 / WEIGHT_QUANTUM) as i64;
    let reach = n.ilog2() as usize;

    let mut doc = EdgeListDoc::new(n);
    doc.edges.push((0, 1, 0.0));
    let source: Vec<i64> = (0..len).map(|i| (1000 + 3 * i as i64) * unit + r.gen_range(0..unit / 2)).collect();
    for i in (0..len).rev() {
        doc.edges.push((0, chain(i), units_to_weight(source[i])));
    }
    for i in 0..len - 1 {
        doc.edges.push((chain(i), chain(i + 1), 1.0));
        for j in 2..=reach {
            if i + j < len {
                let w = j as i64 * unit + r.gen_range(unit / 10 + 1..=unit);
                doc.edges.push((chain(i), chain(i + j), units_to_weight(w)));
            }
        }
    }
    build(doc)
}

/// Parameters of a random edge increment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeIncrement {
    /// New edges as a fraction of the current edge count, rounded up.
    pub fraction: f64,
    pub weight_lo: f64,
    pub weight_hi: f64,
    /// Share of new edges drawn negative; needs potentials.
    pub neg_fraction: f64,
    pub seed: u64,
}

impl EdgeIncrement {
    pub fn new(fraction: f64, seed: u64) -> Self {
        Self { fraction, weight_lo: 1.0, weight_hi: 100.0, neg_fraction: 0.0, seed }
    }

    /// Number of edges the increment adds to a graph with `m` edges.
    pub fn added(&self, m: usize) -> usize {
        (self.fraction * m as f64).ceil() as usize
    }
}

/// Returns `g` plus `ceil(fraction * m)` random edges, the original edges
/// kept verbatim and first.
///
/// With `potentials` the new edges follow the same shift, so a graph free
/// of negative cycles stays free of them. Without potentials only
/// non-negative edges can be added, and only to a graph without negative
/// edges.
pub fn add_edges(g: &Graph, inc: &EdgeIncrement, potentials: Option<&Potentials>) -> Result<Graph, GenError> {
    if !(inc.fraction > 0.0 && inc.fraction <= 1.0) {
        return invalid("fraction must lie in (0, 1]");
    }
    let extra = inc.added(g.m());
    if extra == 0 {
        return invalid("fraction * m must be at least 1");
    }
    if !(0.0..=1.0).contains(&inc.neg_fraction) {
        return invalid("neg_fraction must lie in [0, 1]");
    }
    if inc.weight_lo < 0.0 {
        return invalid("increment base weights must be non-negative");
    }
    let (lo, hi) = unit_range(inc.weight_lo, inc.weight_hi)?;
    let mut doc = g.to_edge_list();
    let zero;
    let p = match potentials {
        Some(p) if p.len() == g.n() => &p.0,
        Some(_) => return invalid("potentials do not match the graph"),
        None if inc.neg_fraction > 0.0 || g.has_negative_weight() => return Err(GenError::PotentialUnavailable),
        None => {
            zero = vec![0; g.n()];
            &zero
        }
    };
    let mut r = rng(inc.seed);
    doc.edges.reserve(extra);
    for _ in 0..extra {
        doc.edges.push(shifted_edge(&mut r, p, lo, hi, inc.neg_fraction));
    }
    build(doc)
}

/// Adds a negative 3-cycle reachable from `source`: `source → a`,
/// `a → b → c → a` of total weight `-0.5`, on randomly chosen distinct
/// vertices other than the source.
pub fn plant_negative_cycle(g: &Graph, source: VertexId, seed: u64) -> Result<Graph, GenError> {
    if g.n() < 4 {
        return invalid("planting a cycle needs at least 4 vertices");
    }
    g.check_vertex(source)?;
    let mut r = rng(seed);
    let mut picks = Vec::with_capacity(3);
    while picks.len() < 3 {
        let v = r.gen_range(0..g.n());
        if v != source && !picks.contains(&v) {
            picks.push(v);
        }
    }
    let (a, b, c) = (picks[0], picks[1], picks[2]);
    let mut doc = g.to_edge_list();
    doc.edges.extend([(source, a, 1.0), (a, b, 1.0), (b, c, 1.0), (c, a, -2.5)]);
    build(doc)
}
