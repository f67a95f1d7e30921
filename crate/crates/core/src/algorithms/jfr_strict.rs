//! Round-based Jump Frontier Relaxation with an explicit depth `k`.
//!
//! One outer iteration:
//!
//! 1. every frontier vertex is activated and its out-edges relaxed;
//! 2. the vertices improved by step 1 seed a `(k - 1)`-round local
//!    propagation, so together with step 1 every path of at most `k` edges
//!    leaving the frontier is relaxed in order;
//! 3. each vertex left pending by a propagation call (improved in its last
//!    round) is either re-seeded into another call within the same iteration
//!    or, once it has absorbed `k` improvements this iteration, deferred to
//!    the next frontier.
//!
//! A vertex therefore enters the frontier only after `k` strict improvements
//! in the preceding iteration, which gives `s(v) <= 1 + ceil(D_v / k)` and
//! the amortized inspection bound. Every vertex whose current label has not
//! been pushed along its out-edges is either pending in the current
//! iteration or on the next frontier, so after iteration `t` every path of at
//! most `t` edges is reflected in the labels. With no reachable negative
//! cycle the labels are final after `n - 1` iterations; an improvement in
//! iteration `n` reports one.

use crate::graph::{Graph, VertexId};
use crate::weight::Weight;

use super::lmh::{propagate, LmhHooks, LmhScratch};
use super::{AlgoError, Algorithm, Frontier, SsspResult, State};

/// Per-iteration improvement counts, reset lazily.
struct IterationLedger {
    count: Vec<u32>,
    touched: Vec<VertexId>,
    last: Option<VertexId>,
}

impl IterationLedger {
    #[inline]
    fn record(&mut self, v: VertexId) {
        if self.count[v] == 0 {
            self.touched.push(v);
        }
        self.count[v] += 1;
        self.last = Some(v);
    }

    fn reset(&mut self) {
        for &v in &self.touched {
            self.count[v] = 0;
        }
        self.touched.clear();
        self.last = None;
    }
}

struct StrictHooks<'a> {
    ledger: &'a mut IterationLedger,
    deferred: &'a Frontier,
}

impl LmhHooks for StrictHooks<'_> {
    fn skip(&self, v: VertexId) -> bool {
        // already scheduled for the next frontier scan
        self.deferred.contains(v)
    }

    fn on_improve(&mut self, v: VertexId) {
        self.ledger.record(v);
    }
}

pub fn jfr_strict<W: Weight>(g: &Graph<W>, s: VertexId, k: u32) -> Result<SsspResult<W>, AlgoError> {
    if k == 0 {
        return Err(AlgoError::InvalidConfig("k must be at least 1".into()));
    }
    let mut st = State::new(g, s, Algorithm::JfrStrict)?;
    st.stats.depth = Some(k);
    let n = g.n();

    let mut frontier = Frontier::new(n);
    let mut deferred = Frontier::new(n);
    let mut seeds = Frontier::new(n);
    let mut ledger = IterationLedger { count: vec![0; n], touched: Vec::new(), last: None };
    let mut scratch = LmhScratch::new(n);
    frontier.insert(s);

    let mut neg_cycle = false;
    let mut hint = None;
    let mut iteration = 0usize;
    'outer: while !frontier.is_empty() {
        iteration += 1;
        st.stats.outer_iterations += 1;

        for &u in frontier.as_slice() {
            let u = u as VertexId;
            st.stats.activations[u] += 1;
            let tripped = st.scan(u, |v| {
                ledger.record(v);
                seeds.insert(v);
            });
            if let Some(v) = tripped {
                neg_cycle = true;
                hint = Some(v);
                break 'outer;
            }
        }

        let mut layer = seeds.drain();
        if k == 1 {
            for v in layer {
                deferred.insert(v);
            }
        } else {
            while !layer.is_empty() {
                let mut hooks = StrictHooks { ledger: &mut ledger, deferred: &deferred };
                let out = propagate(&mut st, &mut scratch, &layer, k - 1, &mut hooks);
                if let Some(v) = out.tripped {
                    neg_cycle = true;
                    hint = Some(v);
                    break 'outer;
                }
                layer.clear();
                for v in out.pending {
                    if deferred.contains(v) {
                        continue;
                    }
                    if ledger.count[v] >= k {
                        deferred.insert(v);
                    } else {
                        layer.push(v);
                    }
                }
            }
        }

        if ledger.last.is_some() && iteration >= n {
            neg_cycle = true;
            hint = ledger.last;
            break;
        }
        ledger.reset();
        std::mem::swap(&mut frontier, &mut deferred);
        deferred.clear();
    }
    Ok(st.finish(s, neg_cycle, hint))
}
