//! Exhaustive bounded auditing of a lifted comparator against the axiom
//! system and its derived consequences, with deterministic first-witness
//! reporting.
//!
//! The enumerated universe is every sequence of length `1..=max_len` over
//! the domain, in canonical order (by length, then lexicographic by element
//! index). Checks may form concatenations and replications up to
//! `closure_len` positions; instances that would exceed that bound, or the
//! comparator's own length bound, are counted as skipped.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::domain::{DomainSpec, Ordering, Sequence};
use crate::error::{Error, Result};
use crate::lifting::{
    check_replication_invariance, enumerate_items, EqualLengthComparator, LiftedComparator,
    Strategy,
};

/// Enumeration bounds for an audit.
#[derive(Debug, Clone)]
pub struct UniverseBound {
    pub domain: Arc<DomainSpec>,
    pub max_len: usize,
    pub closure_len: usize,
}

impl UniverseBound {
    /// Default closure: four times `max_len`, enough for a concatenation of
    /// two max-length sequences after doubling.
    pub fn new(domain: Arc<DomainSpec>, max_len: usize) -> Result<Self> {
        Self::with_closure(domain, max_len, 4 * max_len)
    }

    pub fn with_closure(
        domain: Arc<DomainSpec>,
        max_len: usize,
        closure_len: usize,
    ) -> Result<Self> {
        if max_len == 0 {
            return Err(Error::InvalidBound {
                reason: "max_len must be at least 1".to_string(),
            });
        }
        if closure_len < max_len {
            return Err(Error::InvalidBound {
                reason: format!("closure_len {closure_len} is below max_len {max_len}"),
            });
        }
        Ok(UniverseBound {
            domain,
            max_len,
            closure_len,
        })
    }

    /// All sequences of length `1..=max_len`, by length then lexicographic
    /// by element index.
    pub fn enumerate(&self) -> Vec<Sequence> {
        let mut out = Vec::new();
        for len in 1..=self.max_len {
            for items in enumerate_items(self.domain.len(), len) {
                out.push(Sequence::new(self.domain.clone(), items).expect("non-empty"));
            }
        }
        out
    }
}

/// Identifiers of the individual checks.
#[allow(non_camel_case_types)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CheckId {
    A1_1,
    A1_2,
    A2_1,
    A2_2,
    A2_3,
    A3,
    F4,
    F5,
    F6,
    F7_1,
    F7_2,
    F7_3,
    #[serde(rename = "F8_consistency")]
    F8_consistency,
    #[serde(rename = "sanity_equivalence")]
    SanityEquivalence,
    #[serde(rename = "sanity_strict_order")]
    SanityStrictOrder,
    #[serde(rename = "sanity_congruence_converse")]
    SanityCongruenceConverse,
    #[serde(rename = "replication_invariance")]
    ReplicationInvariance,
}

impl CheckId {
    /// Every check, in canonical execution order.
    pub fn all() -> [CheckId; 17] {
        use CheckId::*;
        [
            A1_1,
            A1_2,
            A2_1,
            A2_2,
            A2_3,
            A3,
            F4,
            F5,
            F6,
            F7_1,
            F7_2,
            F7_3,
            F8_consistency,
            SanityEquivalence,
            SanityStrictOrder,
            SanityCongruenceConverse,
            ReplicationInvariance,
        ]
    }

    pub fn as_str(self) -> &'static str {
        use CheckId::*;
        match self {
            A1_1 => "A1_1",
            A1_2 => "A1_2",
            A2_1 => "A2_1",
            A2_2 => "A2_2",
            A2_3 => "A2_3",
            A3 => "A3",
            F4 => "F4",
            F5 => "F5",
            F6 => "F6",
            F7_1 => "F7_1",
            F7_2 => "F7_2",
            F7_3 => "F7_3",
            F8_consistency => "F8_consistency",
            SanityEquivalence => "sanity_equivalence",
            SanityStrictOrder => "sanity_strict_order",
            SanityCongruenceConverse => "sanity_congruence_converse",
            ReplicationInvariance => "replication_invariance",
        }
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CheckId::all()
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::UnknownCheck { id: s.to_string() })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    HoldsOnUniverse,
    Violated,
    Skipped,
}

/// A complete, replayable counterexample: the quantified input sequences
/// (as label literals) and the observed orderings.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct Witness {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma_prime: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma_dprime: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub positions: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub factor: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    pub observed: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scores: Option<Vec<String>>,
}

impl Witness {
    fn new(observed: &[Ordering]) -> Self {
        Witness {
            sigma: None,
            sigma_prime: None,
            sigma_dprime: None,
            positions: None,
            factor: None,
            detail: None,
            observed: observed.iter().map(|o| o.as_str().to_string()).collect(),
            scores: None,
        }
    }

    fn render_text(&self) -> String {
        let mut parts = Vec::new();
        if let Some(s) = &self.sigma {
            parts.push(format!("sigma={s}"));
        }
        if let Some(s) = &self.sigma_prime {
            parts.push(format!("sigma_prime={s}"));
        }
        if let Some(s) = &self.sigma_dprime {
            parts.push(format!("sigma_dprime={s}"));
        }
        if let Some(p) = &self.positions {
            parts.push(format!(
                "positions={}",
                p.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
            ));
        }
        if let Some(f) = &self.factor {
            parts.push(format!("factor={f}"));
        }
        if let Some(d) = &self.detail {
            parts.push(format!("detail={d}"));
        }
        parts.push(format!("observed={}", self.observed.join(",")));
        if let Some(s) = &self.scores {
            parts.push(format!("scores={}", s.join(",")));
        }
        parts.join(" ")
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub id: CheckId,
    pub status: CheckStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub tested: u64,
    pub skipped: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundInfo {
    pub domain_size: usize,
    pub max_len: usize,
    pub closure_len: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AuditReport {
    pub comparator: String,
    pub bound: BoundInfo,
    pub checks: Vec<CheckOutcome>,
    pub internal_inconsistencies: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl AuditReport {
    pub fn any_violation(&self) -> bool {
        self.checks
            .iter()
            .any(|c| c.status == CheckStatus::Violated)
    }

    pub fn outcome(&self, id: CheckId) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("comparator: {}\n", self.comparator));
        out.push_str(&format!(
            "bound: domain_size={} max_len={} closure_len={}\n",
            self.bound.domain_size, self.bound.max_len, self.bound.closure_len
        ));
        out.push_str(&format!(
            "{:<28} {:<18} {:>10} {:>8}\n",
            "check", "status", "tested", "skipped"
        ));
        for c in &self.checks {
            let status = match c.status {
                CheckStatus::HoldsOnUniverse => "holds_on_universe",
                CheckStatus::Violated => "violated",
                CheckStatus::Skipped => "skipped",
            };
            out.push_str(&format!(
                "{:<28} {:<18} {:>10} {:>8}\n",
                c.id.as_str(),
                status,
                c.tested,
                c.skipped
            ));
            if let Some(w) = &c.witness {
                out.push_str(&format!("  witness: {}\n", w.render_text()));
            }
            if let Some(r) = &c.reason {
                out.push_str(&format!("  reason: {r}\n"));
            }
        }
        if self.internal_inconsistencies.is_empty() {
            out.push_str("internal inconsistencies: none\n");
        } else {
            for line in &self.internal_inconsistencies {
                out.push_str(&format!("internal inconsistency: {line}\n"));
            }
        }
        if let Some(ms) = self.timing_ms {
            out.push_str(&format!("elapsed: {ms} ms\n"));
        }
        out
    }
}

#[derive(Debug, Clone)]
pub struct AuditOptions {
    pub checks: Vec<CheckId>,
    /// Worker threads; 0 means the machine default. Reports are identical
    /// for every worker count.
    pub workers: usize,
    pub timing: bool,
}

impl Default for AuditOptions {
    fn default() -> Self {
        AuditOptions {
            checks: CheckId::all().to_vec(),
            workers: 0,
            timing: false,
        }
    }
}

enum Instance {
    Pass,
    Skip,
    Violation(Witness),
}

type Acc = (u64, u64, Option<(usize, Witness)>);

fn merge(a: Acc, b: Acc) -> Acc {
    let best = match (a.2, b.2) {
        (Some(x), Some(y)) => Some(if x.0 <= y.0 { x } else { y }),
        (x, None) => x,
        (None, y) => y,
    };
    (a.0 + b.0, a.1 + b.1, best)
}

struct Engine<'a> {
    cmp: &'a Arc<dyn EqualLengthComparator>,
    bound: &'a UniverseBound,
    universe: Vec<Sequence>,
    lengths: Vec<usize>,
    /// Lifted (lcm-strategy) comparison of every universe pair; `None`
    /// where the comparator or the closure bound rejects the comparison.
    matrix: Vec<Option<Ordering>>,
    lifted: LiftedComparator,
    lifted_product: LiftedComparator,
    pool: rayon::ThreadPool,
}

impl<'a> Engine<'a> {
    fn new(
        cmp: &'a Arc<dyn EqualLengthComparator>,
        bound: &'a UniverseBound,
        workers: usize,
    ) -> Result<Self> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| Error::InvalidBound {
                reason: format!("cannot build worker pool: {e}"),
            })?;
        let universe = bound.enumerate();
        let lengths: Vec<usize> = universe.iter().map(|s| s.len()).collect();
        let lifted = LiftedComparator::with_cap(cmp.clone(), Strategy::Lcm, bound.closure_len);
        let lifted_product =
            LiftedComparator::with_cap(cmp.clone(), Strategy::Product, bound.closure_len);
        let n = universe.len();
        let matrix = pool.install(|| {
            (0..n * n)
                .into_par_iter()
                .map(|k| lifted.compare(&universe[k / n], &universe[k % n]).ok())
                .collect()
        });
        Ok(Engine {
            cmp,
            bound,
            universe,
            lengths,
            matrix,
            lifted,
            lifted_product,
            pool,
        })
    }

    fn at(&self, i: usize, j: usize) -> Option<Ordering> {
        self.matrix[i * self.universe.len() + j]
    }

    fn lit(&self, i: usize) -> String {
        self.universe[i].literal()
    }

    /// Exact scores of the final compared (replicated) pair, when the base
    /// comparator is score-based.
    fn scores(&self, s: &Sequence, t: &Sequence) -> Option<Vec<String>> {
        self.lifted
            .certificate(s, t)
            .ok()
            .and_then(|c| c.scores.map(|pair| pair.to_vec()))
    }

    fn run<T, F>(&self, instances: &[T], eval: F) -> (u64, u64, Option<Witness>)
    where
        T: Sync,
        F: Fn(&T) -> Instance + Sync,
    {
        let (tested, skipped, violation) = self.pool.install(|| {
            instances
                .par_iter()
                .enumerate()
                .map(|(i, t)| match eval(t) {
                    Instance::Pass => (1u64, 0u64, None),
                    Instance::Skip => (0, 1, None),
                    Instance::Violation(w) => (1, 0, Some((i, w))),
                })
                .reduce(|| (0, 0, None), merge)
        });
        (tested, skipped, violation.map(|(_, w)| w))
    }

    fn outcome(&self, id: CheckId, result: (u64, u64, Option<Witness>)) -> CheckOutcome {
        let (tested, skipped, witness) = result;
        let (status, reason) = match (&witness, tested, skipped) {
            (Some(_), _, _) => (CheckStatus::Violated, None),
            (None, 0, s) if s > 0 => (
                CheckStatus::Skipped,
                Some("no instance fits within the bound".to_string()),
            ),
            _ => (CheckStatus::HoldsOnUniverse, None),
        };
        CheckOutcome {
            id,
            status,
            reason,
            witness,
            tested,
            skipped,
        }
    }

    fn singleton_pairs(&self, want_tie: bool) -> Vec<(usize, usize)> {
        let d = &self.bound.domain;
        let mut out = Vec::new();
        for x in 0..d.len() {
            for y in 0..d.len() {
                let tie = d.utility(x) == d.utility(y);
                if tie == want_tie && (want_tie || d.utility(x) < d.utility(y)) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    // Axiom (1): singletons follow the base order. Length-1 sequences sit at
    // the front of the canonical enumeration, so element index == universe
    // index.
    fn check_singleton(&self, id: CheckId) -> CheckOutcome {
        let want_tie = id == CheckId::A1_2;
        let expected = if want_tie {
            Ordering::Equivalent
        } else {
            Ordering::Less
        };
        let pairs = self.singleton_pairs(want_tie);
        let result = self.run(&pairs, |&(x, y)| match self.at(x, y) {
            None => Instance::Skip,
            Some(ord) if ord == expected => Instance::Pass,
            Some(ord) => {
                let mut w = Witness::new(&[ord]);
                w.sigma = Some(self.lit(x));
                w.sigma_prime = Some(self.lit(y));
                w.scores = self.scores(&self.universe[x], &self.universe[y]);
                Instance::Violation(w)
            }
        });
        self.outcome(id, result)
    }

    // Axiom (2.1): sigma∘sigma ≈ sigma.
    fn check_self_concat(&self) -> CheckOutcome {
        let indices: Vec<usize> = (0..self.universe.len()).collect();
        let result = self.run(&indices, |&i| {
            let s = &self.universe[i];
            if 2 * s.len() > self.bound.closure_len {
                return Instance::Skip;
            }
            let doubled = s.concat(s).expect("same domain");
            match self.lifted.compare(&doubled, s) {
                Err(_) => Instance::Skip,
                Ok(Ordering::Equivalent) => Instance::Pass,
                Ok(ord) => {
                    let mut w = Witness::new(&[ord]);
                    w.sigma = Some(s.literal());
                    w.scores = self.scores(&doubled, s);
                    Instance::Violation(w)
                }
            }
        });
        self.outcome(CheckId::A2_1, result)
    }

    fn equal_length_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.universe.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if self.lengths[i] == self.lengths[j] {
                    out.push((i, j));
                }
            }
        }
        out
    }

    // Axioms (2.2)/(2.3): a common prefix preserves strict preference and
    // equivalence. Instances with a repeated sequence are counted as tested
    // but not evaluated (reflexivity is covered by the sanity checks).
    fn check_concat_monotone(&self, id: CheckId) -> CheckOutcome {
        let expected = if id == CheckId::A2_2 {
            Ordering::Less
        } else {
            Ordering::Equivalent
        };
        let eq_pairs = self.equal_length_pairs();
        let mut triples = Vec::with_capacity(self.universe.len() * eq_pairs.len());
        for a in 0..self.universe.len() {
            for &(b, c) in &eq_pairs {
                triples.push((a, b, c));
            }
        }
        let result = self.run(&triples, |&(a, b, c)| {
            if a == b || a == c || b == c {
                return Instance::Pass;
            }
            match self.at(b, c) {
                None => Instance::Skip,
                Some(hyp) if hyp != expected => Instance::Pass,
                Some(hyp) => {
                    if self.lengths[a] + self.lengths[b] > self.bound.closure_len {
                        return Instance::Skip;
                    }
                    let left = self.universe[a].concat(&self.universe[b]).expect("domain");
                    let right = self.universe[a].concat(&self.universe[c]).expect("domain");
                    match self.lifted.compare(&left, &right) {
                        Err(_) => Instance::Skip,
                        Ok(ord) if ord == expected => Instance::Pass,
                        Ok(ord) => {
                            let mut w = Witness::new(&[hyp, ord]);
                            w.sigma = Some(self.lit(a));
                            w.sigma_prime = Some(self.lit(b));
                            w.sigma_dprime = Some(self.lit(c));
                            w.scores = self.scores(&left, &right);
                            Instance::Violation(w)
                        }
                    }
                }
            }
        });
        self.outcome(id, result)
    }

    // Axiom (3): sigma∘sigma' ≈ sigma'∘sigma.
    fn check_permutation(&self) -> CheckOutcome {
        let n = self.universe.len();
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
        let result = self.run(&pairs, |&(i, j)| {
            if self.lengths[i] + self.lengths[j] > self.bound.closure_len {
                return Instance::Skip;
            }
            let st = self.universe[i].concat(&self.universe[j]).expect("domain");
            let ts = self.universe[j].concat(&self.universe[i]).expect("domain");
            match self.lifted.compare(&st, &ts) {
                Err(_) => Instance::Skip,
                Ok(Ordering::Equivalent) => Instance::Pass,
                Ok(ord) => {
                    let mut w = Witness::new(&[ord]);
                    w.sigma = Some(self.lit(i));
                    w.sigma_prime = Some(self.lit(j));
                    w.scores = self.scores(&st, &ts);
                    Instance::Violation(w)
                }
            }
        });
        self.outcome(CheckId::A3, result)
    }

    // Facts (4)/(5): appending an equivalent (resp. dominating) stream
    // leaves the comparison with the original unchanged.
    fn check_absorption(&self, id: CheckId) -> CheckOutcome {
        let hypothesis = if id == CheckId::F4 {
            Ordering::Equivalent
        } else {
            Ordering::Less
        };
        let n = self.universe.len();
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
        let result = self.run(&pairs, |&(i, j)| match self.at(i, j) {
            None => Instance::Skip,
            Some(hyp) if hyp != hypothesis => Instance::Pass,
            Some(hyp) => {
                if self.lengths[i] + self.lengths[j] > self.bound.closure_len {
                    return Instance::Skip;
                }
                let cat = self.universe[i].concat(&self.universe[j]).expect("domain");
                match self.lifted.compare(&self.universe[i], &cat) {
                    Err(_) => Instance::Skip,
                    Ok(ord) if ord == hypothesis => Instance::Pass,
                    Ok(ord) => {
                        let mut w = Witness::new(&[hyp, ord]);
                        w.sigma = Some(self.lit(i));
                        w.sigma_prime = Some(self.lit(j));
                        w.scores = self.scores(&self.universe[i], &cat);
                        Instance::Violation(w)
                    }
                }
            }
        });
        self.outcome(id, result)
    }

    // Fact (6): single transpositions leave the ranking unchanged.
    fn check_transposition(&self) -> CheckOutcome {
        let mut instances = Vec::new();
        for (i, s) in self.universe.iter().enumerate() {
            for p in 1..=s.len() {
                for q in (p + 1)..=s.len() {
                    instances.push((i, p, q));
                }
            }
        }
        let result = self.run(&instances, |&(i, p, q)| {
            let s = &self.universe[i];
            let t = s.transpose(p, q).expect("positions in range");
            match self.lifted.compare(&t, s) {
                Err(_) => Instance::Skip,
                Ok(Ordering::Equivalent) => Instance::Pass,
                Ok(ord) => {
                    let mut w = Witness::new(&[ord]);
                    w.sigma = Some(t.literal());
                    w.sigma_prime = Some(s.literal());
                    w.positions = Some(vec![p, q]);
                    w.scores = self.scores(&t, s);
                    Instance::Violation(w)
                }
            }
        });
        self.outcome(CheckId::F6, result)
    }

    // Fact (7): pointwise dominance implies the corresponding ranking.
    fn check_weak_pareto(&self, id: CheckId) -> CheckOutcome {
        let eq_pairs = self.equal_length_pairs();
        let result = self.run(&eq_pairs, |&(i, j)| {
            let s = &self.universe[i];
            let t = &self.universe[j];
            let fires = match id {
                CheckId::F7_1 => s.pointwise_leq(t),
                CheckId::F7_2 => s.pointwise_lt(t),
                _ => s.pointwise_ll(t),
            }
            .expect("equal lengths");
            if !fires {
                return Instance::Pass;
            }
            match self.at(i, j) {
                None => Instance::Skip,
                Some(ord) => {
                    let ok = match id {
                        CheckId::F7_1 => {
                            ord == Ordering::Less || ord == Ordering::Equivalent
                        }
                        _ => ord == Ordering::Less,
                    };
                    if ok {
                        Instance::Pass
                    } else {
                        let mut w = Witness::new(&[ord]);
                        w.sigma = Some(self.lit(i));
                        w.sigma_prime = Some(self.lit(j));
                        w.scores = self.scores(s, t);
                        Instance::Violation(w)
                    }
                }
            }
        });
        self.outcome(id, result)
    }

    // Fact (8): the lifted relation restricted to equal lengths is the base
    // relation, both strategies agree, and lifting a total base stays total.
    fn check_lift_consistency(&self) -> CheckOutcome {
        let n = self.universe.len();
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
        let result = self.run(&pairs, |&(i, j)| {
            let s = &self.universe[i];
            let t = &self.universe[j];
            let r_lcm = self.at(i, j);
            let r_prod = self.lifted_product.compare(s, t).ok();
            if self.lengths[i] == self.lengths[j] {
                let r_base = self.cmp.compare_equal(s, t).ok();
                if let (Some(base), Some(lifted)) = (r_base, r_lcm) {
                    if base != lifted {
                        let mut w = Witness::new(&[base, lifted]);
                        w.sigma = Some(self.lit(i));
                        w.sigma_prime = Some(self.lit(j));
                        w.detail = Some("lift disagrees with base".to_string());
                        return Instance::Violation(w);
                    }
                }
            }
            match (r_lcm, r_prod) {
                (Some(a), Some(b)) if a != b => {
                    let mut w = Witness::new(&[a, b]);
                    w.sigma = Some(self.lit(i));
                    w.sigma_prime = Some(self.lit(j));
                    w.detail = Some("lcm and product strategies disagree".to_string());
                    Instance::Violation(w)
                }
                (None, None) => Instance::Skip,
                _ => Instance::Pass,
            }
        });
        let mut outcome = self.outcome(CheckId::F8_consistency, result);
        // totality: a base with no Incomparable outcome on equal lengths
        // must not produce Incomparable after lifting
        if outcome.status != CheckStatus::Violated {
            let base_total = self
                .equal_length_pairs()
                .iter()
                .all(|&(i, j)| self.at(i, j) != Some(Ordering::Incomparable));
            if base_total {
                for &(i, j) in &pairs {
                    if self.at(i, j) == Some(Ordering::Incomparable) {
                        let mut w = Witness::new(&[Ordering::Incomparable]);
                        w.sigma = Some(self.lit(i));
                        w.sigma_prime = Some(self.lit(j));
                        w.detail =
                            Some("lift of a total base returned Incomparable".to_string());
                        outcome.status = CheckStatus::Violated;
                        outcome.witness = Some(w);
                        break;
                    }
                }
            }
        }
        outcome
    }

    // ≈ must be an equivalence on the universe.
    fn check_equivalence_sanity(&self) -> CheckOutcome {
        let n = self.universe.len();
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
        let (t1, s1, w1) = self.run(&pairs, |&(i, j)| {
            if i == j {
                return match self.at(i, i) {
                    None => Instance::Skip,
                    Some(Ordering::Equivalent) => Instance::Pass,
                    Some(ord) => {
                        let mut w = Witness::new(&[ord]);
                        w.sigma = Some(self.lit(i));
                        w.detail = Some("equivalence not reflexive".to_string());
                        Instance::Violation(w)
                    }
                };
            }
            match (self.at(i, j), self.at(j, i)) {
                (Some(Ordering::Equivalent), Some(back)) if back != Ordering::Equivalent => {
                    let mut w = Witness::new(&[Ordering::Equivalent, back]);
                    w.sigma = Some(self.lit(i));
                    w.sigma_prime = Some(self.lit(j));
                    w.detail = Some("equivalence not symmetric".to_string());
                    Instance::Violation(w)
                }
                (None, _) | (_, None) => Instance::Skip,
                _ => Instance::Pass,
            }
        });
        if w1.is_some() {
            return self.outcome(CheckId::SanityEquivalence, (t1, s1, w1));
        }
        let triples = self.all_triples();
        let (t2, s2, w2) = self.run(&triples, |&(i, j, k)| {
            match (self.at(i, j), self.at(j, k)) {
                (Some(Ordering::Equivalent), Some(Ordering::Equivalent)) => match self.at(i, k) {
                    None => Instance::Skip,
                    Some(Ordering::Equivalent) => Instance::Pass,
                    Some(ord) => {
                        let mut w =
                            Witness::new(&[Ordering::Equivalent, Ordering::Equivalent, ord]);
                        w.sigma = Some(self.lit(i));
                        w.sigma_prime = Some(self.lit(j));
                        w.sigma_dprime = Some(self.lit(k));
                        w.detail = Some("equivalence not transitive".to_string());
                        Instance::Violation(w)
                    }
                },
                (None, _) | (_, None) => Instance::Skip,
                _ => Instance::Pass,
            }
        });
        self.outcome(CheckId::SanityEquivalence, (t1 + t2, s1 + s2, w2))
    }

    fn all_triples(&self) -> Vec<(usize, usize, usize)> {
        let n = self.universe.len();
        let mut out = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    out.push((i, j, k));
                }
            }
        }
        out
    }

    // ≺ must be a strict order: irreflexive, asymmetric, transitive, and
    // compatible with ≈ (mixed transitivity).
    fn check_strict_order_sanity(&self) -> CheckOutcome {
        let n = self.universe.len();
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
        let (t1, s1, w1) = self.run(&pairs, |&(i, j)| {
            if i == j {
                return match self.at(i, i) {
                    None => Instance::Skip,
                    Some(Ordering::Less) | Some(Ordering::Greater) => {
                        let mut w = Witness::new(&[self.at(i, i).unwrap()]);
                        w.sigma = Some(self.lit(i));
                        w.detail = Some("strict order not irreflexive".to_string());
                        Instance::Violation(w)
                    }
                    Some(_) => Instance::Pass,
                };
            }
            match (self.at(i, j), self.at(j, i)) {
                (Some(Ordering::Less), Some(Ordering::Less)) => {
                    let mut w = Witness::new(&[Ordering::Less, Ordering::Less]);
                    w.sigma = Some(self.lit(i));
                    w.sigma_prime = Some(self.lit(j));
                    w.detail = Some("strict order not asymmetric".to_string());
                    Instance::Violation(w)
                }
                (None, _) | (_, None) => Instance::Skip,
                _ => Instance::Pass,
            }
        });
        if w1.is_some() {
            return self.outcome(CheckId::SanityStrictOrder, (t1, s1, w1));
        }
        let triples = self.all_triples();
        let (t2, s2, w2) = self.run(&triples, |&(i, j, k)| {
            let (r1, r2) = match (self.at(i, j), self.at(j, k)) {
                (Some(a), Some(b)) => (a, b),
                _ => return Instance::Skip,
            };
            use Ordering::*;
            let fires = matches!((r1, r2), (Less, Less) | (Less, Equivalent) | (Equivalent, Less));
            if !fires {
                return Instance::Pass;
            }
            match self.at(i, k) {
                None => Instance::Skip,
                Some(Less) => Instance::Pass,
                Some(r3) => {
                    let mut w = Witness::new(&[r1, r2, r3]);
                    w.sigma = Some(self.lit(i));
                    w.sigma_prime = Some(self.lit(j));
                    w.sigma_dprime = Some(self.lit(k));
                    w.detail = Some("strict order not transitive".to_string());
                    Instance::Violation(w)
                }
            }
        });
        self.outcome(CheckId::SanityStrictOrder, (t1 + t2, s1 + s2, w2))
    }

    // Less and Greater must be mutually converse; Equivalent and
    // Incomparable symmetric.
    fn check_converse_sanity(&self) -> CheckOutcome {
        let n = self.universe.len();
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
        let result = self.run(&pairs, |&(i, j)| {
            match (self.at(i, j), self.at(j, i)) {
                (Some(fwd), Some(back)) => {
                    if back == fwd.converse() {
                        Instance::Pass
                    } else {
                        let mut w = Witness::new(&[fwd, back]);
                        w.sigma = Some(self.lit(i));
                        w.sigma_prime = Some(self.lit(j));
                        Instance::Violation(w)
                    }
                }
                _ => Instance::Skip,
            }
        });
        self.outcome(CheckId::SanityCongruenceConverse, result)
    }

    fn check_replication(&self) -> CheckOutcome {
        let n = self.universe.len();
        let mut pairs = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                pairs.push((self.universe[i].clone(), self.universe[j].clone()));
            }
        }
        let (tested, skipped, violation) =
            check_replication_invariance(self.cmp.as_ref(), &pairs, self.bound.closure_len);
        let witness = violation.map(|v| {
            let mut w = Witness::new(&[v.first, v.observed]);
            w.sigma = Some(v.left.literal());
            w.sigma_prime = Some(v.right.literal());
            w.factor = Some(v.factor);
            w
        });
        self.outcome(CheckId::ReplicationInvariance, (tested, skipped, witness))
    }

    fn run_check(&self, id: CheckId) -> CheckOutcome {
        match id {
            CheckId::A1_1 | CheckId::A1_2 => self.check_singleton(id),
            CheckId::A2_1 => self.check_self_concat(),
            CheckId::A2_2 | CheckId::A2_3 => self.check_concat_monotone(id),
            CheckId::A3 => self.check_permutation(),
            CheckId::F4 | CheckId::F5 => self.check_absorption(id),
            CheckId::F6 => self.check_transposition(),
            CheckId::F7_1 | CheckId::F7_2 | CheckId::F7_3 => self.check_weak_pareto(id),
            CheckId::F8_consistency => self.check_lift_consistency(),
            CheckId::SanityEquivalence => self.check_equivalence_sanity(),
            CheckId::SanityStrictOrder => self.check_strict_order_sanity(),
            CheckId::SanityCongruenceConverse => self.check_converse_sanity(),
            CheckId::ReplicationInvariance => self.check_replication(),
        }
    }
}

const AXIOM_CHECKS: [CheckId; 6] = [
    CheckId::A1_1,
    CheckId::A1_2,
    CheckId::A2_1,
    CheckId::A2_2,
    CheckId::A2_3,
    CheckId::A3,
];

const FACT_CHECKS: [CheckId; 6] = [
    CheckId::F4,
    CheckId::F5,
    CheckId::F6,
    CheckId::F7_1,
    CheckId::F7_2,
    CheckId::F7_3,
];

/// Runs the requested checks in canonical order and assembles the report.
///
/// When all axiom checks hold on the universe, every fact check must hold
/// too (they are derivable from the axioms); a fact violation in that
/// situation is reported as an internal inconsistency, distinct from an
/// ordinary failure.
pub fn run_audit(
    cmp: &Arc<dyn EqualLengthComparator>,
    bound: &UniverseBound,
    opts: &AuditOptions,
) -> Result<AuditReport> {
    let start = Instant::now();
    let engine = Engine::new(cmp, bound, opts.workers)?;
    let ordered: Vec<CheckId> = CheckId::all()
        .into_iter()
        .filter(|id| opts.checks.contains(id))
        .collect();
    let checks: Vec<CheckOutcome> = ordered.iter().map(|&id| engine.run_check(id)).collect();

    let axioms_hold = AXIOM_CHECKS.iter().all(|id| {
        checks
            .iter()
            .any(|c| c.id == *id && c.status == CheckStatus::HoldsOnUniverse)
    });
    let mut internal_inconsistencies = Vec::new();
    if axioms_hold {
        for c in &checks {
            if FACT_CHECKS.contains(&c.id) && c.status == CheckStatus::Violated {
                internal_inconsistencies.push(format!(
                    "{} violated although the axiom checks all hold on this universe",
                    c.id
                ));
            }
        }
    }

    Ok(AuditReport {
        comparator: cmp.name(),
        bound: BoundInfo {
            domain_size: bound.domain.len(),
            max_len: bound.max_len,
            closure_len: bound.closure_len,
        },
        checks,
        internal_inconsistencies,
        timing_ms: opts.timing.then(|| start.elapsed().as_millis() as u64),
    })
}
