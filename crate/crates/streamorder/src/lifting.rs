//! Lifting an equal-length comparator to arbitrary lengths.
//!
//! Given a comparator defined only between streams of equal length, two
//! streams of lengths `m` and `n` are compared by replicating them to a
//! common length and comparing the replications. The default strategy uses
//! `lcm(m, n)`; the `product` strategy replicates to `m * n`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::domain::{DomainSpec, Ordering, Sequence};
use crate::error::{Error, Result};
use crate::evaluators::format_rational;

/// Default cap on replicated lengths. Comparisons that would need more
/// positions are rejected as input errors.
pub const DEFAULT_REPLICATION_CAP: usize = 10_000;

/// How to pick the common length for two streams of lengths `m` and `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    #[default]
    Lcm,
    Product,
}

impl Strategy {
    pub fn as_str(self) -> &'static str {
        match self {
            Strategy::Lcm => "lcm",
            Strategy::Product => "product",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lcm" => Ok(Strategy::Lcm),
            "product" => Ok(Strategy::Product),
            other => Err(Error::InvalidEvaluator {
                spec: other.to_string(),
            }),
        }
    }
}

/// Common length `L` and the replication factors `(k_left, k_right)` with
/// `k_left * m = k_right * n = L`.
pub fn common_length(m: usize, n: usize, strategy: Strategy) -> (usize, usize, usize) {
    debug_assert!(m >= 1 && n >= 1);
    match strategy {
        Strategy::Lcm => {
            let l = num_integer::lcm(m, n);
            (l, l / m, l / n)
        }
        Strategy::Product => (m * n, n, m),
    }
}

/// A comparison rule defined exactly between streams of equal length.
///
/// Implementations must be converse-consistent: `compare_equal(s, t)` is
/// `Less` iff `compare_equal(t, s)` is `Greater`, and `Equivalent` /
/// `Incomparable` are symmetric.
pub trait EqualLengthComparator: Send + Sync {
    fn name(&self) -> String;

    fn compare_equal(&self, s: &Sequence, t: &Sequence) -> Result<Ordering>;

    /// Exact score of a stream, when the comparator is score-based.
    fn score(&self, _s: &Sequence) -> Option<BigRational> {
        None
    }

    /// Largest length the comparator is defined on, if bounded (tables).
    fn max_supported_len(&self) -> Option<usize> {
        None
    }
}

/// The any-length form of an equal-length comparator.
#[derive(Clone)]
pub struct LiftedComparator {
    base: Arc<dyn EqualLengthComparator>,
    strategy: Strategy,
    cap: usize,
}

impl LiftedComparator {
    pub fn new(base: Arc<dyn EqualLengthComparator>, strategy: Strategy) -> Self {
        Self::with_cap(base, strategy, DEFAULT_REPLICATION_CAP)
    }

    pub fn with_cap(
        base: Arc<dyn EqualLengthComparator>,
        strategy: Strategy,
        cap: usize,
    ) -> Self {
        LiftedComparator {
            base,
            strategy,
            cap,
        }
    }

    pub fn base(&self) -> &Arc<dyn EqualLengthComparator> {
        &self.base
    }

    pub fn strategy(&self) -> Strategy {
        self.strategy
    }

    fn replications(&self, s: &Sequence, t: &Sequence) -> Result<(Sequence, Sequence, usize, usize, usize)> {
        if s.domain() != t.domain() {
            return Err(Error::DomainMismatch);
        }
        let (m, n) = (s.len(), t.len());
        let (l, k_left, k_right) = common_length(m, n, self.strategy);
        if l > self.cap {
            return Err(Error::ReplicationCapExceeded {
                required: l,
                cap: self.cap,
            });
        }
        if let Some(max) = self.base.max_supported_len() {
            if l > max {
                return Err(Error::UnsupportedLength { required: l, max });
            }
        }
        Ok((s.repeat(k_left)?, t.repeat(k_right)?, l, k_left, k_right))
    }

    pub fn compare(&self, s: &Sequence, t: &Sequence) -> Result<Ordering> {
        let (rs, rt, _, _, _) = self.replications(s, t)?;
        self.base.compare_equal(&rs, &rt)
    }

    /// Compares and returns the full replication certificate.
    pub fn certificate(&self, s: &Sequence, t: &Sequence) -> Result<Certificate> {
        let (rs, rt, l, k_left, k_right) = self.replications(s, t)?;
        let ordering = self.base.compare_equal(&rs, &rt)?;
        let scores = match (self.base.score(&rs), self.base.score(&rt)) {
            (Some(a), Some(b)) => Some([format_rational(&a), format_rational(&b)]),
            _ => None,
        };
        Ok(Certificate {
            ordering,
            strategy: self.strategy,
            left: s.literal(),
            right: t.literal(),
            left_factor: k_left,
            right_factor: k_right,
            common_length: l,
            left_replicated: rs.literal(),
            right_replicated: rt.literal(),
            scores,
        })
    }
}

/// Replayable record of one lifted comparison: the replication factors, the
/// common length, both replicated streams, and exact scores when available.
#[derive(Debug, Clone, Serialize)]
pub struct Certificate {
    pub ordering: Ordering,
    pub strategy: Strategy,
    pub left: String,
    pub right: String,
    pub left_factor: usize,
    pub right_factor: usize,
    pub common_length: usize,
    pub left_replicated: String,
    pub right_replicated: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scores: Option<[String; 2]>,
}

impl Certificate {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("{}\n", self.ordering));
        out.push_str(&format!("strategy: {}\n", self.strategy));
        out.push_str(&format!(
            "left: {} (length {}, factor {})\n",
            self.left,
            self.left_replicated.split(',').count() / self.left_factor,
            self.left_factor
        ));
        out.push_str(&format!(
            "right: {} (length {}, factor {})\n",
            self.right,
            self.right_replicated.split(',').count() / self.right_factor,
            self.right_factor
        ));
        out.push_str(&format!("common length: {}\n", self.common_length));
        out.push_str(&format!("left replicated: {}\n", self.left_replicated));
        out.push_str(&format!("right replicated: {}\n", self.right_replicated));
        if let Some([a, b]) = &self.scores {
            out.push_str(&format!("left score: {a}\n"));
            out.push_str(&format!("right score: {b}\n"));
        }
        out
    }
}

/// JSON form of a table comparator file.
#[derive(Debug, Serialize, Deserialize)]
struct TableFile {
    #[serde(default)]
    name: Option<String>,
    domain: DomainSpec,
    max_len: usize,
    entries: Vec<TableEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
struct TableEntry {
    left: String,
    right: String,
    ordering: Ordering,
}

/// An explicit comparison table, total on all equal-length pairs of
/// sequences up to `max_len` over its domain. Converse entries are derived
/// automatically; diagonal pairs default to `Equivalent`; contradictions are
/// rejected at load.
pub struct TableComparator {
    name: String,
    domain: Arc<DomainSpec>,
    max_len: usize,
    entries: HashMap<(Vec<usize>, Vec<usize>), Ordering>,
}

impl TableComparator {
    pub fn from_entries(
        name: &str,
        domain: Arc<DomainSpec>,
        max_len: usize,
        entries: Vec<(Sequence, Sequence, Ordering)>,
    ) -> Result<Self> {
        if max_len == 0 {
            return Err(Error::InvalidBound {
                reason: "table max_len must be at least 1".to_string(),
            });
        }
        let mut map: HashMap<(Vec<usize>, Vec<usize>), Ordering> = HashMap::new();
        let mut insert = |left: &Sequence, right: &Sequence, ord: Ordering| -> Result<()> {
            let key = (left.items().to_vec(), right.items().to_vec());
            match map.get(&key) {
                Some(&existing) if existing != ord => Err(Error::TableContradiction {
                    left: left.literal(),
                    right: right.literal(),
                }),
                _ => {
                    map.insert(key, ord);
                    Ok(())
                }
            }
        };
        for (left, right, ord) in &entries {
            if left.domain() != &domain || right.domain() != &domain {
                return Err(Error::DomainMismatch);
            }
            if left.len() != right.len() {
                return Err(Error::LengthMismatch {
                    left: left.len(),
                    right: right.len(),
                });
            }
            if left.len() > max_len {
                return Err(Error::UnsupportedLength {
                    required: left.len(),
                    max: max_len,
                });
            }
            insert(left, right, *ord)?;
            insert(right, left, ord.converse())?;
        }
        // totality over the declared universe, with reflexive default
        let mut table = TableComparator {
            name: name.to_string(),
            domain: domain.clone(),
            max_len,
            entries: map,
        };
        for len in 1..=max_len {
            for items in enumerate_items(domain.len(), len) {
                let key = (items.clone(), items.clone());
                table.entries.entry(key).or_insert(Ordering::Equivalent);
            }
        }
        for len in 1..=max_len {
            let all: Vec<Vec<usize>> = enumerate_items(domain.len(), len).collect();
            for left in &all {
                for right in &all {
                    if !table.entries.contains_key(&(left.clone(), right.clone())) {
                        let render = |items: &[usize]| {
                            items
                                .iter()
                                .map(|&i| domain.label(i))
                                .collect::<Vec<_>>()
                                .join(",")
                        };
                        return Err(Error::TableIncomplete {
                            left: render(left),
                            right: render(right),
                        });
                    }
                }
            }
        }
        Ok(table)
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let file: TableFile = serde_json::from_str(text)?;
        let domain = DomainSpec::new(file.domain.elements)?;
        let mut entries = Vec::with_capacity(file.entries.len());
        for e in &file.entries {
            let left = Sequence::parse(domain.clone(), &e.left)?;
            let right = Sequence::parse(domain.clone(), &e.right)?;
            entries.push((left, right, e.ordering));
        }
        let name = file.name.as_deref().unwrap_or("table");
        Self::from_entries(name, domain, file.max_len, entries)
    }

    pub fn domain(&self) -> &Arc<DomainSpec> {
        &self.domain
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }
}

impl EqualLengthComparator for TableComparator {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn compare_equal(&self, s: &Sequence, t: &Sequence) -> Result<Ordering> {
        if s.domain() != &self.domain || t.domain() != &self.domain {
            return Err(Error::DomainMismatch);
        }
        if s.len() != t.len() {
            return Err(Error::LengthMismatch {
                left: s.len(),
                right: t.len(),
            });
        }
        if s.len() > self.max_len {
            return Err(Error::UnsupportedLength {
                required: s.len(),
                max: self.max_len,
            });
        }
        Ok(self.entries[&(s.items().to_vec(), t.items().to_vec())])
    }

    fn max_supported_len(&self) -> Option<usize> {
        Some(self.max_len)
    }
}

/// All item vectors of a given length over a domain of `size` elements, in
/// lexicographic order by element index.
pub(crate) fn enumerate_items(size: usize, len: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = size.checked_pow(len as u32).expect("universe too large");
    (0..total).map(move |mut rank| {
        let mut items = vec![0usize; len];
        for slot in items.iter_mut().rev() {
            *slot = rank % size;
            rank /= size;
        }
        items
    })
}

/// Witness that a comparator's answer changes with the replication count.
#[derive(Debug, Clone)]
pub struct ReplicationWitness {
    pub left: Sequence,
    pub right: Sequence,
    pub factor: usize,
    pub first: Ordering,
    pub observed: Ordering,
}

/// Verifies that `cmp(repeat(s, k_s * j), repeat(t, k_t * j))` is constant
/// over `j >= 1` for every pair, with replications bounded by
/// `max_positions`. Returns `(tested, skipped, first_violation)` where the
/// violation is the first in the given pair order.
pub fn check_replication_invariance(
    cmp: &dyn EqualLengthComparator,
    pairs: &[(Sequence, Sequence)],
    max_positions: usize,
) -> (u64, u64, Option<ReplicationWitness>) {
    let mut tested = 0u64;
    let mut skipped = 0u64;
    for (s, t) in pairs {
        let (l, k_s, k_t) = common_length(s.len(), t.len(), Strategy::Lcm);
        let mut first: Option<Ordering> = None;
        let mut evaluated = false;
        let mut violation = None;
        let mut j = 1usize;
        while j * l <= max_positions {
            let supported = cmp
                .max_supported_len()
                .map(|max| j * l <= max)
                .unwrap_or(true);
            if supported {
                let rs = s.repeat(k_s * j).expect("factor >= 1");
                let rt = t.repeat(k_t * j).expect("factor >= 1");
                if let Ok(ord) = cmp.compare_equal(&rs, &rt) {
                    evaluated = true;
                    match first {
                        None => first = Some(ord),
                        Some(expected) if expected != ord => {
                            violation = Some(ReplicationWitness {
                                left: s.clone(),
                                right: t.clone(),
                                factor: j,
                                first: expected,
                                observed: ord,
                            });
                            break;
                        }
                        Some(_) => {}
                    }
                }
            }
            j += 1;
        }
        if evaluated {
            tested += 1;
        } else {
            skipped += 1;
        }
        if violation.is_some() {
            return (tested, skipped, violation);
        }
    }
    (tested, skipped, None)
}
