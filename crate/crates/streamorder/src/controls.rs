//! Engineered non-compliant table comparators used to prove the audit
//! engine actually detects violations.

use num_rational::BigRational;

use crate::domain::{DomainSpec, Ordering, Sequence};
use crate::evaluators::score_mean;
use crate::lifting::{enumerate_items, TableComparator};

fn mean_order(s: &Sequence, t: &Sequence) -> Ordering {
    let (a, b): (BigRational, BigRational) = (score_mean(s), score_mean(t));
    Ordering::from_cmp(a.cmp(&b))
}

/// Ranks the singletons of a two-element domain against the base order:
/// despite a < b, the table says {a} is Greater. Trips `A1_1`.
pub fn pareto_flip() -> TableComparator {
    let domain = DomainSpec::from_utilities(&[("a", 0), ("b", 1)]).expect("valid domain");
    let a = Sequence::singleton_label(domain.clone(), "a").expect("label");
    let b = Sequence::singleton_label(domain.clone(), "b").expect("label");
    TableComparator::from_entries(
        "pareto_flip",
        domain,
        1,
        vec![(a, b, Ordering::Greater)],
    )
    .expect("consistent table")
}

/// Mean order on lengths 1-3, the converse of the mean order at length 4:
/// the answer flips between replication factors. Trips
/// `replication_invariance` and the strategy-agreement part of
/// `F8_consistency`.
pub fn replication_break() -> TableComparator {
    let domain = DomainSpec::from_utilities(&[("a", 0), ("b", 1)]).expect("valid domain");
    let mut entries = Vec::new();
    for len in 1..=4usize {
        let seqs: Vec<Sequence> = enumerate_items(domain.len(), len)
            .map(|items| Sequence::new(domain.clone(), items).expect("non-empty"))
            .collect();
        for s in &seqs {
            for t in &seqs {
                let ord = mean_order(s, t);
                let ord = if len == 4 { ord.converse() } else { ord };
                entries.push((s.clone(), t.clone(), ord));
            }
        }
    }
    TableComparator::from_entries("replication_break", domain, 4, entries)
        .expect("consistent table")
}

/// A three-cycle on the singletons of a three-element domain:
/// {a} ≺ {b} ≺ {c} ≺ {a}. Trips `sanity_strict_order` (transitivity).
pub fn three_cycle() -> TableComparator {
    let domain =
        DomainSpec::from_utilities(&[("a", 0), ("b", 1), ("c", 2)]).expect("valid domain");
    let a = Sequence::singleton_label(domain.clone(), "a").expect("label");
    let b = Sequence::singleton_label(domain.clone(), "b").expect("label");
    let c = Sequence::singleton_label(domain.clone(), "c").expect("label");
    TableComparator::from_entries(
        "three_cycle",
        domain,
        1,
        vec![
            (a.clone(), b.clone(), Ordering::Less),
            (b, c.clone(), Ordering::Less),
            (c, a, Ordering::Less),
        ],
    )
    .expect("consistent table")
}
