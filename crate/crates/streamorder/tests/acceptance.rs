//! Acceptance suite. Each test prints one pass line for its criterion;
//! a failed assertion marks the criterion as failed.

use std::io::Write;
use std::sync::Arc;
use std::time::Instant;

use streamorder::audit::{run_audit, AuditOptions, CheckId, CheckStatus, UniverseBound};
use streamorder::controls;
use streamorder::domain::{DomainSpec, Ordering, Sequence};
use streamorder::evaluators::{make_comparator, EvaluatorSpec};
use streamorder::lifting::{EqualLengthComparator, LiftedComparator, Strategy};

fn u012() -> Arc<DomainSpec> {
    DomainSpec::from_utilities(&[("u0", 0), ("u1", 1), ("u2", 2)]).unwrap()
}

/// Every sequence of length 1..=max_len over the domain.
fn enumerate(domain: &Arc<DomainSpec>, max_len: usize) -> Vec<Sequence> {
    UniverseBound::new(domain.clone(), max_len).unwrap().enumerate()
}

#[test]
fn criterion_1_replication_matches_the_worked_example() {
    // comparing a length-2 and a length-3 stream replicates them 3x and 2x
    // to common length 6, under both strategies
    let domain = DomainSpec::from_utilities(&[("a", 1), ("b", 2), ("c", 3)]).unwrap();
    let s = Sequence::parse(domain.clone(), "a,b").unwrap();
    let t = Sequence::parse(domain, "a,b,c").unwrap();
    let mean = make_comparator(&EvaluatorSpec::Mean).unwrap();
    for strategy in [Strategy::Lcm, Strategy::Product] {
        let cert = LiftedComparator::new(mean.clone(), strategy)
            .certificate(&s, &t)
            .unwrap();
        assert_eq!(cert.left_factor, 3, "{strategy}");
        assert_eq!(cert.right_factor, 2, "{strategy}");
        assert_eq!(cert.common_length, 6, "{strategy}");
        assert_eq!(cert.left_replicated, "a,b,a,b,a,b", "{strategy}");
        assert_eq!(cert.right_replicated, "a,b,c,a,b,c", "{strategy}");
    }
    // the CLI certificate shows the same replication
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(
        br#"{"elements":[{"label":"a","utility":1},{"label":"b","utility":2},{"label":"c","utility":3}]}"#,
    )
    .unwrap();
    for strategy in ["lcm", "product"] {
        let out = std::process::Command::new(env!("CARGO_BIN_EXE_streamorder"))
            .args([
                "compare",
                "--domain",
                f.path().to_str().unwrap(),
                "--evaluator",
                "mean",
                "a,b",
                "a,b,c",
                "--strategy",
                strategy,
            ])
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0));
        let text = String::from_utf8(out.stdout).unwrap();
        assert!(text.contains("common length: 6"), "{strategy}: {text}");
        assert!(text.contains("factor 3"), "{strategy}: {text}");
        assert!(text.contains("factor 2"), "{strategy}: {text}");
    }
    println!("PASS criterion 1: replication certificate shows 3x/2x to common length 6 under lcm and product");
}

#[test]
fn criterion_2_mean_full_compliance_run() {
    let start = Instant::now();
    let bound = UniverseBound::new(u012(), 3).unwrap();
    let mean = make_comparator(&EvaluatorSpec::Mean).unwrap();
    let report = run_audit(&mean, &bound, &AuditOptions::default()).unwrap();
    assert_eq!(report.checks.len(), CheckId::all().len());
    for c in &report.checks {
        assert_eq!(
            c.status,
            CheckStatus::HoldsOnUniverse,
            "{} -> {:?}",
            c.id,
            c.witness
        );
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 10, "took {elapsed:?}");
    println!(
        "PASS criterion 2: mean audit at max_len 3 holds on every check in {:?}",
        elapsed
    );
}

#[test]
fn criterion_3_designed_violations_with_canonical_witnesses() {
    // (a) min violates A2_2 with witness sigma=(u0), sigma'=(u1), sigma''=(u2)
    let bound = UniverseBound::new(u012(), 3).unwrap();
    let min = make_comparator(&EvaluatorSpec::Min).unwrap();
    let report = run_audit(&min, &bound, &AuditOptions::default()).unwrap();
    let a22 = report.outcome(CheckId::A2_2).unwrap();
    assert_eq!(a22.status, CheckStatus::Violated);
    let w = a22.witness.as_ref().unwrap();
    assert_eq!(w.sigma.as_deref(), Some("u0"));
    assert_eq!(w.sigma_prime.as_deref(), Some("u1"));
    assert_eq!(w.sigma_dprime.as_deref(), Some("u2"));
    assert_eq!(w.observed, vec!["Less", "Equivalent"]);

    // (b) discounted_mean:1/2 violates A3 with witness (0,1) vs (1,0) and
    // exact scores 1/3 vs 2/3
    let discounted = make_comparator(&"discounted_mean:1/2".parse().unwrap()).unwrap();
    let report = run_audit(&discounted, &bound, &AuditOptions::default()).unwrap();
    let a3 = report.outcome(CheckId::A3).unwrap();
    assert_eq!(a3.status, CheckStatus::Violated);
    let w = a3.witness.as_ref().unwrap();
    assert_eq!(w.sigma.as_deref(), Some("u0"));
    assert_eq!(w.sigma_prime.as_deref(), Some("u1"));
    assert_eq!(w.observed, vec!["Less"]);
    assert_eq!(w.scores, Some(vec!["1/3".to_string(), "2/3".to_string()]));

    // (c) the three negative-control tables trigger their intended
    // failures, and never each other's signature checks
    let signature = |report: &streamorder::audit::AuditReport, id: CheckId| {
        report.outcome(id).unwrap().status == CheckStatus::Violated
    };

    let pareto: Arc<dyn EqualLengthComparator> = Arc::new(controls::pareto_flip());
    let b1 = UniverseBound::new(controls::pareto_flip().domain().clone(), 1).unwrap();
    let r1 = run_audit(&pareto, &b1, &AuditOptions::default()).unwrap();
    assert!(signature(&r1, CheckId::A1_1));
    let w = r1.outcome(CheckId::A1_1).unwrap().witness.as_ref().unwrap().clone();
    assert_eq!(w.sigma.as_deref(), Some("a"));
    assert_eq!(w.sigma_prime.as_deref(), Some("b"));
    assert!(!signature(&r1, CheckId::ReplicationInvariance));
    assert!(!signature(&r1, CheckId::SanityStrictOrder));

    let repl: Arc<dyn EqualLengthComparator> = Arc::new(controls::replication_break());
    let b2 = UniverseBound::new(controls::replication_break().domain().clone(), 2).unwrap();
    let r2 = run_audit(&repl, &b2, &AuditOptions::default()).unwrap();
    assert!(signature(&r2, CheckId::ReplicationInvariance));
    assert!(signature(&r2, CheckId::F8_consistency));
    assert!(!signature(&r2, CheckId::A1_1));
    assert!(!signature(&r2, CheckId::SanityStrictOrder));

    let cycle: Arc<dyn EqualLengthComparator> = Arc::new(controls::three_cycle());
    let b3 = UniverseBound::new(controls::three_cycle().domain().clone(), 1).unwrap();
    let r3 = run_audit(&cycle, &b3, &AuditOptions::default()).unwrap();
    assert!(signature(&r3, CheckId::SanityStrictOrder));
    let w = r3
        .outcome(CheckId::SanityStrictOrder)
        .unwrap()
        .witness
        .as_ref()
        .unwrap()
        .clone();
    assert_eq!(w.sigma.as_deref(), Some("a"));
    assert_eq!(w.sigma_prime.as_deref(), Some("b"));
    assert_eq!(w.sigma_dprime.as_deref(), Some("c"));
    assert!(!signature(&r3, CheckId::ReplicationInvariance));

    println!("PASS criterion 3: min/discounted_mean/negative controls each flagged with their canonical witnesses");
}

#[test]
fn criterion_4_sum_and_mean_lifts_coincide() {
    let mean = LiftedComparator::new(
        make_comparator(&EvaluatorSpec::Mean).unwrap(),
        Strategy::Lcm,
    );
    let sum = LiftedComparator::new(make_comparator(&EvaluatorSpec::Sum).unwrap(), Strategy::Lcm);
    let mut pairs = 0u64;
    for size in 1..=3 {
        let labeled: Vec<(String, i64)> = (0..size).map(|i| (format!("u{i}"), i as i64)).collect();
        let refs: Vec<(&str, i64)> = labeled.iter().map(|(l, u)| (l.as_str(), *u)).collect();
        let domain = DomainSpec::from_utilities(&refs).unwrap();
        let universe = enumerate(&domain, 3);
        for s in &universe {
            for t in &universe {
                assert_eq!(
                    mean.compare(s, t).unwrap(),
                    sum.compare(s, t).unwrap(),
                    "{} vs {}",
                    s,
                    t
                );
                pairs += 1;
            }
        }
    }
    println!("PASS criterion 4: lift(sum) equals lift(mean) on all {pairs} ordered pairs");
}

#[test]
fn criterion_5_lcm_and_product_strategies_agree() {
    let mut pairs = 0u64;
    for size in 1..=3 {
        let labeled: Vec<(String, i64)> = (0..size).map(|i| (format!("u{i}"), i as i64)).collect();
        let refs: Vec<(&str, i64)> = labeled.iter().map(|(l, u)| (l.as_str(), *u)).collect();
        let domain = DomainSpec::from_utilities(&refs).unwrap();
        let universe = enumerate(&domain, 3);
        for spec in EvaluatorSpec::catalogue() {
            let cmp = make_comparator(&spec).unwrap();
            let lcm = LiftedComparator::new(cmp.clone(), Strategy::Lcm);
            let product = LiftedComparator::new(cmp, Strategy::Product);
            for s in &universe {
                for t in &universe {
                    assert_eq!(
                        lcm.compare(s, t).unwrap(),
                        product.compare(s, t).unwrap(),
                        "{spec}: {s} vs {t}"
                    );
                    pairs += 1;
                }
            }
        }
    }
    println!("PASS criterion 5: lcm and product lifts agree for every catalogue evaluator ({pairs} comparisons)");
}

#[test]
fn criterion_6_no_internal_inconsistencies_when_axioms_hold() {
    let bound = UniverseBound::new(u012(), 3).unwrap();
    for spec in [EvaluatorSpec::Mean, EvaluatorSpec::Leximin] {
        let cmp = make_comparator(&spec).unwrap();
        let report = run_audit(&cmp, &bound, &AuditOptions::default()).unwrap();
        for id in [
            CheckId::A1_1,
            CheckId::A1_2,
            CheckId::A2_1,
            CheckId::A2_2,
            CheckId::A2_3,
            CheckId::A3,
        ] {
            assert_eq!(
                report.outcome(id).unwrap().status,
                CheckStatus::HoldsOnUniverse,
                "{spec}: {id}"
            );
        }
        assert!(
            report.internal_inconsistencies.is_empty(),
            "{spec}: {:?}",
            report.internal_inconsistencies
        );
    }
    println!("PASS criterion 6: axiom-compliant runs (mean, leximin) report zero internal inconsistencies");
}

#[test]
fn criterion_7_reports_are_byte_identical_across_worker_counts() {
    let bound = UniverseBound::new(u012(), 3).unwrap();
    let min = make_comparator(&EvaluatorSpec::Min).unwrap();
    let mut jsons = Vec::new();
    for workers in [1, 3] {
        let opts = AuditOptions {
            workers,
            ..AuditOptions::default()
        };
        jsons.push(run_audit(&min, &bound, &opts).unwrap().to_json());
    }
    assert_eq!(jsons[0].as_bytes(), jsons[1].as_bytes());
    println!("PASS criterion 7: audit reports byte-identical with 1 and 3 workers");
}

#[test]
fn criterion_8_exact_arithmetic_defeats_floating_point() {
    let domain = DomainSpec::from_utilities(&[
        ("lo", 1_000_000_000_000_000),
        ("hi", 1_000_000_000_000_001),
    ])
    .unwrap();
    let lo = Sequence::singleton_label(domain.clone(), "lo").unwrap();
    let hi = Sequence::singleton_label(domain, "hi").unwrap();
    for spec in EvaluatorSpec::catalogue() {
        let cmp = make_comparator(&spec).unwrap();
        let lifted = LiftedComparator::new(cmp, Strategy::Lcm);
        assert_eq!(lifted.compare(&lo, &hi).unwrap(), Ordering::Less, "{spec}");
        // the float path would see these as equal
        assert_eq!(1_000_000_000_000_000f64, 1_000_000_000_000_001f64 - 1.0);
    }
    println!("PASS criterion 8: utilities 10^15 and 10^15+1 still order strictly under every evaluator");
}
