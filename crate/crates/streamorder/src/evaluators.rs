//! A catalogue of concrete equal-length comparators.
//!
//! Some satisfy the whole axiom system (mean, and sum once lifted), others
//! are engineered to break specific axioms: `min` breaks concatenation
//! monotonicity, `discounted_mean` breaks permutation invariance. `leximin`
//! is a compliant order distinct from the mean order. All score comparisons
//! are exact rationals; no decision anywhere uses floating point.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::domain::{Ordering, Sequence};
use crate::error::{Error, Result};
use crate::lifting::EqualLengthComparator;

/// Exact rational scores. Always in lowest terms with positive denominator
/// (maintained by the underlying representation).
pub type Rational = BigRational;

/// Renders a rational as `num/den` in lowest terms, integers without `/1`.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `"3"`, `"-3"`, or `"num/den"`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let invalid = || Error::InvalidRational {
        text: text.to_string(),
    };
    let mut parts = text.splitn(2, '/');
    let numer = BigInt::from_str(parts.next().ok_or_else(invalid)?.trim()).map_err(|_| invalid())?;
    let denom = match parts.next() {
        Some(d) => BigInt::from_str(d.trim()).map_err(|_| invalid())?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(invalid());
    }
    Ok(Rational::new(numer, denom))
}

/// Which evaluator to instantiate, with parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum EvaluatorSpec {
    Mean,
    Sum,
    Min,
    Leximin,
    DiscountedMean(Rational),
}

impl EvaluatorSpec {
    /// The built-in evaluators exercised by audits, with the default
    /// discount of 1/2.
    pub fn catalogue() -> Vec<EvaluatorSpec> {
        vec![
            EvaluatorSpec::Mean,
            EvaluatorSpec::Sum,
            EvaluatorSpec::Min,
            EvaluatorSpec::Leximin,
            EvaluatorSpec::DiscountedMean(Rational::new(BigInt::one(), BigInt::from(2))),
        ]
    }
}

impl fmt::Display for EvaluatorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvaluatorSpec::Mean => f.write_str("mean"),
            EvaluatorSpec::Sum => f.write_str("sum"),
            EvaluatorSpec::Min => f.write_str("min"),
            EvaluatorSpec::Leximin => f.write_str("leximin"),
            EvaluatorSpec::DiscountedMean(d) => {
                write!(f, "discounted_mean:{}", format_rational(d))
            }
        }
    }
}

impl FromStr for EvaluatorSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mean" => Ok(EvaluatorSpec::Mean),
            "sum" => Ok(EvaluatorSpec::Sum),
            "min" => Ok(EvaluatorSpec::Min),
            "leximin" => Ok(EvaluatorSpec::Leximin),
            other => {
                if let Some(param) = other.strip_prefix("discounted_mean:") {
                    let delta = parse_rational(param)?;
                    validate_discount(&delta)?;
                    Ok(EvaluatorSpec::DiscountedMean(delta))
                } else {
                    Err(Error::InvalidEvaluator {
                        spec: other.to_string(),
                    })
                }
            }
        }
    }
}

fn validate_discount(delta: &Rational) -> Result<()> {
    if delta <= &Rational::zero() || delta >= &Rational::one() {
        return Err(Error::InvalidDiscount {
            value: format_rational(delta),
        });
    }
    Ok(())
}

/// Sum of utilities as an exact rational.
pub fn score_sum(s: &Sequence) -> Rational {
    let total: BigInt = s.utilities().map(BigInt::from).sum();
    Rational::from_integer(total)
}

/// Mean utility as an exact rational.
pub fn score_mean(s: &Sequence) -> Rational {
    let total: BigInt = s.utilities().map(BigInt::from).sum();
    Rational::new(total, BigInt::from(s.len()))
}

/// Minimum utility.
pub fn score_min(s: &Sequence) -> Rational {
    Rational::from_integer(BigInt::from(s.utilities().min().expect("non-empty")))
}

/// Discount-weighted mean `sum(delta^(i-1) u_i) / sum(delta^(i-1))`.
pub fn score_discounted_mean(s: &Sequence, delta: &Rational) -> Rational {
    let mut weight = Rational::one();
    let mut weighted = Rational::zero();
    let mut total_weight = Rational::zero();
    for u in s.utilities() {
        weighted += &weight * Rational::from_integer(BigInt::from(u));
        total_weight += &weight;
        weight *= delta;
    }
    weighted / total_weight
}

fn check_equal_lengths(s: &Sequence, t: &Sequence) -> Result<()> {
    if s.domain() != t.domain() {
        return Err(Error::DomainMismatch);
    }
    if s.len() != t.len() {
        return Err(Error::LengthMismatch {
            left: s.len(),
            right: t.len(),
        });
    }
    Ok(())
}

/// Compares minimum utilities.
pub fn compare_min(s: &Sequence, t: &Sequence) -> Result<Ordering> {
    check_equal_lengths(s, t)?;
    Ok(Ordering::from_cmp(score_min(s).cmp(&score_min(t))))
}

/// Sorts both utility multisets ascending and compares lexicographically.
pub fn compare_leximin(s: &Sequence, t: &Sequence) -> Result<Ordering> {
    check_equal_lengths(s, t)?;
    let mut left: Vec<i64> = s.utilities().collect();
    let mut right: Vec<i64> = t.utilities().collect();
    left.sort_unstable();
    right.sort_unstable();
    Ok(Ordering::from_cmp(left.cmp(&right)))
}

/// Compares normalized discounted scores.
pub fn compare_discounted_mean(s: &Sequence, t: &Sequence, delta: &Rational) -> Result<Ordering> {
    check_equal_lengths(s, t)?;
    validate_discount(delta)?;
    Ok(Ordering::from_cmp(
        score_discounted_mean(s, delta).cmp(&score_discounted_mean(t, delta)),
    ))
}

struct ScoreComparator {
    spec: EvaluatorSpec,
}

impl ScoreComparator {
    fn score_of(&self, s: &Sequence) -> Rational {
        match &self.spec {
            EvaluatorSpec::Mean => score_mean(s),
            EvaluatorSpec::Sum => score_sum(s),
            EvaluatorSpec::Min => score_min(s),
            EvaluatorSpec::DiscountedMean(delta) => score_discounted_mean(s, delta),
            EvaluatorSpec::Leximin => unreachable!("leximin is not score-based"),
        }
    }
}

impl EqualLengthComparator for ScoreComparator {
    fn name(&self) -> String {
        self.spec.to_string()
    }

    fn compare_equal(&self, s: &Sequence, t: &Sequence) -> Result<Ordering> {
        check_equal_lengths(s, t)?;
        Ok(Ordering::from_cmp(self.score_of(s).cmp(&self.score_of(t))))
    }

    fn score(&self, s: &Sequence) -> Option<Rational> {
        Some(self.score_of(s))
    }
}

struct LeximinComparator;

impl EqualLengthComparator for LeximinComparator {
    fn name(&self) -> String {
        "leximin".to_string()
    }

    fn compare_equal(&self, s: &Sequence, t: &Sequence) -> Result<Ordering> {
        compare_leximin(s, t)
    }
}

/// Instantiates an equal-length comparator from a spec. Score-based
/// evaluators never return `Incomparable`.
pub fn make_comparator(spec: &EvaluatorSpec) -> Result<Arc<dyn EqualLengthComparator>> {
    match spec {
        EvaluatorSpec::Leximin => Ok(Arc::new(LeximinComparator)),
        EvaluatorSpec::DiscountedMean(delta) => {
            validate_discount(delta)?;
            Ok(Arc::new(ScoreComparator { spec: spec.clone() }))
        }
        _ => Ok(Arc::new(ScoreComparator { spec: spec.clone() })),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::DomainSpec;
    use std::sync::Arc;

    fn domain() -> Arc<DomainSpec> {
        DomainSpec::from_utilities(&[("u0", 0), ("u1", 1), ("u2", 2), ("u3", 3), ("u5", 5)])
            .unwrap()
    }

    fn seq(lit: &str) -> Sequence {
        Sequence::parse(domain(), lit).unwrap()
    }

    fn rat(text: &str) -> Rational {
        parse_rational(text).unwrap()
    }

    #[test]
    fn mean_hand_values() {
        assert_eq!(score_mean(&seq("u1,u2")), rat("3/2"));
        assert_eq!(score_mean(&seq("u1,u2,u3")), rat("2"));
        let s = seq("u0,u2,u5");
        for n in 1..=4 {
            assert_eq!(score_mean(&s.repeat(n).unwrap()), score_mean(&s));
        }
    }

    #[test]
    fn sum_hand_values() {
        assert_eq!(score_sum(&seq("u1,u2")), rat("3"));
        assert_eq!(score_sum(&seq("u1,u2,u1,u2,u1,u2")), rat("9"));
    }

    #[test]
    fn min_comparator_values() {
        assert_eq!(
            compare_min(&seq("u0,u5"), &seq("u1,u1")).unwrap(),
            Ordering::Less
        );
        let s = seq("u2,u0,u3");
        assert_eq!(compare_min(&s, &s).unwrap(), Ordering::Equivalent);
        assert!(matches!(
            compare_min(&seq("u0"), &seq("u0,u1")),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn min_breaks_concat_monotonicity() {
        // sigma = (0): sigma' = (1) precedes sigma'' = (2), but both
        // prefixed pairs have minimum 0.
        let sigma = seq("u0");
        let s1 = seq("u1");
        let s2 = seq("u2");
        assert_eq!(compare_min(&s1, &s2).unwrap(), Ordering::Less);
        let left = sigma.concat(&s1).unwrap();
        let right = sigma.concat(&s2).unwrap();
        assert_eq!(compare_min(&left, &right).unwrap(), Ordering::Equivalent);
    }

    #[test]
    fn leximin_hand_values() {
        assert_eq!(
            compare_leximin(&seq("u0,u3"), &seq("u1,u1")).unwrap(),
            Ordering::Less
        );
        assert_eq!(
            compare_leximin(&seq("u1,u2"), &seq("u2,u1")).unwrap(),
            Ordering::Equivalent
        );
        assert_eq!(
            compare_leximin(&seq("u1,u2"), &seq("u1,u2")).unwrap(),
            Ordering::Equivalent
        );
    }

    #[test]
    fn discounted_mean_breaks_anonymity() {
        let half = rat("1/2");
        assert_eq!(score_discounted_mean(&seq("u0,u1"), &half), rat("1/3"));
        assert_eq!(score_discounted_mean(&seq("u1,u0"), &half), rat("2/3"));
        assert_eq!(
            compare_discounted_mean(&seq("u0,u1"), &seq("u1,u0"), &half).unwrap(),
            Ordering::Less
        );
        let c = seq("u2,u2,u2");
        assert_eq!(
            compare_discounted_mean(&c, &c, &half).unwrap(),
            Ordering::Equivalent
        );
    }

    #[test]
    fn discounted_mean_orders_singletons_by_utility() {
        for delta in ["1/2", "1/3", "9/10"] {
            assert_eq!(
                compare_discounted_mean(&seq("u1"), &seq("u3"), &rat(delta)).unwrap(),
                Ordering::Less
            );
        }
    }

    #[test]
    fn spec_parsing() {
        assert_eq!("mean".parse::<EvaluatorSpec>().unwrap(), EvaluatorSpec::Mean);
        assert_eq!(
            "discounted_mean:1/2".parse::<EvaluatorSpec>().unwrap(),
            EvaluatorSpec::DiscountedMean(rat("1/2"))
        );
        assert!("discounted_mean:3/2".parse::<EvaluatorSpec>().is_err());
        assert!("discounted_mean:0".parse::<EvaluatorSpec>().is_err());
        assert!("median".parse::<EvaluatorSpec>().is_err());
        for spec in EvaluatorSpec::catalogue() {
            assert_eq!(spec.to_string().parse::<EvaluatorSpec>().unwrap(), spec);
        }
    }

    #[test]
    fn rational_formatting() {
        assert_eq!(format_rational(&rat("3/2")), "3/2");
        assert_eq!(format_rational(&rat("4/2")), "2");
        assert_eq!(format_rational(&rat("-6/4")), "-3/2");
        assert_eq!(format_rational(&rat("0")), "0");
    }

    #[test]
    fn min_singletons_agree_with_base_order() {
        let d = domain();
        let min = make_comparator(&EvaluatorSpec::Min).unwrap();
        for i in 0..d.len() {
            for j in 0..d.len() {
                let s = Sequence::singleton(d.clone(), i).unwrap();
                let t = Sequence::singleton(d.clone(), j).unwrap();
                assert_eq!(
                    min.compare_equal(&s, &t).unwrap(),
                    Ordering::from_cmp(d.base_cmp(i, j))
                );
            }
        }
    }

    #[test]
    fn score_comparators_expose_scores() {
        let mean = make_comparator(&EvaluatorSpec::Mean).unwrap();
        assert_eq!(mean.score(&seq("u1,u2")), Some(rat("3/2")));
        let leximin = make_comparator(&EvaluatorSpec::Leximin).unwrap();
        assert_eq!(leximin.score(&seq("u1,u2")), None);
    }

    #[test]
    fn exactness_defeats_floating_point() {
        let d = DomainSpec::from_utilities(&[
            ("lo", 1_000_000_000_000_000),
            ("hi", 1_000_000_000_000_001),
        ])
        .unwrap();
        let mean = make_comparator(&EvaluatorSpec::Mean).unwrap();
        let lo = Sequence::singleton_label(d.clone(), "lo").unwrap();
        let hi = Sequence::singleton_label(d, "hi").unwrap();
        assert_eq!(mean.compare_equal(&lo, &hi).unwrap(), Ordering::Less);
    }
}
