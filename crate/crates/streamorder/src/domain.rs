//! The ordered domain, finite utility streams over it, and the pointwise
//! dominance relations between streams of equal length.

use std::cmp::Ordering as CmpOrdering;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One labeled utility level of the domain.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ElementSpec {
    pub label: String,
    pub utility: i64,
}

/// A finite set of labeled elements with integer utilities. The utilities
/// induce the base total preorder: `x < x'` iff `utility(x) < utility(x')`,
/// with ties (`x ≡ x'`) allowed between distinct labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DomainSpec {
    pub elements: Vec<ElementSpec>,
}

impl DomainSpec {
    pub fn new(elements: Vec<ElementSpec>) -> Result<Arc<Self>> {
        if elements.is_empty() {
            return Err(Error::EmptyDomain);
        }
        for (i, e) in elements.iter().enumerate() {
            if elements[..i].iter().any(|p| p.label == e.label) {
                return Err(Error::DuplicateLabel {
                    label: e.label.clone(),
                });
            }
        }
        Ok(Arc::new(DomainSpec { elements }))
    }

    pub fn from_utilities(pairs: &[(&str, i64)]) -> Result<Arc<Self>> {
        Self::new(
            pairs
                .iter()
                .map(|(l, u)| ElementSpec {
                    label: (*l).to_string(),
                    utility: *u,
                })
                .collect(),
        )
    }

    pub fn from_json_str(text: &str) -> Result<Arc<Self>> {
        let parsed: DomainSpec = serde_json::from_str(text)?;
        Self::new(parsed.elements)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn label(&self, index: usize) -> &str {
        &self.elements[index].label
    }

    pub fn utility(&self, index: usize) -> i64 {
        self.elements[index].utility
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.elements
            .iter()
            .position(|e| e.label == label)
            .ok_or_else(|| Error::UnknownLabel {
                label: label.to_string(),
            })
    }

    /// The base order on elements, by utility.
    pub fn base_cmp(&self, a: usize, b: usize) -> CmpOrdering {
        self.utility(a).cmp(&self.utility(b))
    }
}

/// Four-valued outcome of comparing two streams.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Ordering {
    Less,
    Equivalent,
    Greater,
    Incomparable,
}

impl Ordering {
    /// The outcome with the arguments swapped: Less and Greater are mutually
    /// converse, Equivalent and Incomparable are symmetric.
    pub fn converse(self) -> Ordering {
        match self {
            Ordering::Less => Ordering::Greater,
            Ordering::Greater => Ordering::Less,
            other => other,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Ordering::Less => "Less",
            Ordering::Equivalent => "Equivalent",
            Ordering::Greater => "Greater",
            Ordering::Incomparable => "Incomparable",
        }
    }

    pub fn from_cmp(c: CmpOrdering) -> Ordering {
        match c {
            CmpOrdering::Less => Ordering::Less,
            CmpOrdering::Equal => Ordering::Equivalent,
            CmpOrdering::Greater => Ordering::Greater,
        }
    }
}

impl fmt::Display for Ordering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Ordering {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Less" => Ok(Ordering::Less),
            "Equivalent" => Ok(Ordering::Equivalent),
            "Greater" => Ok(Ordering::Greater),
            "Incomparable" => Ok(Ordering::Incomparable),
            other => Err(Error::InvalidEvaluator {
                spec: other.to_string(),
            }),
        }
    }
}

/// A non-empty finite utility stream: a list of element references into a
/// shared [`DomainSpec`]. Positions are reported 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Sequence {
    domain: Arc<DomainSpec>,
    items: Vec<usize>,
}

impl Sequence {
    pub fn new(domain: Arc<DomainSpec>, items: Vec<usize>) -> Result<Self> {
        if items.is_empty() {
            return Err(Error::EmptySequence);
        }
        let size = domain.len();
        if let Some(&bad) = items.iter().find(|&&i| i >= size) {
            return Err(Error::ElementOutOfRange { index: bad, size });
        }
        Ok(Sequence { domain, items })
    }

    /// The sequence of length 1 containing a single element.
    pub fn singleton(domain: Arc<DomainSpec>, index: usize) -> Result<Self> {
        Self::new(domain, vec![index])
    }

    pub fn singleton_label(domain: Arc<DomainSpec>, label: &str) -> Result<Self> {
        let index = domain.index_of(label)?;
        Self::singleton(domain, index)
    }

    /// Parses a comma-separated label literal such as `"a,b,a"`.
    pub fn parse(domain: Arc<DomainSpec>, literal: &str) -> Result<Self> {
        let mut items = Vec::new();
        for token in literal.split(',') {
            items.push(domain.index_of(token.trim())?);
        }
        Self::new(domain, items)
    }

    pub fn domain(&self) -> &Arc<DomainSpec> {
        &self.domain
    }

    pub fn items(&self) -> &[usize] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn utilities(&self) -> impl Iterator<Item = i64> + '_ {
        self.items.iter().map(move |&i| self.domain.utility(i))
    }

    /// The comma-separated label literal for reports and certificates.
    pub fn literal(&self) -> String {
        self.items
            .iter()
            .map(|&i| self.domain.label(i))
            .collect::<Vec<_>>()
            .join(",")
    }

    fn check_same_domain(&self, other: &Sequence) -> Result<()> {
        if self.domain != other.domain {
            return Err(Error::DomainMismatch);
        }
        Ok(())
    }

    fn check_same_length(&self, other: &Sequence) -> Result<()> {
        self.check_same_domain(other)?;
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(())
    }

    /// `self` followed by `other`.
    pub fn concat(&self, other: &Sequence) -> Result<Sequence> {
        self.check_same_domain(other)?;
        let mut items = self.items.clone();
        items.extend_from_slice(&other.items);
        Ok(Sequence {
            domain: self.domain.clone(),
            items,
        })
    }

    /// `self` concatenated with itself `n` times; `n = 0` is rejected since
    /// empty sequences are excluded.
    pub fn repeat(&self, n: usize) -> Result<Sequence> {
        if n == 0 {
            return Err(Error::ZeroRepeat);
        }
        let mut items = Vec::with_capacity(self.items.len() * n);
        for _ in 0..n {
            items.extend_from_slice(&self.items);
        }
        Ok(Sequence {
            domain: self.domain.clone(),
            items,
        })
    }

    /// True iff `self_i <= other_i` at every position.
    pub fn pointwise_leq(&self, other: &Sequence) -> Result<bool> {
        self.check_same_length(other)?;
        Ok(self
            .utilities()
            .zip(other.utilities())
            .all(|(a, b)| a <= b))
    }

    /// True iff `pointwise_leq` holds with strict inequality at one position.
    pub fn pointwise_lt(&self, other: &Sequence) -> Result<bool> {
        self.check_same_length(other)?;
        let mut strict = false;
        for (a, b) in self.utilities().zip(other.utilities()) {
            if a > b {
                return Ok(false);
            }
            if a < b {
                strict = true;
            }
        }
        Ok(strict)
    }

    /// True iff strict inequality holds at every position.
    pub fn pointwise_ll(&self, other: &Sequence) -> Result<bool> {
        self.check_same_length(other)?;
        Ok(self.utilities().zip(other.utilities()).all(|(a, b)| a < b))
    }

    /// Exchanges the (1-based) positions `i` and `j`.
    pub fn transpose(&self, i: usize, j: usize) -> Result<Sequence> {
        let length = self.len();
        for position in [i, j] {
            if position == 0 || position > length {
                return Err(Error::PositionOutOfRange { position, length });
            }
        }
        let mut items = self.items.clone();
        items.swap(i - 1, j - 1);
        Ok(Sequence {
            domain: self.domain.clone(),
            items,
        })
    }
}

impl fmt::Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.literal())
    }
}
