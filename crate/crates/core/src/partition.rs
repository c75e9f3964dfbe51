//! Integer partitions: the index set of every symmetric-function basis.
//!
//! A partition of `n` is a multiset of positive integers written in weakly
//! decreasing order. Partitions are immutable value types with structural
//! equality and a total hash, so they can serve as map keys everywhere.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PartitionError {
    #[error("partition parts must be positive, got {0}")]
    NonPositivePart(i64),
    #[error("lexicographic order is only defined for partitions of the same n: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("cannot parse partition from {0:?}")]
    Parse(String),
}

/// A partition of `n`: weakly decreasing positive parts. The empty partition
/// (of 0) is allowed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<usize>,
    n: usize,
}

impl Partition {
    /// Builds a partition from a multiset of values in any order.
    pub fn from_multiset<I: IntoIterator<Item = usize>>(values: I) -> Result<Self, PartitionError> {
        let mut parts: Vec<usize> = Vec::new();
        for v in values {
            if v == 0 {
                return Err(PartitionError::NonPositivePart(0));
            }
            parts.push(v);
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let n = parts.iter().sum();
        Ok(Partition { parts, n })
    }

    /// Infallible constructor for literals known to be positive.
    pub fn new(values: &[usize]) -> Self {
        Self::from_multiset(values.iter().copied()).expect("positive parts")
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new(), n: 0 }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// The number being partitioned, `n`.
    pub fn sum(&self) -> usize {
        self.n
    }

    /// The length `l(lambda)`, i.e. the number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Lexicographic comparison, defined only for partitions of the same `n`.
    pub fn lex_compare(&self, other: &Partition) -> Result<Ordering, PartitionError> {
        if self.n != other.n {
            return Err(PartitionError::DegreeMismatch(self.n, other.n));
        }
        Ok(self.parts.cmp(&other.parts))
    }

    /// Multiset difference: the multiplicity of `i` in the result is
    /// `max(m_i(self) - m_i(other), 0)`. Returned weakly decreasing.
    pub fn multiset_difference(&self, other: &Partition) -> Vec<usize> {
        let mut out = Vec::new();
        let mut i = 0;
        let mut j = 0;
        // Both part lists are sorted decreasingly.
        while i < self.parts.len() {
            if j < other.parts.len() && other.parts[j] > self.parts[i] {
                j += 1;
            } else if j < other.parts.len() && other.parts[j] == self.parts[i] {
                i += 1;
                j += 1;
            } else {
                out.push(self.parts[i]);
                i += 1;
            }
        }
        out
    }

    /// Multiplicity `m_i(lambda)`: the number of parts equal to `i`.
    pub fn multiplicity(&self, i: usize) -> usize {
        self.parts.iter().filter(|&&p| p == i).count()
    }

    /// Multiset union, re-sorted.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts: Vec<usize> = self.parts.iter().chain(other.parts.iter()).copied().collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts, n: self.n + other.n }
    }

    pub fn contains(&self, part: usize) -> bool {
        self.parts.contains(&part)
    }

    /// Removes one copy of `part`, if present.
    pub fn remove_one(&self, part: usize) -> Option<Partition> {
        let pos = self.parts.iter().position(|&p| p == part)?;
        let mut parts = self.parts.clone();
        parts.remove(pos);
        let n = self.n - part;
        Some(Partition { parts, n })
    }

    /// All partitions of `n` in increasing lexicographic order.
    pub fn all_of(n: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut current = Vec::new();
        gen_partitions(n, n, &mut current, &mut out);
        out.sort();
        out
    }
}

fn gen_partitions(n: usize, max: usize, current: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if n == 0 {
        out.push(Partition { parts: current.clone(), n: current.iter().sum() });
        return;
    }
    for p in (1..=n.min(max)).rev() {
        current.push(p);
        gen_partitions(n - p, p, current, out);
        current.pop();
    }
}

// Total order used for map keys: degree first, then lexicographic on parts.
// Within a fixed degree this agrees with the lexicographic order, so BTreeMap
// iteration yields terms in increasing lexicographic order.
impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n.cmp(&other.n).then_with(|| self.parts.cmp(&other.parts))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parses either the text form `(4,2,1)` or the JSON form `[4,2,1]`.
impl FromStr for Partition {
    type Err = PartitionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let inner = if (t.starts_with('(') && t.ends_with(')'))
            || (t.starts_with('[') && t.ends_with(']'))
        {
            &t[1..t.len() - 1]
        } else {
            t
        };
        let inner = inner.trim();
        if inner.is_empty() {
            return Ok(Partition::empty());
        }
        let mut values = Vec::new();
        for tok in inner.split(',') {
            let v: i64 = tok.trim().parse().map_err(|_| PartitionError::Parse(s.to_string()))?;
            if v <= 0 {
                return Err(PartitionError::NonPositivePart(v));
            }
            values.push(v as usize);
        }
        Partition::from_multiset(values)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.parts.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let values = Vec::<i64>::deserialize(deserializer)?;
        if let Some(&bad) = values.iter().find(|&&v| v <= 0) {
            return Err(D::Error::custom(PartitionError::NonPositivePart(bad)));
        }
        Partition::from_multiset(values.into_iter().map(|v| v as usize))
            .map_err(D::Error::custom)
    }
}
