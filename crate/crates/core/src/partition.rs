//! Integer partitions and the Young-diagram operations the Schur engine needs.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("parts must be weakly decreasing: {0:?}")]
    NotDecreasing(Vec<usize>),
    #[error("invalid partition syntax {0:?}")]
    Syntax(String),
}

/// A weakly decreasing sequence of positive integers, stored without
/// trailing zeros. The empty partition is a valid value.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Builds a partition, dropping trailing zeros.
    pub fn new(mut parts: Vec<usize>) -> Result<Self, PartitionError> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(PartitionError::NotDecreasing(parts));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// The one-row partition `(r)`; empty for `r = 0`.
    pub fn row(r: usize) -> Self {
        if r == 0 {
            Self::empty()
        } else {
            Partition { parts: vec![r] }
        }
    }

    /// The one-column partition `(1^r)`.
    pub fn column(r: usize) -> Self {
        Partition { parts: vec![1; r] }
    }

    /// `(a, 1^b)`; with `a = 0` this is the empty partition.
    pub fn hook(a: usize, b: usize) -> Self {
        if a == 0 {
            return Self::empty();
        }
        let mut parts = vec![a];
        parts.extend(std::iter::repeat(1).take(b));
        Partition { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Part `i` (0-based), zero past the end.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Transpose of the Young diagram.
    pub fn conjugate(&self) -> Partition {
        let cols = self.part(0);
        let parts = (0..cols)
            .map(|j| self.parts.iter().take_while(|&&p| p > j).count())
            .collect();
        Partition { parts }
    }

    /// True iff the diagram of `self` contains the diagram of `other`.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.parts.iter().zip(&self.parts).all(|(o, s)| s >= o)
    }

    /// All partitions obtained by adding `r` boxes, no two in the same column.
    /// Returned in decreasing lexicographic order.
    pub fn pieri_row(&self, r: usize) -> Vec<Partition> {
        // row i may grow by at most part(i-1) - part(i); the row below the last
        // part may receive up to part(last) boxes.
        let rows = self.len() + 1;
        let mut out = Vec::new();
        let mut cur = self.parts.clone();
        cur.push(0);
        fn rec(
            base: &Partition,
            i: usize,
            rows: usize,
            left: usize,
            cur: &mut Vec<usize>,
            out: &mut Vec<Partition>,
        ) {
            if i == rows {
                if left == 0 {
                    out.push(Partition::new(cur.clone()).expect("horizontal strip keeps order"));
                }
                return;
            }
            let cap = if i == 0 { left } else { base.part(i - 1) - base.part(i) };
            for add in (0..=cap.min(left)).rev() {
                cur[i] = base.part(i) + add;
                rec(base, i + 1, rows, left - add, cur, out);
            }
            cur[i] = base.part(i);
        }
        rec(self, 0, rows, r, &mut cur, &mut out);
        out
    }

    /// All partitions of `n` in decreasing lexicographic order.
    pub fn all_of(n: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(left: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if left == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for p in (1..=left.min(max)).rev() {
                cur.push(p);
                rec(left - p, p, cur, out);
                cur.pop();
            }
        }
        rec(n, n, &mut cur, &mut out);
        out
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = PartitionError;

    fn try_from(parts: Vec<usize>) -> Result<Self, Self::Error> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

/// Comma-separated parts; the empty partition prints as `0`.
impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "0");
        }
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = PartitionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let inner = s
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .unwrap_or(s)
            .trim();
        if inner.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = inner
            .split(',')
            .map(|t| t.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| PartitionError::Syntax(s.to_string()))?;
        Partition::new(parts)
    }
}

#[macro_export]
macro_rules! partition {
    () => { $crate::partition::Partition::empty() };
    ($($p:expr),+ $(,)?) => {
        $crate::partition::Partition::new(vec![$($p),+]).expect("literal partition")
    };
}
