//! Sorted integer multisets with bidegree bookkeeping.
//!
//! A multiset is stored as a non-decreasing `Vec<i64>`. Equal values are
//! interchangeable, so "remove the largest element" and similar operations are
//! well defined on values alone.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::values::ValueSet;
use crate::{Error, Result};

/// Graded degree `(q, c)`: cardinality and sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Bidegree {
    pub q: usize,
    pub c: i64,
}

impl Bidegree {
    pub fn new(q: usize, c: i64) -> Self {
        Bidegree { q, c }
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.q, self.c)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<i64>", into = "Vec<i64>")]
pub struct Multiset(Vec<i64>);

impl From<Vec<i64>> for Multiset {
    fn from(mut items: Vec<i64>) -> Self {
        items.sort_unstable();
        Multiset(items)
    }
}

impl From<Multiset> for Vec<i64> {
    fn from(m: Multiset) -> Self {
        m.0
    }
}

impl FromIterator<i64> for Multiset {
    fn from_iter<T: IntoIterator<Item = i64>>(iter: T) -> Self {
        Multiset::from(iter.into_iter().collect::<Vec<_>>())
    }
}

impl fmt::Display for Multiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

impl Multiset {
    pub fn new() -> Self {
        Multiset(Vec::new())
    }

    /// Builds a multiset from a slice in any order.
    pub fn of(items: &[i64]) -> Self {
        Multiset::from(items.to_vec())
    }

    /// `count` copies of `value`.
    pub fn repeat(value: i64, count: usize) -> Self {
        Multiset(vec![value; count])
    }

    pub fn items(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn least(&self) -> Option<i64> {
        self.0.first().copied()
    }

    pub fn greatest(&self) -> Option<i64> {
        self.0.last().copied()
    }

    pub fn contains(&self, x: i64) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    pub fn count(&self, x: i64) -> usize {
        let lo = self.0.partition_point(|&v| v < x);
        let hi = self.0.partition_point(|&v| v <= x);
        hi - lo
    }

    pub fn sum(&self) -> Result<i64> {
        self.0
            .iter()
            .try_fold(0i64, |acc, &x| acc.checked_add(x))
            .ok_or(Error::Overflow("multiset sum"))
    }

    pub fn bidegree(&self) -> Result<Bidegree> {
        Ok(Bidegree::new(self.len(), self.sum()?))
    }

    /// `m(P) = Σ i·x_i` over the sorted items, 1-based.
    pub fn m(&self) -> Result<i64> {
        weighted_sum(self.0.iter().enumerate().map(|(i, &x)| (i as i64 + 1, x)))
    }

    /// `m̃(D) = Σ (p+1-i)·x_i` over the sorted items, `p = |D|`.
    pub fn m_tilde(&self) -> Result<i64> {
        let p = self.len() as i64;
        weighted_sum(self.0.iter().enumerate().map(|(i, &x)| (p - i as i64, x)))
    }

    pub fn add(&self, other: &Multiset) -> Multiset {
        let mut out = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            if self.0[i] <= other.0[j] {
                out.push(self.0[i]);
                i += 1;
            } else {
                out.push(other.0[j]);
                j += 1;
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Multiset(out)
    }

    /// `self - other`; fails unless `other ⊆ self` with multiplicity.
    pub fn subtract(&self, other: &Multiset) -> Result<Multiset> {
        let mut out = Vec::with_capacity(self.len());
        let mut j = 0;
        for &x in &self.0 {
            if j < other.0.len() && other.0[j] == x {
                j += 1;
            } else if j < other.0.len() && other.0[j] < x {
                break;
            } else {
                out.push(x);
            }
        }
        if j < other.0.len() {
            return Err(Error::NotSubmultiset {
                sub: other.0.clone(),
                of: self.0.clone(),
            });
        }
        Ok(Multiset(out))
    }

    pub fn insert(&mut self, x: i64) {
        let at = self.0.partition_point(|&v| v <= x);
        self.0.insert(at, x);
    }

    /// Removes one copy of `x`, returning whether it was present.
    pub fn remove_one(&mut self, x: i64) -> bool {
        match self.0.binary_search(&x) {
            Ok(i) => {
                self.0.remove(i);
                true
            }
            Err(_) => false,
        }
    }

    pub fn pop_max(&mut self) -> Option<i64> {
        self.0.pop()
    }

    pub fn pop_min(&mut self) -> Option<i64> {
        if self.0.is_empty() {
            None
        } else {
            Some(self.0.remove(0))
        }
    }

    /// Whether the two multisets share at least one value.
    pub fn intersects(&self, other: &Multiset) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return true,
            }
        }
        false
    }

    pub fn support(&self) -> BTreeSet<i64> {
        self.0.iter().copied().collect()
    }

    /// Whether every element lies in `v`.
    pub fn supported_in(&self, v: &ValueSet) -> bool {
        self.0.iter().all(|&x| v.contains(x))
    }

    /// Element-wise negation.
    pub fn negate(&self) -> Result<Multiset> {
        let mut out = Vec::with_capacity(self.len());
        for &x in self.0.iter().rev() {
            out.push(x.checked_neg().ok_or(Error::Overflow("negate"))?);
        }
        Ok(Multiset(out))
    }

    /// Multiplicity of each element of `v`, in the order of `v`.
    pub fn multiplicities(&self, v: &ValueSet) -> Result<Vec<usize>> {
        let mut out = vec![0; v.len()];
        for &x in &self.0 {
            out[v.index_of(x)?] += 1;
        }
        Ok(out)
    }
}

fn weighted_sum(terms: impl Iterator<Item = (i64, i64)>) -> Result<i64> {
    let mut acc = 0i64;
    for (w, x) in terms {
        acc = w
            .checked_mul(x)
            .and_then(|t| acc.checked_add(t))
            .ok_or(Error::Overflow("weighted sum"))?;
    }
    Ok(acc)
}
