//! Exact rank of sparse integer row sets by fraction-free elimination.
//!
//! Rows are reduced against stored pivot rows with the cross-multiplication
//! `b·row - a·pivot` (no division by non-units), then divided by their content
//! so entries stay small. Everything is exact `i64` arithmetic with overflow
//! checks.
//!
//! The pivot of a row is its largest column. Difference rows `e_i - e_j` fed
//! in star order (`i` fixed, `j` increasing) are then already in echelon form.

use std::collections::HashMap;

use crate::{Error, Result};

/// Sparse row: `(column, value)` pairs sorted by column, no zero values.
pub type SparseRow = Vec<(usize, i64)>;

/// Incrementally built row echelon basis.
#[derive(Debug, Default)]
pub struct IntegerEchelon {
    pivots: HashMap<usize, SparseRow>,
}

impl IntegerEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Adds a row; returns whether it was independent of the rows so far.
    pub fn insert(&mut self, row: SparseRow) -> Result<bool> {
        let mut row = normalize(row)?;
        loop {
            let Some(&(lead, a)) = row.last() else {
                return Ok(false);
            };
            match self.pivots.get(&lead) {
                None => {
                    self.pivots.insert(lead, row);
                    return Ok(true);
                }
                Some(pivot) => {
                    let b = pivot[pivot.len() - 1].1;
                    row = normalize(combine(&row, b, pivot, a)?)?;
                }
            }
        }
    }
}

/// Rank of the given rows.
pub fn rank(rows: impl IntoIterator<Item = SparseRow>) -> Result<usize> {
    let mut ech = IntegerEchelon::new();
    for row in rows {
        ech.insert(row)?;
    }
    Ok(ech.rank())
}

// b·row - a·pivot, merged by column
fn combine(row: &SparseRow, b: i64, pivot: &SparseRow, a: i64) -> Result<SparseRow> {
    let overflow = || Error::Overflow("elimination");
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let (col, val) = match (row.get(i), pivot.get(j)) {
            (Some(&(ci, vi)), Some(&(cj, vj))) if ci == cj => {
                i += 1;
                j += 1;
                let l = b.checked_mul(vi).ok_or_else(overflow)?;
                let r = a.checked_mul(vj).ok_or_else(overflow)?;
                (ci, l.checked_sub(r).ok_or_else(overflow)?)
            }
            (Some(&(ci, vi)), Some(&(cj, _))) if ci < cj => {
                i += 1;
                (ci, b.checked_mul(vi).ok_or_else(overflow)?)
            }
            (Some(&(ci, vi)), None) => {
                i += 1;
                (ci, b.checked_mul(vi).ok_or_else(overflow)?)
            }
            (_, Some(&(cj, vj))) => {
                j += 1;
                let t = a.checked_mul(vj).ok_or_else(overflow)?;
                (cj, t.checked_neg().ok_or_else(overflow)?)
            }
            (None, None) => unreachable!(),
        };
        if val != 0 {
            out.push((col, val));
        }
    }
    Ok(out)
}

// sorts, merges duplicate columns, drops zeros, divides by the content and
// makes the pivot (last) entry positive
fn normalize(mut row: SparseRow) -> Result<SparseRow> {
    row.sort_unstable_by_key(|&(c, _)| c);
    let mut merged: SparseRow = Vec::with_capacity(row.len());
    for (c, v) in row {
        match merged.last_mut() {
            Some((lc, lv)) if *lc == c => {
                *lv = lv.checked_add(v).ok_or(Error::Overflow("elimination"))?;
            }
            _ => merged.push((c, v)),
        }
    }
    merged.retain(|&(_, v)| v != 0);
    let g = merged.iter().fold(0i64, |g, &(_, v)| gcd(g, v));
    if g > 1 {
        for (_, v) in merged.iter_mut() {
            *v /= g;
        }
    }
    if merged.last().is_some_and(|&(_, v)| v < 0) {
        for (_, v) in merged.iter_mut() {
            *v = -*v;
        }
    }
    Ok(merged)
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a as i64
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Dense Bareiss elimination, kept independent of the sparse path.
    fn bareiss_rank(mut m: Vec<Vec<i128>>) -> usize {
        let rows = m.len();
        let cols = m.first().map_or(0, Vec::len);
        let mut rank = 0;
        let mut prev = 1i128;
        for col in 0..cols {
            let Some(p) = (rank..rows).find(|&r| m[r][col] != 0) else {
                continue;
            };
            m.swap(rank, p);
            for r in rank + 1..rows {
                for c in col + 1..cols {
                    m[r][c] = (m[rank][col] * m[r][c] - m[r][col] * m[rank][c]) / prev;
                }
                m[r][col] = 0;
            }
            prev = m[rank][col];
            rank += 1;
        }
        rank
    }

    fn sparse(row: &[i64]) -> SparseRow {
        row.iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(|(c, &v)| (c, v))
            .collect()
    }

    #[test]
    fn small_ranks() {
        let rows = [vec![1, -1, 0], vec![0, 1, -1], vec![1, 0, -1]];
        assert_eq!(rank(rows.iter().map(|r| sparse(r))).unwrap(), 2);
        assert_eq!(rank(Vec::<SparseRow>::new()).unwrap(), 0);
        assert_eq!(rank(vec![vec![(2, 0)]]).unwrap(), 0);
        let rows = [vec![2, 4], vec![3, 6], vec![0, 5]];
        assert_eq!(rank(rows.iter().map(|r| sparse(r))).unwrap(), 2);
    }

    #[test]
    fn bareiss_reference() {
        assert_eq!(bareiss_rank(vec![vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(bareiss_rank(vec![vec![0, 1], vec![1, 0], vec![1, 1]]), 2);
        assert_eq!(bareiss_rank(vec![vec![2, 3, 5], vec![7, 11, 13], vec![17, 19, 23]]), 3);
    }

    proptest! {
        #[test]
        fn agrees_with_dense_bareiss(
            m in proptest::collection::vec(proptest::collection::vec(-3i64..=3, 5), 0..8)
        ) {
            let dense: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&v| v as i128).collect()).collect();
            let sparse_rank = rank(m.iter().map(|r| sparse(r))).unwrap();
            prop_assert_eq!(sparse_rank, bareiss_rank(dense));
        }
    }
}
