//! The exponent set `V = {a_1 < … < a_n}` and its gap structure.

use serde::Serialize;

use crate::{Error, Result};

/// A strictly increasing set of at least two integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct ValueSet(Vec<i64>);

/// Successive differences of a [`ValueSet`] together with the two largest, `r ≥ s`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GapProfile {
    pub gaps: Vec<i64>,
    pub r: i64,
    pub s: i64,
}

impl GapProfile {
    /// `r + s`, the degree bound for this gap structure.
    pub fn bound(&self) -> i64 {
        self.r + self.s
    }
}

/// Result of [`ValueSet::normalize`]: `V = {scale * v + offset : v ∈ normalized}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Normalized {
    pub values: ValueSet,
    pub scale: i64,
    pub offset: i64,
}

impl ValueSet {
    /// Validates that `values` is strictly increasing with at least two entries.
    pub fn new(values: Vec<i64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::Validation(format!(
                "need at least 2 values, got {}",
                values.len()
            )));
        }
        for w in values.windows(2) {
            if w[0] == w[1] {
                return Err(Error::Validation(format!("duplicate value {}", w[0])));
            }
            if w[0] > w[1] {
                return Err(Error::Validation(format!(
                    "values must be strictly increasing ({} before {})",
                    w[0], w[1]
                )));
            }
            // gaps must fit in i64 so every later difference is representable
            w[1].checked_sub(w[0]).ok_or(Error::Overflow("gap"))?;
        }
        Ok(ValueSet(values))
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn min(&self) -> i64 {
        self.0[0]
    }

    pub fn max(&self) -> i64 {
        self.0[self.0.len() - 1]
    }

    pub fn contains(&self, x: i64) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    /// Position of `x` in the set (0-based).
    pub fn index_of(&self, x: i64) -> Result<usize> {
        self.0.binary_search(&x).map_err(|_| Error::NotInSet(x))
    }

    pub fn gaps(&self) -> Vec<i64> {
        self.0.windows(2).map(|w| w[1] - w[0]).collect()
    }

    /// Gap list plus the two largest gaps. Needs at least three values.
    pub fn gap_profile(&self) -> Result<GapProfile> {
        let gaps = self.gaps();
        if gaps.len() < 2 {
            return Err(Error::DegenerateGaps);
        }
        let mut sorted = gaps.clone();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        let (r, s) = (sorted[0], sorted[1]);
        r.checked_add(s).ok_or(Error::Overflow("r + s"))?;
        Ok(GapProfile { gaps, r, s })
    }

    /// Smallest element strictly greater than `x`; `x` must belong to the set.
    pub fn next_above(&self, x: i64) -> Result<Option<i64>> {
        let i = self.index_of(x)?;
        Ok(self.0.get(i + 1).copied())
    }

    /// Largest element strictly less than `x`; `x` must belong to the set.
    pub fn next_below(&self, x: i64) -> Result<Option<i64>> {
        let i = self.index_of(x)?;
        Ok(i.checked_sub(1).map(|j| self.0[j]))
    }

    /// `{-v : v ∈ V}`.
    pub fn reflect(&self) -> Result<ValueSet> {
        let mut out = Vec::with_capacity(self.0.len());
        for &v in self.0.iter().rev() {
            out.push(v.checked_neg().ok_or(Error::Overflow("reflect"))?);
        }
        Ok(ValueSet(out))
    }

    /// Translates to minimum 0 and divides by the gcd of the gaps.
    pub fn normalize(&self) -> Normalized {
        let offset = self.min();
        let scale = self.gaps().into_iter().fold(0, gcd);
        let values = self.0.iter().map(|&v| (v - offset) / scale).collect();
        Normalized {
            values: ValueSet(values),
            scale,
            offset,
        }
    }

    /// Largest gap `[a_i, a_{i+1}]` with `a_{i+1} ≤ bound`, or 0 if there is none.
    pub fn largest_gap_below(&self, bound: i64) -> i64 {
        self.0
            .windows(2)
            .take_while(|w| w[1] <= bound)
            .map(|w| w[1] - w[0])
            .max()
            .unwrap_or(0)
    }

    /// Largest gap `[a_i, a_{i+1}]` with `a_i ≥ bound`, or 0 if there is none.
    pub fn largest_gap_above(&self, bound: i64) -> i64 {
        self.0
            .windows(2)
            .filter(|w| w[0] >= bound)
            .map(|w| w[1] - w[0])
            .max()
            .unwrap_or(0)
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl TryFrom<Vec<i64>> for ValueSet {
    type Error = Error;

    fn try_from(v: Vec<i64>) -> Result<Self> {
        ValueSet::new(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn vs(v: &[i64]) -> ValueSet {
        ValueSet::new(v.to_vec()).unwrap()
    }

    #[test]
    fn construction() {
        assert_eq!(vs(&[0, 1, 3]).as_slice(), &[0, 1, 3]);
        assert!(matches!(ValueSet::new(vec![3, 1]), Err(Error::Validation(_))));
        assert!(matches!(ValueSet::new(vec![0, 0, 1]), Err(Error::Validation(_))));
        assert!(matches!(ValueSet::new(vec![4]), Err(Error::Validation(_))));
        assert!(matches!(ValueSet::new(vec![]), Err(Error::Validation(_))));
        assert!(matches!(
            ValueSet::new(vec![i64::MIN, i64::MAX]),
            Err(Error::Overflow(_))
        ));
    }

    #[test]
    fn gap_profiles() {
        let g = vs(&[-2, 0, 3]).gap_profile().unwrap();
        assert_eq!((g.gaps.as_slice(), g.r, g.s), (&[2, 3][..], 3, 2));
        let g = vs(&[0, 1, 2, 3]).gap_profile().unwrap();
        assert_eq!((g.gaps.as_slice(), g.r, g.s), (&[1, 1, 1][..], 1, 1));
        let g = vs(&[0, 1, 3]).gap_profile().unwrap();
        assert_eq!((g.gaps.as_slice(), g.r, g.s), (&[1, 2][..], 2, 1));
        assert_eq!(vs(&[0, 5]).gap_profile(), Err(Error::DegenerateGaps));
    }

    #[test]
    fn neighbours() {
        let v = vs(&[0, 1, 3]);
        assert_eq!(v.next_above(1), Ok(Some(3)));
        assert_eq!(v.next_above(3), Ok(None));
        assert_eq!(v.next_below(1), Ok(Some(0)));
        assert_eq!(v.next_below(0), Ok(None));
        assert_eq!(v.next_above(2), Err(Error::NotInSet(2)));
        assert_eq!(v.next_below(7), Err(Error::NotInSet(7)));
        let w = vs(&[-2, 0, 3]);
        assert_eq!(w.next_above(-2), Ok(Some(0)));
        assert_eq!(w.next_below(3), Ok(Some(0)));
    }

    #[test]
    fn reflection() {
        assert_eq!(vs(&[0, 1, 3]).reflect().unwrap(), vs(&[-3, -1, 0]));
        assert_eq!(vs(&[-2, 0, 3]).reflect().unwrap(), vs(&[-3, 0, 2]));
        assert!(vs(&[i64::MIN, -5]).reflect().is_err());
    }

    #[test]
    fn normalization() {
        let n = vs(&[0, 2, 6]).normalize();
        assert_eq!((n.values, n.scale, n.offset), (vs(&[0, 1, 3]), 2, 0));
        let n = vs(&[5, 6, 8]).normalize();
        assert_eq!((n.values, n.scale, n.offset), (vs(&[0, 1, 3]), 1, 5));
        let n = vs(&[-2, 0, 3]).normalize();
        assert_eq!((n.values, n.scale, n.offset), (vs(&[0, 2, 5]), 1, -2));
    }

    #[test]
    fn gaps_below_and_above() {
        let v = vs(&[0, 1, 2, 3, 5]);
        assert_eq!(v.largest_gap_below(1), 1);
        assert_eq!(v.largest_gap_below(0), 0);
        assert_eq!(v.largest_gap_below(5), 2);
        assert_eq!(v.largest_gap_above(3), 2);
        assert_eq!(v.largest_gap_above(2), 2);
        assert_eq!(v.largest_gap_above(5), 0);
    }

    fn value_set() -> impl Strategy<Value = ValueSet> {
        proptest::collection::btree_set(-40i64..40, 2..9)
            .prop_map(|s| ValueSet::new(s.into_iter().collect()).unwrap())
    }

    proptest! {
        #[test]
        fn reflection_preserves_gap_profile(v in value_set()) {
            prop_assume!(v.len() >= 3);
            let a = v.gap_profile().unwrap();
            let b = v.reflect().unwrap().gap_profile().unwrap();
            let (mut ga, mut gb) = (a.gaps.clone(), b.gaps.clone());
            ga.sort();
            gb.sort();
            prop_assert_eq!(ga, gb);
            prop_assert_eq!((a.r, a.s), (b.r, b.s));
            prop_assert_eq!(v.reflect().unwrap().reflect().unwrap(), v);
        }

        #[test]
        fn neighbours_are_inverse(v in value_set()) {
            for &x in &v.as_slice()[..v.len() - 1] {
                let up = v.next_above(x).unwrap().unwrap();
                prop_assert_eq!(v.next_below(up).unwrap(), Some(x));
            }
        }

        #[test]
        fn normalize_is_idempotent_and_never_widens(v in value_set()) {
            let n = v.normalize();
            let again = n.values.normalize();
            prop_assert_eq!((again.scale, again.offset), (1, 0));
            prop_assert_eq!(&again.values, &n.values);
            prop_assert_eq!(n.values.min(), 0);
            let rebuilt: Vec<i64> = n.values.as_slice().iter().map(|&x| n.scale * x + n.offset).collect();
            prop_assert_eq!(rebuilt.as_slice(), v.as_slice());
            if v.len() >= 3 {
                let raw = v.gap_profile().unwrap();
                let norm = n.values.gap_profile().unwrap();
                prop_assert!(norm.bound() <= raw.bound());
            }
        }
    }
}
