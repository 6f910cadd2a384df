//! The families `Π(q,c)` and the connected components of the simplicial complex
//! `Δ(q,c)` generated by their supports.

use std::collections::{BTreeMap, BTreeSet};

use crate::multisets::{Bidegree, Multiset};
use crate::values::ValueSet;
use crate::{Error, Result};

/// All multisets over `values` with the given cardinality and sum.
///
/// Members are ordered lexicographically by their sorted item lists, which is
/// the same as ordering multiplicity vectors over `values` in descending
/// lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiFamily {
    pub values: ValueSet,
    pub bidegree: Bidegree,
    pub members: Vec<Multiset>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentStructure {
    /// Elements of `V` appearing in some member.
    pub vertex_set: BTreeSet<i64>,
    /// Component id of each vertex; the id is the smallest vertex of the component.
    pub component_of: BTreeMap<i64, i64>,
    /// Number of components.
    pub k: usize,
    /// Component id of each member of the family, by member index. `None` only
    /// for the empty multiset, the sole member of `Π(0,0)`.
    pub member_component: Vec<Option<i64>>,
}

impl ComponentStructure {
    /// Component ids in ascending order.
    pub fn component_ids(&self) -> Vec<i64> {
        let ids: BTreeSet<i64> = self.component_of.values().copied().collect();
        ids.into_iter().collect()
    }

    /// Vertices of the component with the given id.
    pub fn component(&self, id: i64) -> Vec<i64> {
        self.component_of
            .iter()
            .filter(|&(_, &c)| c == id)
            .map(|(&v, _)| v)
            .collect()
    }
}

/// `(q·min V, q·max V)`: every non-empty `Π(q,c)` has `c` in this range.
pub fn feasible_c_range(values: &ValueSet, q: usize) -> Result<(i64, i64)> {
    let q = i64::try_from(q).map_err(|_| Error::Overflow("q"))?;
    let lo = q.checked_mul(values.min()).ok_or(Error::Overflow("c range"))?;
    let hi = q.checked_mul(values.max()).ok_or(Error::Overflow("c range"))?;
    Ok((lo, hi))
}

/// Exhaustively enumerates `Π(q,c)`.
pub fn enumerate_pi(values: &ValueSet, q: usize, c: i64) -> Result<PiFamily> {
    feasible_c_range(values, q)?;
    let mut members = Vec::new();
    let mut stack = Vec::with_capacity(q);
    let wide: Vec<i128> = values.as_slice().iter().map(|&v| v as i128).collect();
    search(&wide, 0, q as i128, c as i128, &mut stack, &mut members);
    Ok(PiFamily {
        values: values.clone(),
        bidegree: Bidegree::new(q, c),
        members,
    })
}

// Chooses the multiplicity of `vals[idx]` from high to low, then recurses.
// Runs in i128 so partial sums never overflow; members themselves fit in i64.
fn search(
    vals: &[i128],
    idx: usize,
    remaining: i128,
    sum: i128,
    stack: &mut Vec<i64>,
    out: &mut Vec<Multiset>,
) {
    if remaining == 0 {
        if sum == 0 {
            out.push(Multiset::from(stack.clone()));
        }
        return;
    }
    let Some(&v) = vals.get(idx) else { return };
    let top = vals[vals.len() - 1];
    if sum < remaining * v || sum > remaining * top {
        return;
    }
    if idx + 1 == vals.len() {
        if sum == remaining * v {
            stack.extend(std::iter::repeat_n(v as i64, remaining as usize));
            out.push(Multiset::from(stack.clone()));
            stack.truncate(stack.len() - remaining as usize);
        }
        return;
    }
    for k in (0..=remaining).rev() {
        let rest = remaining - k;
        let rest_sum = sum - k * v;
        // the remaining values are all > v; prune once the rest cannot reach
        if rest_sum > rest * top {
            continue;
        }
        if rest_sum < rest * vals[idx + 1] {
            break;
        }
        stack.extend(std::iter::repeat_n(v as i64, k as usize));
        search(vals, idx + 1, rest, rest_sum, stack, out);
        stack.truncate(stack.len() - k as usize);
    }
}

/// Union-find over vertex indices.
struct DisjointSet {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl DisjointSet {
    fn new(n: usize) -> Self {
        DisjointSet {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        match self.rank[a].cmp(&self.rank[b]) {
            std::cmp::Ordering::Less => self.parent[a] = b,
            std::cmp::Ordering::Greater => self.parent[b] = a,
            std::cmp::Ordering::Equal => {
                self.parent[b] = a;
                self.rank[a] += 1;
            }
        }
    }
}

impl PiFamily {
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    /// Components of `Δ(q,c)`.
    pub fn components(&self) -> Result<ComponentStructure> {
        let n = self.values.len();
        let mut dsu = DisjointSet::new(n);
        let mut present = vec![false; n];
        let mut first_index = Vec::with_capacity(self.members.len());
        for member in &self.members {
            let mut first = None;
            for &x in member.items() {
                let i = self.values.index_of(x)?;
                present[i] = true;
                match first {
                    None => first = Some(i),
                    Some(f) => dsu.union(f, i),
                }
            }
            first_index.push(first);
        }
        // ids are the smallest vertex of each class; vertices are scanned in
        // ascending order so the first one seen per root is that vertex
        let mut root_id: BTreeMap<usize, i64> = BTreeMap::new();
        let mut component_of = BTreeMap::new();
        let mut vertex_set = BTreeSet::new();
        for (i, &v) in self.values.as_slice().iter().enumerate() {
            if !present[i] {
                continue;
            }
            let root = dsu.find(i);
            let id = *root_id.entry(root).or_insert(v);
            component_of.insert(v, id);
            vertex_set.insert(v);
        }
        let member_component = first_index
            .into_iter()
            .map(|f| f.map(|i| root_id[&dsu.find(i)]))
            .collect();
        Ok(ComponentStructure {
            k: root_id.len(),
            vertex_set,
            component_of,
            member_component,
        })
    }
}

pub fn components(values: &ValueSet, q: usize, c: i64) -> Result<ComponentStructure> {
    enumerate_pi(values, q, c)?.components()
}

/// Whether `Δ(q,c)` has at most one component.
pub fn is_connected(values: &ValueSet, q: usize, c: i64) -> Result<bool> {
    Ok(components(values, q, c)?.k <= 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vs(v: &[i64]) -> ValueSet {
        ValueSet::new(v.to_vec()).unwrap()
    }

    fn ms(v: &[i64]) -> Multiset {
        Multiset::of(v)
    }

    #[test]
    fn enumeration_examples() {
        let f = enumerate_pi(&vs(&[-2, 0, 3]), 5, 0).unwrap();
        assert_eq!(f.members, vec![ms(&[-2, -2, -2, 3, 3]), ms(&[0, 0, 0, 0, 0])]);
        let f = enumerate_pi(&vs(&[0, 1, 3]), 3, 3).unwrap();
        assert_eq!(f.members, vec![ms(&[0, 0, 3]), ms(&[1, 1, 1])]);
        assert!(enumerate_pi(&vs(&[0, 1, 3]), 2, 5).unwrap().is_empty());
        let f = enumerate_pi(&vs(&[0, 1, 3]), 0, 0).unwrap();
        assert_eq!(f.members, vec![Multiset::new()]);
        assert!(enumerate_pi(&vs(&[0, 1, 3]), 0, 1).unwrap().is_empty());
    }

    #[test]
    fn component_examples() {
        let cs = components(&vs(&[-2, 0, 3]), 5, 0).unwrap();
        assert_eq!(cs.k, 2);
        assert_eq!(cs.component(-2), vec![-2, 3]);
        assert_eq!(cs.component(0), vec![0]);
        assert_eq!(cs.member_component, vec![Some(-2), Some(0)]);

        let cs = components(&vs(&[0, 1, 3]), 4, 6).unwrap();
        assert_eq!(cs.k, 1);
        assert_eq!(cs.vertex_set.into_iter().collect::<Vec<_>>(), vec![0, 1, 3]);

        let cs = components(&vs(&[0, 1, 3]), 2, 5).unwrap();
        assert_eq!(cs.k, 0);
        assert!(cs.vertex_set.is_empty());
    }

    #[test]
    fn connectivity_examples() {
        assert!(!is_connected(&vs(&[-2, 0, 3]), 5, 0).unwrap());
        assert!(is_connected(&vs(&[-2, 0, 3]), 6, 0).unwrap());
        assert!(is_connected(&vs(&[0, 1, 3]), 2, 5).unwrap());
    }

    #[test]
    fn c_ranges() {
        assert_eq!(feasible_c_range(&vs(&[0, 1, 3]), 3), Ok((0, 9)));
        assert_eq!(feasible_c_range(&vs(&[-2, 0, 3]), 5), Ok((-10, 15)));
        assert_eq!(feasible_c_range(&vs(&[0, 1, 3]), 0), Ok((0, 0)));
        assert!(feasible_c_range(&vs(&[0, i64::MAX / 2]), 3).is_err());
        assert!(enumerate_pi(&vs(&[0, i64::MAX / 2]), 3, 0).is_err());
    }
}
