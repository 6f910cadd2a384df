//! The toric ideal `I` of `(1, …, 1; a_1, …, a_n)`.
//!
//! Minimal generators in bidegree `(q,c)` correspond to components of
//! `Δ(q,c)`: a cell with `k ≥ 2` components contributes exactly `k - 1`
//! generators and a connected cell contributes none. [`rank_oracle`] checks
//! that count independently by computing `dim I(q,c) - dim I<(q,c)` with exact
//! integer elimination.

pub mod echelon;

use rayon::prelude::*;
use serde::Serialize;

use crate::complex::{enumerate_pi, feasible_c_range, PiFamily};
use crate::multisets::{Bidegree, Multiset};
use crate::values::{Normalized, ValueSet};
use crate::{Error, Result};

/// `r + s` of the gcd-normalized value set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeBound {
    pub bound: i64,
    /// `(r, s)` of the normalized set; `None` for two values (zero ideal).
    pub gaps: Option<(i64, i64)>,
    pub normalized: Normalized,
}

impl DegreeBound {
    pub fn zero_ideal(&self) -> bool {
        self.gaps.is_none()
    }
}

pub fn degree_bound(values: &ValueSet) -> DegreeBound {
    let normalized = values.normalize();
    match normalized.values.gap_profile() {
        Ok(g) => DegreeBound {
            bound: g.bound(),
            gaps: Some((g.r, g.s)),
            normalized,
        },
        Err(_) => DegreeBound {
            bound: 0,
            gaps: None,
            normalized,
        },
    }
}

/// `z^plus - z^minus` for two distinct multisets of equal bidegree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Binomial {
    pub plus: Multiset,
    pub minus: Multiset,
    #[serde(skip)]
    pub bidegree: Bidegree,
}

impl Binomial {
    pub fn new(plus: Multiset, minus: Multiset) -> Result<Self> {
        let bidegree = plus.bidegree()?;
        if minus.bidegree()? != bidegree {
            return Err(Error::Validation(format!(
                "binomial sides {plus} and {minus} have different bidegrees"
            )));
        }
        if plus == minus {
            return Err(Error::Validation(format!(
                "binomial sides are equal ({plus})"
            )));
        }
        Ok(Binomial {
            plus,
            minus,
            bidegree,
        })
    }
}

/// Renders `b` with variables `z1 … zn` indexed by position in `values`,
/// e.g. `z2^5 - z1^3*z3^2`.
pub fn render_binomial(b: &Binomial, values: &ValueSet) -> Result<String> {
    Ok(format!(
        "{} - {}",
        render_monomial(&b.plus, values)?,
        render_monomial(&b.minus, values)?
    ))
}

fn render_monomial(p: &Multiset, values: &ValueSet) -> Result<String> {
    let factors: Vec<String> = p
        .multiplicities(values)?
        .into_iter()
        .enumerate()
        .filter(|&(_, e)| e > 0)
        .map(|(i, e)| match e {
            1 => format!("z{}", i + 1),
            _ => format!("z{}^{e}", i + 1),
        })
        .collect();
    Ok(if factors.is_empty() {
        "1".to_string()
    } else {
        factors.join("*")
    })
}

/// One bidegree carrying minimal generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorEntry {
    pub q: usize,
    pub c: i64,
    /// Components of `Δ(q,c)`.
    pub k: usize,
    /// Minimal generators in this bidegree, `k - 1`.
    pub count: usize,
    pub binomials: Vec<Binomial>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorReport {
    pub values: ValueSet,
    pub bound: i64,
    pub zero_ideal: bool,
    pub entries: Vec<GeneratorEntry>,
    /// Whether every scanned cell was cross-checked against [`rank_oracle`].
    pub oracle_checked: bool,
}

impl GeneratorReport {
    pub fn total_generators(&self) -> usize {
        self.entries.iter().map(|e| e.count).sum()
    }
}

/// Dimensions of `I(q,c)` and `I<(q,c)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RankResult {
    #[serde(rename = "dim_I")]
    pub dim_i: usize,
    #[serde(rename = "dim_I_less")]
    pub dim_i_less: usize,
    pub min_gen_count: usize,
}

/// Every `(q, c)` with `2 ≤ q ≤ bound` and `c` in the feasible range of `values`.
fn cells(values: &ValueSet, max_q: usize) -> Result<Vec<(usize, i64)>> {
    let mut out = Vec::new();
    for q in 2..=max_q {
        let (lo, hi) = feasible_c_range(values, q)?;
        out.extend((lo..=hi).map(|c| (q, c)));
    }
    Ok(out)
}

fn entry_for(family: &PiFamily) -> Result<Option<GeneratorEntry>> {
    let cs = family.components()?;
    if cs.k < 2 {
        return Ok(None);
    }
    let mut firsts: Vec<(i64, &Multiset)> = Vec::with_capacity(cs.k);
    for (member, id) in family.members.iter().zip(&cs.member_component) {
        let id = id.expect("q ≥ 2 members are non-empty");
        if !firsts.iter().any(|&(seen, _)| seen == id) {
            firsts.push((id, member));
        }
    }
    firsts.sort_by_key(|&(id, _)| id);
    let base = firsts[0].1;
    let binomials = firsts[1..]
        .iter()
        .map(|&(_, m)| Binomial::new(m.clone(), base.clone()))
        .collect::<Result<Vec<_>>>()?;
    Ok(Some(GeneratorEntry {
        q: family.bidegree.q,
        c: family.bidegree.c,
        k: cs.k,
        count: cs.k - 1,
        binomials,
    }))
}

fn scan(values: &ValueSet, with_oracle: bool) -> Result<GeneratorReport> {
    let bound = degree_bound(values);
    if bound.zero_ideal() {
        return Ok(GeneratorReport {
            values: values.clone(),
            bound: 0,
            zero_ideal: true,
            entries: Vec::new(),
            oracle_checked: with_oracle,
        });
    }
    let cells = cells(values, bound.bound as usize)?;
    let found = cells
        .par_iter()
        .map(|&(q, c)| {
            let family = enumerate_pi(values, q, c)?;
            let entry = entry_for(&family)?;
            if with_oracle {
                let oracle = rank_oracle_family(&family)?;
                let by_components = entry.as_ref().map_or(0, |e| e.count);
                if oracle.min_gen_count != by_components {
                    return Err(Error::invariant(
                        "generator count",
                        format!(
                            "cell ({q}, {c}): components give {by_components}, rank oracle gives {}",
                            oracle.min_gen_count
                        ),
                    ));
                }
            }
            Ok(entry)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GeneratorReport {
        values: values.clone(),
        bound: bound.bound,
        zero_ideal: false,
        entries: found.into_iter().flatten().collect(),
        oracle_checked: with_oracle,
    })
}

/// Every bidegree (in the coordinates of `values`) that carries minimal
/// generators, scanning `2 ≤ q ≤` the normalized degree bound.
pub fn generator_bidegrees(values: &ValueSet) -> Result<GeneratorReport> {
    scan(values, false)
}

/// [`generator_bidegrees`], additionally checking every scanned cell against
/// [`rank_oracle`]; a disagreement is reported as an invariant violation.
pub fn generator_bidegrees_checked(values: &ValueSet) -> Result<GeneratorReport> {
    scan(values, true)
}

pub fn rank_oracle(values: &ValueSet, q: usize, c: i64) -> Result<RankResult> {
    rank_oracle_family(&enumerate_pi(values, q, c)?)
}

/// Rank computation on the coordinate space indexed by the members of `family`.
///
/// `I(q,c)` is spanned by the differences `e_P - e_P'`; `I<(q,c)` by
/// `z_i·(z^B - z^B')`, i.e. differences of members that both contain `a_i`.
/// For each `a_i` the differences against one fixed member containing it
/// already span that part.
pub fn rank_oracle_family(family: &PiFamily) -> Result<RankResult> {
    let n = family.members.len();
    if n == 0 {
        return Ok(RankResult {
            dim_i: 0,
            dim_i_less: 0,
            min_gen_count: 0,
        });
    }
    let dim_i = echelon::rank((1..n).map(|j| vec![(0, 1), (j, -1)]))?;

    let mut less = echelon::IntegerEchelon::new();
    for &a in family.values.as_slice() {
        let mut holders = family
            .members
            .iter()
            .enumerate()
            .filter(|(_, m)| m.contains(a))
            .map(|(i, _)| i);
        let Some(base) = holders.next() else { continue };
        for j in holders {
            less.insert(vec![(base, 1), (j, -1)])?;
        }
    }
    let dim_i_less = less.rank();
    let min_gen_count = dim_i.checked_sub(dim_i_less).ok_or_else(|| {
        Error::invariant(
            "rank oracle",
            format!("dim I< = {dim_i_less} exceeds dim I = {dim_i}"),
        )
    })?;
    Ok(RankResult {
        dim_i,
        dim_i_less,
        min_gen_count,
    })
}

/// A disconnected cell above the degree bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub q: usize,
    pub c: i64,
    pub k: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verification {
    pub pass: bool,
    pub bound: i64,
    pub extra: usize,
    pub cells_checked: usize,
    pub counterexample: Option<Counterexample>,
}

/// Checks that every `Δ(q,c)` with `bound < q ≤ bound + extra` is connected,
/// where `bound` is the normalized `r + s`. Cells are taken in the
/// coordinates of `values`, so this also rules out generators above the bound.
pub fn verify_main_theorem(values: &ValueSet, extra: usize) -> Result<Verification> {
    let bound = degree_bound(values);
    if bound.zero_ideal() {
        return Err(Error::DegenerateGaps);
    }
    let first = bound.bound as usize + 1;
    let mut cells = Vec::new();
    for q in first..first + extra {
        let (lo, hi) = feasible_c_range(values, q)?;
        cells.extend((lo..=hi).map(|c| (q, c)));
    }
    let ks = cells
        .par_iter()
        .map(|&(q, c)| Ok((q, c, enumerate_pi(values, q, c)?.components()?.k)))
        .collect::<Result<Vec<_>>>()?;
    let counterexample = ks
        .into_iter()
        .find(|&(_, _, k)| k > 1)
        .map(|(q, c, k)| Counterexample { q, c, k });
    Ok(Verification {
        pass: counterexample.is_none(),
        bound: bound.bound,
        extra,
        cells_checked: cells.len(),
        counterexample,
    })
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

    fn texts(report: &GeneratorReport) -> Vec<(usize, i64, usize, Vec<String>)> {
        report
            .entries
            .iter()
            .map(|e| {
                let t = e
                    .binomials
                    .iter()
                    .map(|b| render_binomial(b, &report.values).unwrap())
                    .collect();
                (e.q, e.c, e.count, t)
            })
            .collect()
    }

    #[test]
    fn bounds() {
        assert_eq!(degree_bound(&vs(&[-2, 0, 3])).bound, 5);
        assert_eq!(degree_bound(&vs(&[0, 1, 2, 3])).bound, 2);
        assert_eq!(degree_bound(&vs(&[0, 2, 6])).bound, 3);
        let two = degree_bound(&vs(&[4, 9]));
        assert!(two.zero_ideal());
        assert_eq!(two.bound, 0);
    }

    #[test]
    fn generators_small_sets() {
        let r = generator_bidegrees_checked(&vs(&[0, 1, 3])).unwrap();
        assert_eq!(texts(&r), vec![(3, 3, 1, vec!["z2^3 - z1^2*z3".to_string()])]);
        assert_eq!(r.entries[0].binomials[0].plus, ms(&[1, 1, 1]));
        assert_eq!(r.entries[0].binomials[0].minus, ms(&[0, 0, 3]));

        let r = generator_bidegrees_checked(&vs(&[-2, 0, 3])).unwrap();
        assert_eq!(texts(&r), vec![(5, 0, 1, vec!["z2^5 - z1^3*z3^2".to_string()])]);

        let r = generator_bidegrees_checked(&vs(&[0, 1, 2, 3])).unwrap();
        assert_eq!(
            texts(&r),
            vec![
                (2, 2, 1, vec!["z2^2 - z1*z3".to_string()]),
                (2, 3, 1, vec!["z2*z3 - z1*z4".to_string()]),
                (2, 4, 1, vec!["z3^2 - z2*z4".to_string()]),
            ]
        );
        assert!(r.oracle_checked);

        let r = generator_bidegrees(&vs(&[3, 8])).unwrap();
        assert!(r.zero_ideal && r.entries.is_empty());
    }

    #[test]
    fn oracle_examples() {
        let r = rank_oracle(&vs(&[-2, 0, 3]), 5, 0).unwrap();
        assert_eq!((r.dim_i, r.dim_i_less, r.min_gen_count), (1, 0, 1));
        let r = rank_oracle(&vs(&[0, 1, 3]), 3, 4).unwrap();
        assert_eq!((r.dim_i, r.dim_i_less, r.min_gen_count), (0, 0, 0));
        let r = rank_oracle(&vs(&[0, 1, 3]), 2, 5).unwrap();
        assert_eq!((r.dim_i, r.dim_i_less, r.min_gen_count), (0, 0, 0));
        // Π(4,6) over {0,1,3}: {0,0,3,3}, {1,1,1,3}; they share 3
        let r = rank_oracle(&vs(&[0, 1, 3]), 4, 6).unwrap();
        assert_eq!((r.dim_i, r.dim_i_less, r.min_gen_count), (1, 1, 0));
    }

    #[test]
    fn sweep_above_bound() {
        let v = verify_main_theorem(&vs(&[-2, 0, 3]), 2).unwrap();
        assert!(v.pass && v.counterexample.is_none());
        assert!(verify_main_theorem(&vs(&[0, 1, 2, 3]), 3).unwrap().pass);
        assert_eq!(verify_main_theorem(&vs(&[0, 1]), 1), Err(Error::DegenerateGaps));
    }

    #[test]
    fn rendering() {
        let v = vs(&[-2, 0, 3]);
        let b = Binomial::new(ms(&[0, 0, 0, 0, 0]), ms(&[-2, -2, -2, 3, 3])).unwrap();
        assert_eq!(render_binomial(&b, &v).unwrap(), "z2^5 - z1^3*z3^2");
        let b = Binomial::new(ms(&[1, 1]), ms(&[0, 2])).unwrap();
        assert_eq!(render_binomial(&b, &vs(&[0, 1, 2, 3])).unwrap(), "z2^2 - z1*z3");
        assert!(Binomial::new(ms(&[1]), ms(&[1])).is_err());
        assert!(Binomial::new(ms(&[1]), ms(&[2])).is_err());
        let off = Binomial::new(ms(&[5, 5]), ms(&[4, 6])).unwrap();
        assert_eq!(render_binomial(&off, &v), Err(Error::NotInSet(5)));
    }
}
