#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use toric_gens::complex::PiFamily;
use toric_gens::multisets::Multiset;
use toric_gens::values::ValueSet;

/// `n` distinct values drawn from `lo..=hi`, with `n` uniform in `min_n..=max_n`.
pub fn random_values(rng: &mut ChaCha8Rng, min_n: usize, max_n: usize, lo: i64, hi: i64) -> ValueSet {
    let n = rng.gen_range(min_n..=max_n);
    let pool: Vec<i64> = (lo..=hi).collect();
    let mut picked: Vec<i64> = pool.choose_multiple(rng, n).copied().collect();
    picked.sort_unstable();
    ValueSet::new(picked).unwrap()
}

pub fn corpus(seed: u64, count: usize, min_n: usize, max_n: usize) -> Vec<ValueSet> {
    use rand::SeedableRng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| random_values(&mut rng, min_n, max_n, -15, 15))
        .collect()
}

/// Number of size-`q` multisets over `values` summing to `c`, by dynamic
/// programming over the values (no enumeration).
pub fn count_multisets(values: &[i64], q: usize, c: i64) -> u64 {
    let lo = values[0].min(0) * q as i64;
    let hi = values[values.len() - 1].max(0) * q as i64;
    let width = (hi - lo + 1) as usize;
    // ways[k][s - lo]: multisets of size k with sum s using the values seen so far
    let mut ways = vec![vec![0u64; width]; q + 1];
    ways[0][(0 - lo) as usize] = 1;
    for &v in values {
        for k in 1..=q {
            for s in lo..=hi {
                let prev = s - v;
                if prev < lo || prev > hi {
                    continue;
                }
                let add = ways[k - 1][(prev - lo) as usize];
                ways[k][(s - lo) as usize] += add;
            }
        }
    }
    if c < lo || c > hi {
        0
    } else {
        ways[q][(c - lo) as usize]
    }
}

/// Brute-force component count of the intersection graph on `Π(q,c)`.
pub fn brute_components(members: &[Multiset]) -> usize {
    let n = members.len();
    let mut label: Vec<usize> = (0..n).collect();
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..n {
            for j in 0..n {
                if members[i].intersects(&members[j]) && label[j] < label[i] {
                    label[i] = label[j];
                    changed = true;
                }
            }
        }
    }
    let mut roots: Vec<usize> = label.clone();
    roots.sort_unstable();
    roots.dedup();
    roots.len()
}

/// A random multiset of size `len` over the given pool.
pub fn random_multiset(rng: &mut ChaCha8Rng, pool: &[i64], len: usize) -> Multiset {
    (0..len).map(|_| *pool.choose(rng).unwrap()).collect()
}

/// A disjoint pair `(P, P')` from `family` with `min(P+P')` only in `P` and
/// `max(P+P')` only in `P'`, trying up to `tries` random choices of `P`.
pub fn criss_cross_pair(
    rng: &mut ChaCha8Rng,
    family: &PiFamily,
    tries: usize,
) -> Option<(Multiset, Multiset)> {
    if family.members.len() < 2 {
        return None;
    }
    for _ in 0..tries {
        let p = family.members.choose(rng).unwrap();
        let partners: Vec<&Multiset> = family
            .members
            .iter()
            .filter(|p2| p.least() < p2.least() && p2.greatest() > p.greatest() && !p.intersects(p2))
            .collect();
        if let Some(p2) = partners.choose(rng) {
            return Some((p.clone(), (*p2).clone()));
        }
    }
    None
}
