//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use fpp::perm::{bruhat_leq_subword_oracle, Permutation};
use fpp::pipedream::{all_permutations, PipeDream};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub fn perm(s: &str) -> Permutation {
    s.parse().unwrap()
}

pub fn set(xs: &[usize]) -> BTreeSet<usize> {
    xs.iter().copied().collect()
}

pub fn dream(rows: &[&str]) -> PipeDream {
    PipeDream::from_ascii(&rows.join("\n")).unwrap()
}

/// Bruhat intervals `u <= v` in `S_n` by the subword property.
pub fn interval_pairs_by_subwords(n: usize) -> Vec<(Permutation, Permutation)> {
    let all = all_permutations(n);
    let mut out = Vec::new();
    for u in &all {
        for v in &all {
            if bruhat_leq_subword_oracle(u, v).unwrap() {
                out.push((u.clone(), v.clone()));
            }
        }
    }
    out
}

/// Tableau criterion: sorted prefixes compared entrywise.
pub fn bruhat_by_tableau(u: &Permutation, v: &Permutation) -> bool {
    (1..=u.n()).all(|k| {
        let mut a = u.values()[..k].to_vec();
        let mut b = v.values()[..k].to_vec();
        a.sort_unstable();
        b.sort_unstable();
        a.iter().zip(&b).all(|(x, y)| x <= y)
    })
}

/// `{ sorted z[1..k] : u <= z <= v }`.
pub fn richardson_bases(u: &Permutation, v: &Permutation, k: usize) -> BTreeSet<Vec<usize>> {
    all_permutations(u.n())
        .into_iter()
        .filter(|z| bruhat_leq_subword_oracle(u, z).unwrap() && bruhat_leq_subword_oracle(z, v).unwrap())
        .map(|z| {
            let mut p = z.values()[..k].to_vec();
            p.sort_unstable();
            p
        })
        .collect()
}

/// Cofactor expansion along the first row.
pub fn laplace(m: &[Vec<BigRational>]) -> BigRational {
    let n = m.len();
    if n == 0 {
        return BigRational::one();
    }
    let mut total = BigRational::zero();
    for c in 0..n {
        if m[0][c].is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigRational>> = m[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = &m[0][c] * laplace(&minor);
        if c % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

pub fn is_nonneg(x: &BigRational) -> bool {
    !x.is_negative()
}

/// All subwords of `x` (as index sets) whose product is reduced and equals `target`.
pub fn reduced_subwords(x: &[usize], n: usize, target: &Permutation) -> Vec<Vec<usize>> {
    let len = target.length();
    let mut out = Vec::new();
    for mask in 0u32..1 << x.len() {
        if mask.count_ones() as usize != len {
            continue;
        }
        let idx: Vec<usize> = (0..x.len()).filter(|i| mask >> i & 1 == 1).collect();
        let mut p = Permutation::identity(n);
        for &i in &idx {
            p = p.times_s(x[i]);
        }
        if &p == target {
            out.push(idx);
        }
    }
    out
}
