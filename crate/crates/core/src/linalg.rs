//! Exact rational matrices: flag minors by fraction-free elimination, the
//! sign rule for generalized permutation matrices and the column-0 embedding.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::guard;
use crate::pathgraph::BasisSet;

/// Dense `rows × cols` matrix; columns are labelled `1..=cols`, or `0..cols`
/// with `zero_column`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    zero_column: bool,
    data: Vec<Vec<BigRational>>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum MatrixJson {
    Plain(Vec<Vec<String>>),
    Tagged {
        #[serde(rename = "offsetZero", default)]
        offset_zero: bool,
        entries: Vec<Vec<String>>,
    },
}

impl Serialize for RationalMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let entries = self.data.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
        if self.zero_column {
            MatrixJson::Tagged { offset_zero: true, entries }.serialize(s)
        } else {
            MatrixJson::Plain(entries).serialize(s)
        }
    }
}

impl<'de> Deserialize<'de> for RationalMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let (zero, entries) = match MatrixJson::deserialize(d)? {
            MatrixJson::Plain(e) => (false, e),
            MatrixJson::Tagged { offset_zero, entries } => (offset_zero, entries),
        };
        RationalMatrix::from_strings(&entries, zero).map_err(serde::de::Error::custom)
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let t = s.trim();
    let parsed = match t.split_once('/') {
        Some((a, b)) => {
            let (a, b) = (BigInt::from_str(a.trim()), BigInt::from_str(b.trim()));
            match (a, b) {
                (Ok(a), Ok(b)) if !b.is_zero() => Some(BigRational::new(a, b)),
                _ => None,
            }
        }
        None => BigInt::from_str(t).ok().map(BigRational::from_integer),
    };
    parsed.ok_or_else(|| Error::Parse(format!("not an exact rational: {s:?}")))
}

impl RationalMatrix {
    pub fn new(data: Vec<Vec<BigRational>>, zero_column: bool) -> Result<Self> {
        let rows = data.len();
        let cols = data.first().map_or(0, Vec::len);
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidMatrix("dimensions must be positive".into()));
        }
        if data.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidMatrix("rows have different lengths".into()));
        }
        Ok(RationalMatrix { rows, cols, zero_column, data })
    }

    pub fn from_integers(data: &[Vec<i64>], zero_column: bool) -> Result<Self> {
        let d = data.iter().map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect()).collect();
        Self::new(d, zero_column)
    }

    pub fn from_strings<S: AsRef<str>>(data: &[Vec<S>], zero_column: bool) -> Result<Self> {
        let d = data
            .iter()
            .map(|r| r.iter().map(|x| parse_rational(x.as_ref())).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(d, zero_column)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn zero_column(&self) -> bool {
        self.zero_column
    }

    /// Largest ground-set element.
    pub fn n(&self) -> usize {
        if self.zero_column { self.cols - 1 } else { self.cols }
    }

    pub fn base(&self) -> usize {
        usize::from(!self.zero_column)
    }

    pub fn labels(&self) -> std::ops::Range<usize> {
        self.base()..self.base() + self.cols
    }

    pub fn entry(&self, i: usize, label: usize) -> &BigRational {
        &self.data[i - 1][label - self.base()]
    }

    pub fn data(&self) -> &[Vec<BigRational>] {
        &self.data
    }

    /// First `r` rows.
    pub fn top(&self, r: usize) -> Result<Self> {
        if r == 0 || r > self.rows {
            return Err(Error::RowOutOfRange(r));
        }
        Self::new(self.data[..r].to_vec(), self.zero_column)
    }

    /// `Δ_S` of the first `|S|` rows; `S` given by column labels.
    pub fn minor(&self, s: &[usize]) -> Result<BigRational> {
        if s.len() > self.rows {
            return Err(Error::RowOutOfRange(s.len()));
        }
        if s.iter().any(|&j| !self.labels().contains(&j)) {
            return Err(Error::InvalidSet(format!("{s:?} leaves the column labels")));
        }
        let sub: Vec<Vec<BigRational>> = (0..s.len())
            .map(|i| s.iter().map(|&j| self.data[i][j - self.base()].clone()).collect())
            .collect();
        Ok(determinant(&sub))
    }

    /// Rank of the first `r` rows.
    pub fn rank_of_top(&self, r: usize) -> usize {
        rank(&self.data[..r.min(self.rows)])
    }

    /// Every flag minor is nonnegative for the given ranks.
    pub fn is_nonnegative_flag(&self, ranks: &[usize]) -> Result<bool> {
        Ok(flag_minors(self, ranks)?.values().all(|x| !x.is_negative()))
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.data {
            writeln!(f, "{}", r.iter().join(" "))?;
        }
        Ok(())
    }
}

/// Scales each row to integers, then runs Bareiss elimination.
pub fn determinant(m: &[Vec<BigRational>]) -> BigRational {
    let n = m.len();
    if n == 0 {
        return BigRational::one();
    }
    let mut scale = BigInt::one();
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            scale *= &l;
            row.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect()
        })
        .collect();
    BigRational::new(bareiss(&mut a), scale)
}

/// Integer determinant in place; every division is exact.
pub fn bareiss(a: &mut [Vec<BigInt>]) -> BigInt {
    let n = a.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Row rank by Gaussian elimination over the rationals.
pub fn rank(m: &[Vec<BigRational>]) -> usize {
    let mut a = m.to_vec();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..a.len() {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] / &a[r][c];
            let (top, rest) = a.split_at_mut(i);
            for (x, y) in rest[0][c..].iter_mut().zip(&top[r][c..]) {
                *x -= y * &f;
            }
        }
        r += 1;
    }
    r
}

/// `(r, S) ↦ Δ_S` of the first `r` rows for every `r` in `ranks`.
pub fn flag_minors(a: &RationalMatrix, ranks: &[usize]) -> Result<BTreeMap<(usize, Vec<usize>), BigRational>> {
    guard::check(a.n(), 12)?;
    if ranks.windows(2).any(|w| w[0] >= w[1]) || ranks.iter().any(|&r| r == 0 || r > a.rows()) {
        return Err(Error::InvalidSet(format!("ranks {ranks:?} must increase within 1..={}", a.rows())));
    }
    let jobs: Vec<(usize, Vec<usize>)> =
        ranks.iter().flat_map(|&r| a.labels().combinations(r).map(move |s| (r, s))).collect();
    jobs.into_par_iter()
        .map(|(r, s)| {
            let m = a.minor(&s)?;
            Ok(((r, s), m))
        })
        .collect()
}

/// Supports of the nonzero top-`r` minors.
pub fn matroid_of_matrix(a: &RationalMatrix, r: usize) -> Result<BasisSet> {
    guard::check(a.n(), 12)?;
    if r > a.rows() || a.rank_of_top(r) < r {
        return Err(Error::RankDeficient(r));
    }
    let bases: Vec<Vec<usize>> = a
        .labels()
        .combinations(r)
        .collect::<Vec<_>>()
        .into_par_iter()
        .filter_map(|s| match a.minor(&s) {
            Ok(m) if !m.is_zero() => Some(Ok(s)),
            Ok(_) => None,
            Err(e) => Some(Err(e)),
        })
        .collect::<Result<_>>()?;
    BasisSet::new(a.n(), a.zero_column(), bases)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SignRule {
    /// Column of the nonzero entry in each row.
    pub pivots: Vec<usize>,
    pub signs: Vec<i8>,
    pub nep: Vec<usize>,
    /// `Δ_{u_1..u_i} ≥ 0` for every `i`.
    pub minors_nonnegative: bool,
    /// `sgn(i) = (-1)^{nep(i)}` for every `i`.
    pub sign_rule: bool,
}

/// Both sides of the sign rule for a generalized permutation matrix.
pub fn check_sign_rule(a: &RationalMatrix) -> Result<SignRule> {
    let mut pivots = Vec::with_capacity(a.rows());
    let mut signs = Vec::with_capacity(a.rows());
    for i in 1..=a.rows() {
        let nz: Vec<usize> = a.labels().filter(|&j| !a.entry(i, j).is_zero()).collect();
        if nz.len() != 1 {
            return Err(Error::NotGeneralizedPermutation);
        }
        signs.push(if a.entry(i, nz[0]).is_positive() { 1 } else { -1 });
        pivots.push(nz[0]);
    }
    if !pivots.iter().all_unique() {
        return Err(Error::NotGeneralizedPermutation);
    }
    let nep: Vec<usize> = (0..pivots.len()).map(|i| pivots[..i].iter().filter(|&&p| p > pivots[i]).count()).collect();
    let sign_rule = (0..pivots.len()).all(|i| signs[i] == if nep[i].is_multiple_of(2) { 1 } else { -1 });
    let mut minors_nonnegative = true;
    for i in 1..=pivots.len() {
        let mut s = pivots[..i].to_vec();
        s.sort_unstable();
        if a.minor(&s)?.is_negative() {
            minors_nonnegative = false;
            break;
        }
    }
    Ok(SignRule { pivots, signs, nep, minors_nonnegative, sign_rule })
}

/// Column of the leftmost nonzero entry of each row.
pub fn leading_columns(a: &RationalMatrix) -> Option<Vec<usize>> {
    (1..=a.rows()).map(|i| a.labels().find(|&j| !a.entry(i, j).is_zero())).collect()
}

/// Reverse `ranks`-echelon, lower reduced, pivots `±1`.
pub fn is_reduced_representation(a: &RationalMatrix, ranks: &[usize]) -> bool {
    let Some(u) = leading_columns(a) else {
        return false;
    };
    if ranks.last() != Some(&a.rows()) || ranks.windows(2).any(|w| w[0] >= w[1]) {
        return false;
    }
    let mut start = 0;
    for &r in ranks {
        if u[start..r].windows(2).any(|w| w[1] >= w[0]) {
            return false;
        }
        start = r;
    }
    let lower_reduced = (0..a.rows()).all(|i| ((i + 1)..a.rows()).all(|l| a.entry(l + 1, u[i]).is_zero()));
    let unit = (0..a.rows()).all(|i| a.entry(i + 1, u[i]).abs().is_one());
    lower_reduced && unit
}

/// Reduced, with leading entries `(-1)^{nep(i)}`.
pub fn is_complete_nonneg_representation(a: &RationalMatrix, ranks: &[usize]) -> bool {
    if !is_reduced_representation(a, ranks) {
        return false;
    }
    let u = leading_columns(a).unwrap_or_default();
    (0..u.len()).all(|i| {
        let nep = u[..i].iter().filter(|&&p| p > u[i]).count();
        a.entry(i + 1, u[i]).is_positive() == (nep % 2 == 0)
    })
}

/// `B = [c A]` with `c = (0, ..., 0, (-1)^k)` for `A` with `k + 1` rows.
pub fn embed_append(a: &RationalMatrix) -> Result<RationalMatrix> {
    if a.zero_column() {
        return Err(Error::InvalidMatrix("matrix already has a column 0".into()));
    }
    let k = a.rows() - 1;
    let last = if k.is_multiple_of(2) { BigRational::one() } else { -BigRational::one() };
    let data = a
        .data()
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = Vec::with_capacity(r.len() + 1);
            row.push(if i == k { last.clone() } else { BigRational::zero() });
            row.extend(r.iter().cloned());
            row
        })
        .collect();
    RationalMatrix::new(data, true)
}
