//! Elementary quotients by appending a row, flags from complete dreams, and
//! the maps between two-step flags on `[n]` and positroids on `[0, n]`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::decperm::nonempty_subsets;
use crate::error::{Error, Result};
use crate::pathgraph::BasisSet;
use crate::pipedream::{PipeDream, Tile};
use crate::positroid::{is_quotient, unblocked_columns, Positroid};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagPositroid {
    pub n: usize,
    pub ranks: Vec<usize>,
    pub constituents: Vec<Positroid>,
}

impl FlagPositroid {
    pub fn new(n: usize, constituents: Vec<Positroid>) -> Result<Self> {
        for p in &constituents {
            if p.n() != n {
                return Err(Error::SizeMismatch(n, p.n()));
            }
        }
        for w in constituents.windows(2) {
            if w[0].rank() >= w[1].rank() || !is_quotient(w[0].bases(), w[1].bases())? {
                return Err(Error::Membership("constituents do not form a quotient chain".into()));
            }
        }
        let ranks = constituents.iter().map(Positroid::rank).collect();
        Ok(FlagPositroid { n, ranks, constituents })
    }
}

pub fn restrict(d: &PipeDream, k: usize) -> Result<PipeDream> {
    d.restrict(k)
}

/// New row with pivot `min C`, elbows on the rest of `C`, crosses elsewhere.
pub fn append_row(d: &PipeDream, c: &BTreeSet<usize>) -> Result<PipeDream> {
    let Some(&pivot) = c.first() else {
        return Err(Error::EmptyC);
    };
    let u = unblocked_columns(d)?;
    if let Some(&j) = c.iter().find(|j| !u.contains(j)) {
        return Err(Error::NotUnblocked(j));
    }
    let elbows: BTreeSet<usize> = c.iter().copied().skip(1).collect();
    d.with_row(pivot, &elbows)
}

/// Standardized covers, one per nonempty `C ⊆ U`, sorted by decorated permutation.
pub fn quotient_covers(p: &Positroid) -> Result<Vec<Positroid>> {
    quotient_covers_with_sets(p).map(|v| v.into_iter().map(|(_, q)| q).collect())
}

/// Covers paired with the column set that produced them.
pub fn quotient_covers_with_sets(p: &Positroid) -> Result<Vec<(BTreeSet<usize>, Positroid)>> {
    if p.rank() >= p.n() {
        return Err(Error::FullRank(p.rank()));
    }
    let mut out = nonempty_subsets(&p.unblocked())
        .into_iter()
        .map(|c| Ok((c.clone(), Positroid::from_partial(&append_row(p.dle(), &c)?)?)))
        .collect::<Result<Vec<_>>>()?;
    out.sort_by_cached_key(|(_, q)| q.decperm().to_string());
    if out.windows(2).any(|w| w[0].1 == w[1].1) {
        return Err(Error::Membership("two column sets gave the same cover".into()));
    }
    Ok(out)
}

/// `P_k` from each restriction, `k = 1 .. n-1`.
pub fn flag_of_fpp(d: &PipeDream) -> Result<FlagPositroid> {
    if !d.is_fpp()? {
        return Err(Error::NotFpp);
    }
    let n = d.cols();
    let constituents = (1..n)
        .map(|k| Positroid::from_partial(&d.restrict(k)?))
        .collect::<Result<Vec<_>>>()?;
    FlagPositroid::new(n, constituents)
}

/// `{B ∪ {0} : B ∈ B(P)} ∪ B(Q)` on `[0, n]`, without a representability check.
pub fn phi_bases(p: &BasisSet, q: &BasisSet) -> Result<BasisSet> {
    if p.n() != q.n() || p.offset_zero() || q.offset_zero() {
        return Err(Error::GroundSetMismatch);
    }
    if p.k() + 1 != q.k() {
        return Err(Error::NotRepresentableCover);
    }
    let with_zero = p.bases().iter().map(|b| {
        let mut x = vec![0];
        x.extend_from_slice(b);
        x
    });
    BasisSet::new(p.n(), true, with_zero.chain(q.bases().iter().cloned()))
}

/// `phi` on a cover produced by [`quotient_covers`].
pub fn phi(p: &Positroid, q: &Positroid) -> Result<BasisSet> {
    if q.rank() != p.rank() + 1 || !quotient_covers(p)?.contains(q) {
        return Err(Error::NotRepresentableCover);
    }
    phi_bases(p.bases(), q.bases())
}

/// Splits `R` on `[0, n]` into the bases through 0 (with 0 removed) and those avoiding 0.
pub fn psi(r: &BasisSet) -> Result<(BasisSet, BasisSet)> {
    if !r.offset_zero() {
        return Err(Error::GroundSetMismatch);
    }
    if r.lex_min().first() != Some(&0) {
        return Err(Error::Membership("0 is not in the lex-min basis S(R)".into()));
    }
    let avoid: Vec<Vec<usize>> = r.bases().iter().filter(|b| b[0] != 0).cloned().collect();
    if avoid.is_empty() {
        return Err(Error::Membership("T(R) is empty: every basis contains 0".into()));
    }
    let through: Vec<Vec<usize>> = r.bases().iter().filter(|b| b[0] == 0).map(|b| b[1..].to_vec()).collect();
    let p = BasisSet::new(r.n(), false, through)?;
    let q = BasisSet::new(r.n(), false, avoid)?;
    if !is_quotient(&p, &q)? {
        return Err(Error::Membership("the split pair is not a quotient".into()));
    }
    Ok((p, q))
}

/// `psi` identified back to positroids (exhaustive matching, small `n`).
pub fn psi_positroids(r: &BasisSet) -> Result<(Positroid, Positroid)> {
    let (p, q) = psi(r)?;
    Ok((Positroid::from_bases(&p)?, Positroid::from_bases(&q)?))
}

/// `D^Le(P)` with a zeroth column and a row whose pivot sits in column 0 and
/// whose elbows sit in `C`.
pub fn extended_dream(dle: &PipeDream, c: &BTreeSet<usize>) -> Result<PipeDream> {
    if dle.zero_column() {
        return Err(Error::GroundSetMismatch);
    }
    let k = dle.rows();
    let mut pivots = dle.pivots().to_vec();
    pivots.push(0);
    PipeDream::from_filling(dle.cols() + 1, pivots, true, |i, j| {
        if i <= k {
            dle.tile(i, j)
        } else if c.contains(&j) {
            Tile::Elbow
        } else {
            Tile::Cross
        }
    })
}
