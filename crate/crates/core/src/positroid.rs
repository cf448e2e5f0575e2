//! Matroid predicates on basis families, positroids keyed by their
//! decreasing-pivot pipe dream, blocked columns and standardization.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::decperm::{decperm_of, DecoratedPermutation};
use crate::error::{Error, Result};
use crate::guard;
use crate::pathgraph::{bases_of, BasisSet};
use crate::pipedream::{rotate_le, Exit, PipeDream, Tile};

/// Basis exchange over all ordered pairs.
pub fn is_matroid(b: &BasisSet) -> bool {
    let sets: Vec<BTreeSet<usize>> = b.bases().iter().map(|x| x.iter().copied().collect()).collect();
    for x in &sets {
        for y in &sets {
            for &a in x.difference(y) {
                let ok = y.difference(x).any(|&c| {
                    let mut z: Vec<usize> = x.iter().copied().filter(|&e| e != a).collect();
                    z.push(c);
                    z.sort_unstable();
                    b.contains(&z)
                });
                if !ok {
                    return false;
                }
            }
        }
    }
    true
}

/// Complements of the bases.
pub fn dual(b: &BasisSet) -> Result<BasisSet> {
    if !is_matroid(b) {
        return Err(Error::NotMatroid(b.to_string()));
    }
    let ground = b.ground();
    let comp = b
        .bases()
        .iter()
        .map(|x| ground.iter().copied().filter(|e| !x.contains(e)).collect::<Vec<_>>());
    BasisSet::new(b.n(), b.offset_zero(), comp)
}

fn same_ground(m: &BasisSet, mp: &BasisSet) -> Result<()> {
    if m.n() != mp.n() || m.offset_zero() != mp.offset_zero() {
        return Err(Error::GroundSetMismatch);
    }
    Ok(())
}

fn subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

/// Matroid quotient: basis containment both ways and every flat of `m` a flat of `mp`.
pub fn is_quotient(m: &BasisSet, mp: &BasisSet) -> Result<bool> {
    Ok(has_basis_containment(m, mp)? && is_quotient_by_flats(m, mp)?)
}

/// Every basis of `m` lies in a basis of `mp`, every basis of `mp` contains one of `m`.
pub fn has_basis_containment(m: &BasisSet, mp: &BasisSet) -> Result<bool> {
    same_ground(m, mp)?;
    if m.k() > mp.k() {
        return Ok(false);
    }
    let up = m.bases().iter().all(|b| mp.bases().iter().any(|c| subset(b, c)));
    let down = mp.bases().iter().all(|c| m.bases().iter().any(|b| subset(b, c)));
    Ok(up && down)
}

/// Rank of a subset as the largest intersection with a basis.
pub fn rank_of(b: &BasisSet, s: &BTreeSet<usize>) -> usize {
    b.bases().iter().map(|x| x.iter().filter(|e| s.contains(e)).count()).max().unwrap_or(0)
}

/// Closed subsets of the ground set.
pub fn flats(b: &BasisSet) -> BTreeSet<BTreeSet<usize>> {
    let ground = b.ground();
    let mut out = BTreeSet::new();
    for mask in 0u64..1 << ground.len() {
        let s: BTreeSet<usize> =
            ground.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
        let r = rank_of(b, &s);
        let closed = ground.iter().filter(|e| !s.contains(e)).all(|&e| {
            let mut t = s.clone();
            t.insert(e);
            rank_of(b, &t) > r
        });
        if closed {
            out.insert(s);
        }
    }
    out
}

/// Quotient through flats: every flat of `m` is a flat of `mp`.
pub fn is_quotient_by_flats(m: &BasisSet, mp: &BasisSet) -> Result<bool> {
    same_ground(m, mp)?;
    guard::check(m.ground().len(), 12)?;
    let fm = flats(m);
    let fmp = flats(mp);
    Ok(fm.is_subset(&fmp))
}

/// Non-pivot columns containing no cross whose horizontal pipe leaves through the bottom.
pub fn unblocked_columns(d: &PipeDream) -> Result<BTreeSet<usize>> {
    let traces = d.traces()?;
    let bottom: BTreeSet<usize> =
        traces.iter().filter(|t| matches!(t.exit, Exit::Bottom(_))).map(|t| t.label).collect();
    let mut blocked = d.pivot_set();
    for t in &traces {
        if !bottom.contains(&t.label) {
            continue;
        }
        for &(r, c, p) in &t.cells {
            if p == crate::pipedream::Passage::Across && d.tile(r, c) == Tile::Cross {
                blocked.insert(c);
            }
        }
    }
    Ok(d.labels().filter(|j| !blocked.contains(j)).collect())
}

/// Pivot columns and columns with a cross that has an elbow to its right are blocked.
pub fn unblocked_columns_le_form(d: &PipeDream) -> Result<BTreeSet<usize>> {
    if !d.has_decreasing_pivots() {
        return Err(Error::NotDecreasing);
    }
    let mut blocked = d.pivot_set();
    for i in 1..=d.rows() {
        for j in d.labels() {
            if d.tile(i, j) == Tile::Cross && d.labels().any(|jp| jp > j && d.tile(i, jp) == Tile::Elbow) {
                blocked.insert(j);
            }
        }
    }
    Ok(d.labels().filter(|j| !blocked.contains(j)).collect())
}

/// Row swap sending pivots `(a, b)` with `a < b` in rows `i, i+1` to `(b, a)`.
pub fn standardize_step(d: &PipeDream, i: usize) -> Result<PipeDream> {
    let k = d.rows();
    if i < 1 || i + 1 > k {
        return Err(Error::RowOutOfRange(i));
    }
    let (a, b) = (d.pivots()[i - 1], d.pivots()[i]);
    if a > b {
        return Ok(d.clone());
    }
    let top = |j: usize| d.tile(i, j);
    let bot = |j: usize| d.tile(i + 1, j);
    let j_star = d.labels().filter(|&j| j >= b).find(|&j| top(j) == Tile::Cross && bot(j).is_turn());
    let mut tiles = d.tiles().to_vec();
    let base = d.base();
    for j in d.labels() {
        let (t, s) = if j < a {
            (top(j), bot(j))
        } else if j == a {
            (Tile::Vertical, Tile::Pivot)
        } else if j < b {
            (bot(j), top(j))
        } else if j == b {
            (Tile::Pivot, Tile::Horizontal)
        } else {
            match j_star {
                Some(js) if j == js => (bot(j), Tile::Elbow),
                Some(js) if j > js => (bot(j), top(j)),
                _ => (top(j), bot(j)),
            }
        };
        tiles[i - 1][j - base] = t;
        tiles[i][j - base] = s;
    }
    let mut pivots = d.pivots().to_vec();
    pivots.swap(i - 1, i);
    PipeDream::new(d.cols(), pivots, tiles, d.zero_column())
}

/// Apply `st_i` at the least ascent until pivots decrease.
pub fn standardize(d: &PipeDream) -> Result<PipeDream> {
    let mut cur = d.clone();
    while let Some(i) = (1..cur.rows()).find(|&i| cur.pivots()[i - 1] < cur.pivots()[i]) {
        cur = standardize_step(&cur, i)?;
    }
    Ok(cur)
}

/// A positroid, identified by its decreasing-pivot Γ-free dream.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "PositroidJson", into = "PositroidJson")]
pub struct Positroid {
    dle: PipeDream,
    bases: BasisSet,
}

#[derive(Serialize, Deserialize)]
struct PositroidJson {
    #[serde(flatten)]
    dream: PipeDream,
    rank: usize,
}

impl TryFrom<PositroidJson> for Positroid {
    type Error = Error;
    fn try_from(j: PositroidJson) -> Result<Self> {
        if j.rank != j.dream.rows() {
            return Err(Error::MalformedDream(format!("rank {} but {} rows", j.rank, j.dream.rows())));
        }
        Positroid::from_dle(j.dream)
    }
}

impl From<Positroid> for PositroidJson {
    fn from(p: Positroid) -> Self {
        let rank = p.rank();
        PositroidJson { dream: p.dle, rank }
    }
}

impl PartialEq for Positroid {
    fn eq(&self, other: &Self) -> bool {
        self.dle == other.dle
    }
}

impl Eq for Positroid {}

impl Hash for Positroid {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.dle.hash(h)
    }
}

impl PartialOrd for Positroid {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Positroid {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.dle.cmp(&other.dle)
    }
}

impl Positroid {
    pub fn from_dle(dle: PipeDream) -> Result<Self> {
        if dle.zero_column() {
            return Err(Error::MalformedDream("positroids live on [n]".into()));
        }
        if !dle.has_decreasing_pivots() {
            return Err(Error::NotDecreasing);
        }
        if !dle.is_gamma_free()? {
            return Err(Error::NotGammaFree);
        }
        let bases = bases_of(&dle)?;
        Ok(Positroid { dle, bases })
    }

    /// Standardizes any Γ-free partial dream.
    pub fn from_partial(d: &PipeDream) -> Result<Self> {
        Self::from_dle(standardize(d)?)
    }

    pub fn from_decperm(pi: &DecoratedPermutation) -> Result<Self> {
        Self::from_dle(crate::decperm::dle_of(pi)?)
    }

    /// Exhaustive match against every positroid of the same rank and lex-min basis.
    pub fn from_bases(b: &BasisSet) -> Result<Self> {
        if b.offset_zero() {
            return Err(Error::GroundSetMismatch);
        }
        guard::check(b.n(), 6)?;
        let mut pivots = b.lex_min().to_vec();
        pivots.reverse();
        for d in dle_fillings(b.n(), &pivots)? {
            let p = Positroid::from_dle(d)?;
            if p.bases == *b {
                return Ok(p);
            }
        }
        Err(Error::NotMatroid(format!("{b} is not a positroid")))
    }

    pub fn uniform(k: usize, n: usize) -> Result<Self> {
        let pivots: Vec<usize> = (1..=k).rev().collect();
        Self::from_dle(PipeDream::from_filling(n, pivots, false, |_, _| Tile::Elbow)?)
    }

    pub fn dle(&self) -> &PipeDream {
        &self.dle
    }

    pub fn bases(&self) -> &BasisSet {
        &self.bases
    }

    pub fn rank(&self) -> usize {
        self.dle.rows()
    }

    pub fn n(&self) -> usize {
        self.dle.cols()
    }

    pub fn decperm(&self) -> DecoratedPermutation {
        decperm_of(&self.dle).expect("canonical dream has a decorated permutation")
    }

    pub fn unblocked(&self) -> BTreeSet<usize> {
        unblocked_columns(&self.dle).expect("canonical dream traces")
    }

    pub fn dual(&self) -> Result<Positroid> {
        Positroid::from_decperm(&crate::decperm::inverse_decperm(&self.decperm()))
    }

    pub fn is_lpm(&self) -> bool {
        is_lpm(self)
    }
}

impl fmt::Display for Positroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.decperm())
    }
}

/// Crosses of the Le diagram fill a partition shape anchored at its corner,
/// so the elbows form a skew shape sharing the diagram's lower boundary.
pub fn is_lpm(p: &Positroid) -> bool {
    let le = rotate_le(p.dle()).expect("decreasing pivots");
    for i in 0..le.k {
        for q in 0..le.shape[i] {
            if le.tiles[i][q] == Tile::Cross {
                let closed = (0..=i).all(|r| (0..=q).all(|s| le.tiles[r][s] == Tile::Cross));
                if !closed {
                    return false;
                }
            }
        }
    }
    true
}

/// Bases between the lex-min and lex-max in the Gale order.
pub fn is_gale_interval(b: &BasisSet) -> bool {
    let (lo, hi) = (b.lex_min().to_vec(), b.lex_max().to_vec());
    let gale = |x: &[usize], y: &[usize]| x.iter().zip(y).all(|(a, c)| a <= c);
    b.ground()
        .into_iter()
        .combinations(b.k())
        .all(|s| (gale(&lo, &s) && gale(&s, &hi)) == b.contains(&s))
}

/// All Γ-free fillings for fixed decreasing pivots.
pub fn dle_fillings(n: usize, pivots: &[usize]) -> Result<Vec<PipeDream>> {
    let skeleton = PipeDream::all_cross(n, pivots.to_vec())?;
    let boxes = skeleton.rothe_boxes();
    let mut out = Vec::new();
    for mask in 0u64..1 << boxes.len() {
        let elbows: HashMap<(usize, usize), bool> =
            boxes.iter().enumerate().map(|(b, &ij)| (ij, mask >> b & 1 == 1)).collect();
        let d = PipeDream::from_filling(n, pivots.to_vec(), false, |i, j| {
            if elbows[&(i, j)] {
                Tile::Elbow
            } else {
                Tile::Cross
            }
        })?;
        if d.is_gamma_free()? {
            out.push(d);
        }
    }
    Ok(out)
}

/// Every positroid on `[n]` of rank `k`.
pub fn positroids_of_rank(n: usize, k: usize) -> Result<Vec<Positroid>> {
    guard::check(n, 7)?;
    let mut out = Vec::new();
    for set in (1..=n).combinations(k) {
        let pivots: Vec<usize> = set.into_iter().rev().collect();
        for d in dle_fillings(n, &pivots)? {
            out.push(Positroid::from_dle(d)?);
        }
    }
    out.sort_by_key(|p| p.decperm().to_string());
    Ok(out)
}

/// Every positroid on `[n]`, by rank.
pub fn all_positroids(n: usize) -> Result<Vec<Vec<Positroid>>> {
    (0..=n).map(|k| positroids_of_rank(n, k)).collect()
}
