//! Decorated permutations and their cyclic shifts.
//!
//! Colour 2 (overline, suffix `o`) marks weak excedances, colour 1
//! (underline, suffix `u`) the rest. The rank is the number of 2-coloured
//! positions.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{compose, Permutation};
use crate::pipedream::{construct_fpp, trivial_completion, Exit, PipeDream};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "DecpermJson", into = "DecpermJson")]
pub struct DecoratedPermutation {
    perm: Permutation,
    color: Vec<u8>,
}

#[derive(Serialize, Deserialize)]
struct DecpermJson {
    perm: Vec<usize>,
    color: Vec<u8>,
}

impl TryFrom<DecpermJson> for DecoratedPermutation {
    type Error = Error;
    fn try_from(j: DecpermJson) -> Result<Self> {
        DecoratedPermutation::new(Permutation::new(j.perm)?, j.color)
    }
}

impl From<DecoratedPermutation> for DecpermJson {
    fn from(d: DecoratedPermutation) -> Self {
        DecpermJson { perm: d.perm.into(), color: d.color }
    }
}

impl DecoratedPermutation {
    pub fn new(perm: Permutation, color: Vec<u8>) -> Result<Self> {
        if color.len() != perm.n() {
            return Err(Error::SizeMismatch(perm.n(), color.len()));
        }
        for j in 1..=perm.n() {
            let c = color[j - 1];
            let ok = match perm.at(j).cmp(&j) {
                std::cmp::Ordering::Less => c == 1,
                std::cmp::Ordering::Greater => c == 2,
                std::cmp::Ordering::Equal => c == 1 || c == 2,
            };
            if !ok {
                return Err(Error::InvalidDecoration(format!("position {j} cannot carry colour {c}")));
            }
        }
        Ok(DecoratedPermutation { perm, color })
    }

    /// Colours forced by excedances; fixed points in `overlined` get colour 2.
    pub fn with_fixed(perm: Permutation, overlined: &BTreeSet<usize>) -> Self {
        let color = (1..=perm.n())
            .map(|j| match perm.at(j).cmp(&j) {
                std::cmp::Ordering::Less => 1,
                std::cmp::Ordering::Greater => 2,
                std::cmp::Ordering::Equal => 1 + u8::from(overlined.contains(&j)),
            })
            .collect();
        DecoratedPermutation { perm, color }
    }

    /// `1 2 ... n`, all underlined.
    pub fn identity(n: usize) -> Self {
        Self::with_fixed(Permutation::identity(n), &BTreeSet::new())
    }

    pub fn n(&self) -> usize {
        self.perm.n()
    }

    pub fn perm(&self) -> &Permutation {
        &self.perm
    }

    pub fn at(&self, j: usize) -> usize {
        self.perm.at(j)
    }

    pub fn color(&self, j: usize) -> u8 {
        self.color[j - 1]
    }

    pub fn colors(&self) -> &[u8] {
        &self.color
    }

    pub fn rank(&self) -> usize {
        self.color.iter().filter(|&&c| c == 2).count()
    }

    pub fn positions_of_color(&self, c: u8) -> Vec<usize> {
        (1..=self.n()).filter(|&j| self.color(j) == c).collect()
    }

    /// Overlines and underlines with combining marks.
    pub fn to_unicode(&self) -> String {
        let mut s = String::new();
        for j in 1..=self.n() {
            let mark = if self.color(j) == 2 { '\u{0304}' } else { '\u{0332}' };
            for ch in self.at(j).to_string().chars() {
                s.push(ch);
                s.push(mark);
            }
            if self.n() > 9 && j < self.n() {
                s.push(',');
            }
        }
        s
    }
}

impl fmt::Display for DecoratedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.n() <= 9 { "" } else { "," };
        let mut items = (1..=self.n()).map(|j| format!("{}{}", self.at(j), if self.color(j) == 2 { 'o' } else { 'u' }));
        write!(f, "{}", items.join(sep))
    }
}

/// Tokens are digits with an optional `o`/`u` suffix, separated by spaces or
/// commas. A bare digit run with no separators and no suffix is read one digit
/// per value. Fixed points need a suffix.
impl FromStr for DecoratedPermutation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("cannot read decorated permutation {s:?}"));
        let mut values = Vec::new();
        let mut marks = Vec::new();
        for chunk in s.split(|c: char| c == ',' || c.is_whitespace()).filter(|c| !c.is_empty()) {
            let spaced = chunk.len() < s.trim().len();
            let mut digits = String::new();
            for ch in chunk.chars() {
                match ch {
                    '0'..='9' => digits.push(ch),
                    'o' | 'u' => {
                        if digits.is_empty() {
                            return Err(bad());
                        }
                        values.push(digits.parse::<usize>().map_err(|_| bad())?);
                        marks.push(Some(if ch == 'o' { 2u8 } else { 1 }));
                        digits.clear();
                    }
                    _ => return Err(bad()),
                }
            }
            if !digits.is_empty() {
                if spaced && !chunk.contains(['o', 'u']) {
                    values.push(digits.parse::<usize>().map_err(|_| bad())?);
                    marks.push(None);
                } else {
                    for d in digits.chars() {
                        values.push(d.to_digit(10).ok_or_else(bad)? as usize);
                        marks.push(None);
                    }
                }
            }
        }
        let perm = Permutation::new(values)?;
        let color = (1..=perm.n())
            .map(|j| match (marks[j - 1], perm.at(j).cmp(&j)) {
                (Some(c), _) => Ok(c),
                (None, std::cmp::Ordering::Less) => Ok(1),
                (None, std::cmp::Ordering::Greater) => Ok(2),
                (None, std::cmp::Ordering::Equal) => {
                    Err(Error::InvalidDecoration(format!("fixed point {j} needs a decoration")))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        DecoratedPermutation::new(perm, color)
    }
}

/// `π = v u^{-1}` of the trivial completion; pivot columns overlined.
pub fn decperm_of(d: &PipeDream) -> Result<DecoratedPermutation> {
    if !d.has_decreasing_pivots() {
        return Err(Error::NotDecreasing);
    }
    let full = trivial_completion(d)?;
    let u = full.pivot_permutation()?;
    let v = full.exit_permutation()?;
    let pi = compose(&v, &u.inverse())?;
    Ok(DecoratedPermutation::with_fixed(pi, &d.pivot_set()))
}

/// Reads `π` off the boundary: `π(u_r)` exits row `r`, `π(j)` exits the bottom at column `j`.
pub fn decperm_by_exits(d: &PipeDream) -> Result<DecoratedPermutation> {
    let n = d.cols();
    let mut values = vec![0; n];
    for t in d.traces()? {
        let pos = match t.exit {
            Exit::Right(r) => d.pivots()[r - 1],
            Exit::Bottom(j) => j,
        };
        values[pos - 1] = t.label;
    }
    Ok(DecoratedPermutation::with_fixed(Permutation::new(values)?, &d.pivot_set()))
}

/// Decreasing-pivot dream through `construct_fpp(u, π u)` restricted to the rank.
pub fn dle_of(pi: &DecoratedPermutation) -> Result<PipeDream> {
    let mut u: Vec<usize> = pi.positions_of_color(2).into_iter().rev().collect();
    u.extend(pi.positions_of_color(1).into_iter().rev());
    let u = Permutation::new(u)?;
    let v = compose(pi.perm(), &u)?;
    construct_fpp(&u, &v)?.restrict(pi.rank())
}

/// 1-coloured `j` with every later 1-coloured value larger than `π(j)`.
pub fn unblocked_positions(pi: &DecoratedPermutation) -> BTreeSet<usize> {
    let ones = pi.positions_of_color(1);
    ones.iter()
        .enumerate()
        .filter(|&(idx, &j)| ones[idx + 1..].iter().all(|&jp| pi.at(jp) > pi.at(j)))
        .map(|(_, &j)| j)
        .collect()
}

/// 2-coloured `j` with every earlier 2-coloured value smaller than `π(j)`.
pub fn left_unblocked_positions(pi: &DecoratedPermutation) -> BTreeSet<usize> {
    let twos = pi.positions_of_color(2);
    twos.iter()
        .enumerate()
        .filter(|&(idx, &j)| twos[..idx].iter().all(|&jp| pi.at(jp) < pi.at(j)))
        .map(|(_, &j)| j)
        .collect()
}

fn check_subset(c: &BTreeSet<usize>, allowed: &BTreeSet<usize>) -> Result<()> {
    if c.is_empty() {
        return Err(Error::EmptyC);
    }
    match c.iter().find(|j| !allowed.contains(j)) {
        Some(&j) => Err(Error::NotUnblocked(j)),
        None => Ok(()),
    }
}

/// Greedy 2-coloured `t_1 < ... < t_s < min C` with `π(max C) < π(t_1) < ... < π(t_s)`.
pub fn tc_set(pi: &DecoratedPermutation, c: &BTreeSet<usize>) -> Result<BTreeSet<usize>> {
    check_subset(c, &unblocked_positions(pi))?;
    let (lo, hi) = (*c.first().unwrap(), *c.last().unwrap());
    let mut m = pi.at(hi);
    let mut out = BTreeSet::new();
    for t in 1..lo {
        if pi.color(t) == 2 && pi.at(t) > m {
            out.insert(t);
            m = pi.at(t);
        }
    }
    Ok(out)
}

/// Greedy 1-coloured `i_1 > ... > i_m > max R` with `π(min R) > π(i_1) > ... > π(i_m)`.
pub fn or_set(pi: &DecoratedPermutation, r: &BTreeSet<usize>) -> Result<BTreeSet<usize>> {
    check_subset(r, &left_unblocked_positions(pi))?;
    let (lo, hi) = (*r.first().unwrap(), *r.last().unwrap());
    let mut m = pi.at(lo);
    let mut out = BTreeSet::new();
    for i in (hi + 1..=pi.n()).rev() {
        if pi.color(i) == 1 && pi.at(i) < m {
            out.insert(i);
            m = pi.at(i);
        }
    }
    Ok(out)
}

fn complement(n: usize, a: &BTreeSet<usize>) -> Vec<usize> {
    (1..=n).filter(|j| !a.contains(j)).collect()
}

fn shift(pi: &DecoratedPermutation, a: &BTreeSet<usize>, right: bool, new_fixed: u8) -> Result<DecoratedPermutation> {
    let n = pi.n();
    let moved = complement(n, a);
    let mut cycle = moved.clone();
    if right {
        cycle.reverse();
    }
    let sigma = if cycle.is_empty() { Permutation::identity(n) } else { Permutation::from_cycle(n, &cycle)? };
    let perm = compose(pi.perm(), &sigma)?;
    let color = (1..=n)
        .map(|j| match perm.at(j).cmp(&j) {
            std::cmp::Ordering::Less => 1,
            std::cmp::Ordering::Greater => 2,
            std::cmp::Ordering::Equal if a.contains(&j) => pi.color(j),
            std::cmp::Ordering::Equal => new_fixed,
        })
        .collect();
    DecoratedPermutation::new(perm, color)
}

/// `π σ` with `σ = (b_l ... b_1)` over `[n] \ A`; new fixed points overlined.
pub fn right_cyclic_shift(pi: &DecoratedPermutation, a: &BTreeSet<usize>) -> Result<DecoratedPermutation> {
    shift(pi, a, true, 2)
}

/// `π τ` with `τ = (b_1 ... b_l)` over `[n] \ A`; new fixed points underlined.
pub fn left_cyclic_shift(pi: &DecoratedPermutation, a: &BTreeSet<usize>) -> Result<DecoratedPermutation> {
    shift(pi, a, false, 1)
}

/// Freeze set `[n] \ (C ⊔ T(C))`.
pub fn freeze_set_right(pi: &DecoratedPermutation, c: &BTreeSet<usize>) -> Result<BTreeSet<usize>> {
    let t = tc_set(pi, c)?;
    Ok((1..=pi.n()).filter(|j| !c.contains(j) && !t.contains(j)).collect())
}

/// Freeze set `[n] \ (R ⊔ O(R))`.
pub fn freeze_set_left(pi: &DecoratedPermutation, r: &BTreeSet<usize>) -> Result<BTreeSet<usize>> {
    let o = or_set(pi, r)?;
    Ok((1..=pi.n()).filter(|j| !r.contains(j) && !o.contains(j)).collect())
}

/// Nonempty subsets of `s` in order of increasing bitmask.
pub fn nonempty_subsets(s: &BTreeSet<usize>) -> Vec<BTreeSet<usize>> {
    let items: Vec<usize> = s.iter().copied().collect();
    (1u64..1 << items.len())
        .map(|mask| items.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &x)| x).collect())
        .collect()
}

/// One right shift per nonempty `C ⊆ U`, paired with `C`.
pub fn covers_by_shift_with_sets(pi: &DecoratedPermutation) -> Result<Vec<(BTreeSet<usize>, DecoratedPermutation)>> {
    nonempty_subsets(&unblocked_positions(pi))
        .into_iter()
        .map(|c| {
            let a = freeze_set_right(pi, &c)?;
            Ok((c, right_cyclic_shift(pi, &a)?))
        })
        .collect()
}

pub fn covers_by_shift(pi: &DecoratedPermutation) -> Result<Vec<DecoratedPermutation>> {
    Ok(covers_by_shift_with_sets(pi)?.into_iter().map(|(_, q)| q).collect())
}

/// One left shift per nonempty `R ⊆ S`.
pub fn covered_by_shift(pi: &DecoratedPermutation) -> Result<Vec<DecoratedPermutation>> {
    nonempty_subsets(&left_unblocked_positions(pi))
        .into_iter()
        .map(|r| left_cyclic_shift(pi, &freeze_set_left(pi, &r)?))
        .collect()
}

/// Inverse permutation; position `π(j)` takes colour `3 - c(j)`.
pub fn inverse_decperm(pi: &DecoratedPermutation) -> DecoratedPermutation {
    let inv = pi.perm().inverse();
    let mut color = vec![0u8; pi.n()];
    for j in 1..=pi.n() {
        color[pi.at(j) - 1] = 3 - pi.color(j);
    }
    DecoratedPermutation { perm: inv, color }
}

/// Every decorated permutation of `[n]`, sorted.
pub fn all_decperms(n: usize) -> Vec<DecoratedPermutation> {
    let mut out = Vec::new();
    for p in (1..=n).permutations(n) {
        let perm = Permutation::new(p).expect("permutation");
        let fixed: Vec<usize> = (1..=n).filter(|&j| perm.at(j) == j).collect();
        for mask in 0u64..1 << fixed.len() {
            let over = fixed.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &j)| j).collect();
            out.push(DecoratedPermutation::with_fixed(perm.clone(), &over));
        }
    }
    out.sort();
    out
}
