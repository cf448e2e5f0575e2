//! Permutations of `[n]` in one-line notation, Bruhat order, Rothe diagrams
//! and reduced words.
//!
//! Everything is 1-indexed. The product is functional composition,
//! `(a * b)(i) = a(b(i))`, so right multiplication by `s_i` swaps the entries
//! in positions `i` and `i + 1`.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::guard;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    values: Vec<usize>,
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Permutation::new(v)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.values
    }
}

impl Permutation {
    pub fn new(values: Vec<usize>) -> Result<Self> {
        let n = values.len();
        if n == 0 {
            return Err(Error::EmptyPermutation);
        }
        let mut seen = vec![false; n + 1];
        for &x in &values {
            if x == 0 || x > n || seen[x] {
                return Err(Error::InvalidPermutation(format!("{values:?}")));
            }
            seen[x] = true;
        }
        Ok(Permutation { values })
    }

    pub fn identity(n: usize) -> Self {
        Permutation { values: (1..=n).collect() }
    }

    /// `w0 = n (n-1) ... 1`.
    pub fn longest(n: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::EmptyPermutation);
        }
        Ok(Permutation { values: (1..=n).rev().collect() })
    }

    /// Cycle `(b_l ... b_1)` read as: `b_l -> b_{l-1} -> ... -> b_1 -> b_l`.
    /// The slice is given in written order, left to right.
    pub fn from_cycle(n: usize, cycle: &[usize]) -> Result<Self> {
        let mut values: Vec<usize> = (1..=n).collect();
        let l = cycle.len();
        for (idx, &b) in cycle.iter().enumerate() {
            if b == 0 || b > n {
                return Err(Error::InvalidPermutation(format!("cycle {cycle:?}")));
            }
            values[b - 1] = cycle[(idx + 1) % l];
        }
        Permutation::new(values)
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// `u(i)` for 1-indexed `i`.
    pub fn at(&self, i: usize) -> usize {
        self.values[i - 1]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.n()];
        for (i, &x) in self.values.iter().enumerate() {
            inv[x - 1] = i + 1;
        }
        Permutation { values: inv }
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let v = &self.values;
        (0..v.len())
            .tuple_combinations()
            .filter(|&(i, j)| v[i] > v[j])
            .count()
    }

    /// `self * s_i`, i.e. swap positions `i` and `i + 1`.
    pub fn times_s(&self, i: usize) -> Self {
        let mut values = self.values.clone();
        values.swap(i - 1, i);
        Permutation { values }
    }

    pub fn times_word(&self, w: &Word) -> Result<Self> {
        let mut values = self.values.clone();
        for &i in &w.letters {
            if i == 0 || i >= values.len() {
                return Err(Error::LetterOutOfRange { index: i, n: values.len() });
            }
            values.swap(i - 1, i);
        }
        Ok(Permutation { values })
    }

    pub fn ascents(&self) -> Vec<usize> {
        (1..self.n()).filter(|&i| self.at(i) < self.at(i + 1)).collect()
    }

    /// Some reduced word, found by sorting descents from the left.
    pub fn reduced_word(&self) -> Word {
        let mut p = self.values.clone();
        let mut letters = Vec::new();
        while let Some(i) = (0..p.len().saturating_sub(1)).find(|&i| p[i] > p[i + 1]) {
            p.swap(i, i + 1);
            letters.push(i + 1);
        }
        letters.reverse();
        Word { letters }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.n() <= 9 { "" } else { "," };
        write!(f, "{}", self.values.iter().join(sep))
    }
}

impl FromStr for Permutation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let values: Vec<usize> = if s.contains(',') || s.contains(' ') {
            s.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(s.to_string())))
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(|| Error::Parse(s.to_string())))
                .collect::<Result<_>>()?
        };
        Permutation::new(values)
    }
}

pub fn compose(a: &Permutation, b: &Permutation) -> Result<Permutation> {
    if a.n() != b.n() {
        return Err(Error::SizeMismatch(a.n(), b.n()));
    }
    Ok(Permutation { values: b.values.iter().map(|&x| a.values[x - 1]).collect() })
}

pub fn longest(n: usize) -> Result<Permutation> {
    Permutation::longest(n)
}

pub fn length(u: &Permutation) -> usize {
    u.length()
}

/// Column `j` (1-indexed) holds `u_1, ..., u_{n-j}` sorted increasingly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Key {
    pub n: usize,
    pub columns: Vec<Vec<usize>>,
}

pub fn key(u: &Permutation) -> Key {
    let n = u.n();
    let columns = (1..n)
        .map(|j| u.values[..n - j].iter().copied().sorted().collect())
        .collect();
    Key { n, columns }
}

/// Entrywise key comparison.
pub fn bruhat_leq(u: &Permutation, v: &Permutation) -> Result<bool> {
    if u.n() != v.n() {
        return Err(Error::SizeMismatch(u.n(), v.n()));
    }
    let n = u.n();
    let mut a = Vec::with_capacity(n);
    let mut b = Vec::with_capacity(n);
    for len in 1..n {
        a.clear();
        b.clear();
        a.extend_from_slice(&u.values[..len]);
        b.extend_from_slice(&v.values[..len]);
        a.sort_unstable();
        b.sort_unstable();
        if a.iter().zip(&b).any(|(x, y)| x > y) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn subword_cache() -> &'static Mutex<HashMap<Permutation, Arc<HashSet<Permutation>>>> {
    static CACHE: OnceLock<Mutex<HashMap<Permutation, Arc<HashSet<Permutation>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// All permutations given by reduced subwords of a reduced word of `v`.
pub fn reduced_subword_products(v: &Permutation) -> Arc<HashSet<Permutation>> {
    if let Some(hit) = subword_cache().lock().unwrap().get(v) {
        return hit.clone();
    }
    let word = v.reduced_word().letters;
    let n = v.n();
    let mut frontier: HashSet<Permutation> = HashSet::from([Permutation::identity(n)]);
    for &s in &word {
        let grown: Vec<Permutation> = frontier
            .iter()
            .filter(|p| p.at(s) < p.at(s + 1))
            .map(|p| p.times_s(s))
            .collect();
        frontier.extend(grown);
    }
    let out = Arc::new(frontier);
    subword_cache().lock().unwrap().insert(v.clone(), out.clone());
    out
}

/// Subword criterion: some reduced word of `v` contains a reduced word of `u`.
pub fn bruhat_leq_subword_oracle(u: &Permutation, v: &Permutation) -> Result<bool> {
    if u.n() != v.n() {
        return Err(Error::SizeMismatch(u.n(), v.n()));
    }
    guard::check(u.n(), 6)?;
    Ok(reduced_subword_products(v).contains(u))
}

/// 1-indexed `(row, column)` boxes, sorted.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct BoxSet {
    pub boxes: BTreeSet<(usize, usize)>,
}

impl BoxSet {
    pub fn len(&self) -> usize {
        self.boxes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boxes.is_empty()
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.boxes.contains(&(i, j))
    }

    /// Columns of row `i`, increasing.
    pub fn row(&self, i: usize) -> Vec<usize> {
        self.boxes.range((i, 0)..(i + 1, 0)).map(|&(_, j)| j).collect()
    }
}

/// `{(i, j) : u_i < j, u^{-1}_j > i}`.
pub fn rothe_diagram(u: &Permutation) -> BoxSet {
    let n = u.n();
    let inv = u.inverse();
    let boxes = (1..=n)
        .cartesian_product(1..=n)
        .filter(|&(i, j)| u.at(i) < j && inv.at(j) > i)
        .collect();
    BoxSet { boxes }
}

/// Value pairs `(v_a, v_b)` with `a < b` and `v_a < v_b`.
pub fn coinversions(v: &Permutation) -> BTreeSet<(usize, usize)> {
    let n = v.n();
    (1..=n)
        .tuple_combinations()
        .filter(|&(a, b)| v.at(a) < v.at(b))
        .map(|(a, b)| (v.at(a), v.at(b)))
        .collect()
}

/// Sequence of simple transpositions `s_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word {
    pub letters: Vec<usize>,
}

impl Word {
    pub fn new(letters: Vec<usize>) -> Self {
        Word { letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn to_permutation(&self, n: usize) -> Result<Permutation> {
        Permutation::identity(n).times_word(self)
    }

    pub fn is_reduced(&self, n: usize) -> Result<bool> {
        Ok(self.to_permutation(n)?.length() == self.len())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letters.iter().map(|i| format!("s{i}")).join(" "))
    }
}

/// Rothe boxes in reading order: rows bottom to top, each row right to left.
pub fn rothe_reading_order(u: &Permutation) -> Vec<(usize, usize)> {
    let rothe = rothe_diagram(u);
    (1..=u.n())
        .rev()
        .flat_map(|i| rothe.row(i).into_iter().rev().map(move |j| (i, j)))
        .collect()
}

/// The box in row `i` that is `h`-th from the right gets `s_{i+h-1}`.
pub fn word_x_of_rothe(u: &Permutation) -> Word {
    let rothe = rothe_diagram(u);
    let mut letters = Vec::with_capacity(rothe.len());
    for i in (1..=u.n()).rev() {
        let row = rothe.row(i);
        letters.extend((1..=row.len()).map(|h| i + h - 1));
    }
    Word { letters }
}
