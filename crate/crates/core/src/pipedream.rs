//! Rothe pipe dreams, the flag positroid pipe dream construction, Γ-pattern
//! detection and the Le-diagram correspondence.
//!
//! A dream is a dense `rows x cols` tile grid. Pipes enter at the top of each
//! column and are never stored: every predicate retraces them from tiles.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt::{self, Write as _};

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::guard;
use crate::perm::{bruhat_leq, rothe_diagram, word_x_of_rothe, Permutation, Word};

/// `(row, column)` of a box.
pub type Cell = (usize, usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tile {
    Empty,
    Horizontal,
    Vertical,
    Pivot,
    Cross,
    Elbow,
}

impl Tile {
    pub fn letter(self) -> char {
        match self {
            Tile::Empty => '.',
            Tile::Horizontal => 'H',
            Tile::Vertical => 'V',
            Tile::Pivot => 'P',
            Tile::Cross => 'X',
            Tile::Elbow => 'E',
        }
    }

    pub fn from_letter(c: char) -> Result<Tile> {
        Ok(match c {
            '.' => Tile::Empty,
            'H' => Tile::Horizontal,
            'V' => Tile::Vertical,
            'P' => Tile::Pivot,
            'X' => Tile::Cross,
            'E' => Tile::Elbow,
            _ => return Err(Error::Parse(format!("unknown tile letter {c:?}"))),
        })
    }

    /// Elbow or pivot elbow.
    pub fn is_turn(self) -> bool {
        matches!(self, Tile::Elbow | Tile::Pivot)
    }
}

impl Serialize for Tile {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.letter().to_string())
    }
}

impl<'de> Deserialize<'de> for Tile {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Tile, D::Error> {
        let s = String::deserialize(d)?;
        let mut chars = s.chars();
        match (chars.next(), chars.next()) {
            (Some(c), None) => Tile::from_letter(c).map_err(serde::de::Error::custom),
            _ => Err(serde::de::Error::custom(format!("bad tile {s:?}"))),
        }
    }
}

/// How a pipe passes through a box.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Passage {
    Down,
    Across,
    TopToRight,
    LeftToBottom,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    /// Row of the right boundary.
    Right(usize),
    /// Column label on the bottom boundary.
    Bottom(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    pub label: usize,
    /// `(row, column label, passage)` in travel order.
    pub cells: Vec<(usize, usize, Passage)>,
    pub exit: Exit,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "DreamJson", into = "DreamJson")]
pub struct PipeDream {
    rows: usize,
    cols: usize,
    zero_column: bool,
    pivots: Vec<usize>,
    tiles: Vec<Vec<Tile>>,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
struct DreamJson {
    rows: usize,
    cols: usize,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    offset_zero: bool,
    pivots: Vec<usize>,
    tiles: Vec<Vec<Tile>>,
}

impl TryFrom<DreamJson> for PipeDream {
    type Error = Error;
    fn try_from(j: DreamJson) -> Result<Self> {
        if j.tiles.len() != j.rows {
            return Err(Error::MalformedDream(format!("expected {} tile rows", j.rows)));
        }
        PipeDream::new(j.cols, j.pivots, j.tiles, j.offset_zero)
    }
}

impl From<PipeDream> for DreamJson {
    fn from(d: PipeDream) -> Self {
        DreamJson {
            rows: d.rows,
            cols: d.cols,
            offset_zero: d.zero_column,
            pivots: d.pivots,
            tiles: d.tiles,
        }
    }
}

impl PipeDream {
    /// Validates pivots, forced tiles and that Rothe boxes hold crosses or elbows.
    pub fn new(cols: usize, pivots: Vec<usize>, tiles: Vec<Vec<Tile>>, zero_column: bool) -> Result<Self> {
        let rows = pivots.len();
        if rows > cols {
            return Err(Error::MalformedDream(format!("{rows} pivots for {cols} columns")));
        }
        if tiles.len() != rows || tiles.iter().any(|r| r.len() != cols) {
            return Err(Error::MalformedDream("grid shape does not match rows x cols".into()));
        }
        let d = PipeDream { rows, cols, zero_column, pivots, tiles };
        let base = d.base();
        let mut seen = HashSet::new();
        for &p in &d.pivots {
            if p < base || p >= base + cols || !seen.insert(p) {
                return Err(Error::MalformedDream(format!("bad pivot column {p}")));
            }
        }
        for i in 1..=rows {
            for j in d.labels() {
                let t = d.tile(i, j);
                match d.forced(i, j) {
                    Some(f) if f != t => {
                        return Err(Error::MalformedDream(format!(
                            "box ({i},{j}) must be {} but is {}",
                            f.letter(),
                            t.letter()
                        )))
                    }
                    None if !matches!(t, Tile::Cross | Tile::Elbow) => {
                        return Err(Error::MalformedDream(format!(
                            "Rothe box ({i},{j}) must be X or E, got {}",
                            t.letter()
                        )))
                    }
                    _ => {}
                }
            }
        }
        Ok(d)
    }

    /// Forced tiles from the pivots; Rothe boxes get `fill(i, j)`.
    pub fn from_filling(
        cols: usize,
        pivots: Vec<usize>,
        zero_column: bool,
        mut fill: impl FnMut(usize, usize) -> Tile,
    ) -> Result<Self> {
        let rows = pivots.len();
        let mut d = PipeDream {
            rows,
            cols,
            zero_column,
            pivots,
            tiles: vec![vec![Tile::Empty; cols]; rows],
        };
        for i in 1..=rows {
            for j in d.labels() {
                let t = d.forced(i, j).unwrap_or_else(|| fill(i, j));
                d.set(i, j, t);
            }
        }
        PipeDream::new(d.cols, d.pivots, d.tiles, zero_column)
    }

    /// Every Rothe box crossed.
    pub fn all_cross(cols: usize, pivots: Vec<usize>) -> Result<Self> {
        Self::from_filling(cols, pivots, false, |_, _| Tile::Cross)
    }

    /// Rows of tile letters, one row per line; whitespace inside a row is ignored.
    pub fn from_ascii(s: &str) -> Result<Self> {
        let grid: Vec<Vec<Tile>> = s
            .lines()
            .map(|l| l.chars().filter(|c| !c.is_whitespace()).map(Tile::from_letter).collect::<Result<Vec<_>>>())
            .filter(|r| r.as_ref().map_or(true, |r| !r.is_empty()))
            .collect::<Result<_>>()?;
        let cols = grid.first().map_or(0, Vec::len);
        let pivots = grid
            .iter()
            .map(|row| {
                let ps: Vec<usize> = row.iter().positions(|&t| t == Tile::Pivot).collect();
                match ps.as_slice() {
                    [p] => Ok(p + 1),
                    _ => Err(Error::MalformedDream("each row needs exactly one pivot".into())),
                }
            })
            .collect::<Result<_>>()?;
        PipeDream::new(cols, pivots, grid, false)
    }

    pub fn to_ascii(&self) -> String {
        let mut s = String::new();
        for row in &self.tiles {
            let _ = writeln!(s, "{}", row.iter().map(|t| t.letter()).join(" "));
        }
        s
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

    /// Label of the leftmost column: 0 with the zero-column flag, else 1.
    pub fn base(&self) -> usize {
        usize::from(!self.zero_column)
    }

    pub fn labels(&self) -> std::ops::Range<usize> {
        self.base()..self.base() + self.cols
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn pivot_set(&self) -> BTreeSet<usize> {
        self.pivots.iter().copied().collect()
    }

    pub fn is_complete(&self) -> bool {
        self.rows == self.cols
    }

    pub fn has_decreasing_pivots(&self) -> bool {
        self.pivots.windows(2).all(|w| w[0] > w[1])
    }

    /// `(i, j)` with 1-indexed row and column label.
    pub fn tile(&self, i: usize, j: usize) -> Tile {
        self.tiles[i - 1][j - self.base()]
    }

    pub fn tiles(&self) -> &[Vec<Tile>] {
        &self.tiles
    }

    /// Cross becomes elbow and back; other tiles untouched.
    pub fn flipped(&self, i: usize, j: usize) -> PipeDream {
        let mut d = self.clone();
        let t = match d.tile(i, j) {
            Tile::Cross => Tile::Elbow,
            Tile::Elbow => Tile::Cross,
            t => t,
        };
        d.set(i, j, t);
        d
    }

    fn set(&mut self, i: usize, j: usize, t: Tile) {
        let b = self.base();
        self.tiles[i - 1][j - b] = t;
    }

    /// The tile determined by the pivots alone, or `None` on a Rothe box.
    pub fn forced(&self, i: usize, j: usize) -> Option<Tile> {
        forced_tile(&self.pivots, i, j)
    }

    pub fn is_rothe(&self, i: usize, j: usize) -> bool {
        self.forced(i, j).is_none()
    }

    /// Rothe boxes in row-major order.
    pub fn rothe_boxes(&self) -> Vec<(usize, usize)> {
        (1..=self.rows)
            .cartesian_product(self.labels())
            .filter(|&(i, j)| self.is_rothe(i, j))
            .collect()
    }

    /// Rothe boxes rows bottom to top, each right to left.
    pub fn reading_order(&self) -> Vec<(usize, usize)> {
        (1..=self.rows)
            .rev()
            .flat_map(|i| self.labels().rev().filter(move |&j| self.is_rothe(i, j)).map(move |j| (i, j)))
            .collect()
    }

    pub fn count(&self, t: Tile) -> usize {
        self.tiles.iter().flatten().filter(|&&x| x == t).count()
    }

    pub fn elbow_count(&self) -> usize {
        self.count(Tile::Elbow)
    }

    pub fn cross_count(&self) -> usize {
        self.count(Tile::Cross)
    }

    /// First `k` rows.
    pub fn restrict(&self, k: usize) -> Result<PipeDream> {
        if k > self.rows {
            return Err(Error::RowOutOfRange(k));
        }
        Ok(PipeDream {
            rows: k,
            cols: self.cols,
            zero_column: self.zero_column,
            pivots: self.pivots[..k].to_vec(),
            tiles: self.tiles[..k].to_vec(),
        })
    }

    /// Appends one row with pivot `pivot`; Rothe boxes in `elbows` become elbows, the rest crosses.
    pub fn with_row(&self, pivot: usize, elbows: &BTreeSet<usize>) -> Result<PipeDream> {
        let mut pivots = self.pivots.clone();
        pivots.push(pivot);
        let k = self.rows;
        Self::from_filling(self.cols, pivots, self.zero_column, |i, j| {
            if i <= k {
                self.tile(i, j)
            } else if elbows.contains(&j) {
                Tile::Elbow
            } else {
                Tile::Cross
            }
        })
    }

    /// Same tiles with column labels shifted to start at 0.
    pub fn with_zero_column_labels(&self) -> PipeDream {
        let mut d = self.clone();
        if !d.zero_column {
            d.zero_column = true;
            d.pivots.iter_mut().for_each(|p| *p -= 1);
        }
        d
    }

    pub fn trace(&self, label: usize) -> Result<Trace> {
        let base = self.base();
        let mut cells = Vec::new();
        let (mut r, mut c) = (0usize, label - base);
        let mut from_top = true;
        if self.rows == 0 {
            return Ok(Trace { label, cells, exit: Exit::Bottom(label) });
        }
        loop {
            let t = self.tiles[r][c];
            let passage = match (t, from_top) {
                (Tile::Vertical | Tile::Cross, true) => Passage::Down,
                (Tile::Horizontal | Tile::Cross, false) => Passage::Across,
                (Tile::Elbow | Tile::Pivot, true) => Passage::TopToRight,
                (Tile::Elbow, false) => Passage::LeftToBottom,
                _ => {
                    return Err(Error::MalformedDream(format!(
                        "pipe {label} enters {} at ({},{}) from the {}",
                        t.letter(),
                        r + 1,
                        c + base,
                        if from_top { "top" } else { "left" }
                    )))
                }
            };
            cells.push((r + 1, c + base, passage));
            match passage {
                Passage::Down | Passage::LeftToBottom => {
                    r += 1;
                    from_top = true;
                    if r == self.rows {
                        return Ok(Trace { label, cells, exit: Exit::Bottom(c + base) });
                    }
                }
                Passage::Across | Passage::TopToRight => {
                    c += 1;
                    from_top = false;
                    if c == self.cols {
                        return Ok(Trace { label, cells, exit: Exit::Right(r + 1) });
                    }
                }
            }
        }
    }

    pub fn traces(&self) -> Result<Vec<Trace>> {
        self.labels().map(|j| self.trace(j)).collect()
    }

    /// Pipe labels leaving through the right boundary.
    pub fn right_exits(&self) -> Result<BTreeSet<usize>> {
        Ok(self
            .traces()?
            .into_iter()
            .filter(|t| matches!(t.exit, Exit::Right(_)))
            .map(|t| t.label)
            .collect())
    }

    /// Right-exiting pipe label by row, `None` where no pipe exits.
    pub fn exit_rows(&self) -> Result<Vec<Option<usize>>> {
        let mut out = vec![None; self.rows];
        for t in self.traces()? {
            if let Exit::Right(r) = t.exit {
                out[r - 1] = Some(t.label);
            }
        }
        Ok(out)
    }

    /// Pivot permutation of a complete dream.
    pub fn pivot_permutation(&self) -> Result<Permutation> {
        if !self.is_complete() || self.zero_column {
            return Err(Error::NotComplete { rows: self.rows, cols: self.cols });
        }
        Permutation::new(self.pivots.clone())
    }

    /// The pipe exiting row `i` is `v_i`.
    pub fn exit_permutation(&self) -> Result<Permutation> {
        if !self.is_complete() || self.zero_column {
            return Err(Error::NotComplete { rows: self.rows, cols: self.cols });
        }
        let rows = self.exit_rows()?;
        let values = rows
            .into_iter()
            .map(|x| x.ok_or_else(|| Error::MalformedDream("row without exiting pipe".into())))
            .collect::<Result<Vec<_>>>()?;
        Permutation::new(values)
    }

    /// Label of the pipe going across each cross, keyed by box.
    fn horizontal_pipes(&self, traces: &[Trace]) -> BTreeMap<(usize, usize), usize> {
        let mut m = BTreeMap::new();
        for t in traces {
            for &(r, c, p) in &t.cells {
                if p == Passage::Across && self.tile(r, c) == Tile::Cross {
                    m.insert((r, c), t.label);
                }
            }
        }
        m
    }

    /// For each pipe, the exit row, with bottom exits counted as below every row.
    fn exit_row_bound(&self, t: &Trace) -> usize {
        match t.exit {
            Exit::Right(r) => r,
            Exit::Bottom(_) => usize::MAX,
        }
    }

    /// Subarea criterion: below each cross, down to the exit row of its
    /// horizontal pipe, no elbow or pivot elbow.
    pub fn is_gamma_free(&self) -> Result<bool> {
        let traces = self.traces()?;
        let by_label: BTreeMap<usize, &Trace> = traces.iter().map(|t| (t.label, t)).collect();
        for ((i, j), q) in self.horizontal_pipes(&traces) {
            let last = self.exit_row_bound(by_label[&q]).min(self.rows);
            if (i + 1..=last).any(|r| self.tile(r, j).is_turn()) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Direct search for a cross with a turn to its right, a turn below it and
    /// a horizontal pipe exiting no higher than the lower turn.
    pub fn has_gamma_pattern(&self) -> Result<bool> {
        let traces = self.traces()?;
        let by_label: BTreeMap<usize, &Trace> = traces.iter().map(|t| (t.label, t)).collect();
        let horiz = self.horizontal_pipes(&traces);
        for i in 1..=self.rows {
            for j in self.labels() {
                if self.tile(i, j) != Tile::Cross {
                    continue;
                }
                let exit = self.exit_row_bound(by_label[&horiz[&(i, j)]]);
                for jp in j + 1..self.base() + self.cols {
                    if !self.tile(i, jp).is_turn() {
                        continue;
                    }
                    for ip in i + 1..=self.rows {
                        if self.tile(ip, j).is_turn() && exit >= ip {
                            return Ok(true);
                        }
                    }
                }
            }
        }
        Ok(false)
    }

    /// Unordered pipe pairs meeting at each cross, in box order.
    pub fn crossings(&self) -> Result<Vec<(Cell, (usize, usize))>> {
        let mut at: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for t in self.traces()? {
            for &(r, c, _) in &t.cells {
                if self.tile(r, c) == Tile::Cross {
                    at.entry((r, c)).or_default().push(t.label);
                }
            }
        }
        Ok(at
            .into_iter()
            .filter(|(_, ps)| ps.len() == 2)
            .map(|(b, ps)| (b, (ps[0].min(ps[1]), ps[0].max(ps[1]))))
            .collect())
    }

    /// No two pipes cross twice.
    pub fn is_reduced(&self) -> Result<bool> {
        let pairs: Vec<_> = self.crossings()?.into_iter().map(|(_, p)| p).collect();
        Ok(pairs.iter().all_unique())
    }

    /// Pipes that have crossed never share an elbow afterwards.
    pub fn is_southeast_justified(&self) -> Result<bool> {
        let crossings = self.crossings()?;
        let mut meet: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for t in self.traces()? {
            for &(r, c, _) in &t.cells {
                if self.tile(r, c) == Tile::Elbow {
                    meet.entry((r, c)).or_default().push(t.label);
                }
            }
        }
        for ((r, c), ps) in meet {
            if ps.len() < 2 {
                continue;
            }
            let pair = (ps[0].min(ps[1]), ps[0].max(ps[1]));
            if crossings.iter().any(|&((cr, cc), p)| p == pair && cr <= r && cc <= c) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Complete, reduced and Γ-free.
    pub fn is_fpp(&self) -> Result<bool> {
        if !self.is_complete() {
            return Err(Error::NotComplete { rows: self.rows, cols: self.cols });
        }
        Ok(self.is_reduced()? && self.is_gamma_free()?)
    }

    /// ASCII grid of tile letters.
    pub fn render_ascii(&self) -> String {
        self.to_ascii()
    }

    /// Quarter-circle elbows and straight strands; Rothe boxes shaded.
    pub fn render_svg(&self) -> String {
        const S: usize = 40;
        let h = S / 2;
        let (w, ht) = (self.cols * S, self.rows * S);
        let mut out = format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"-2 -2 {} {}\">\n",
            w + 4,
            ht + 4,
            w + 4,
            ht + 4
        );
        out.push_str("<g fill=\"none\" stroke=\"black\" stroke-width=\"2\">\n");
        for i in 1..=self.rows {
            for j in self.labels() {
                let x = (j - self.base()) * S;
                let y = (i - 1) * S;
                if self.is_rothe(i, j) {
                    let _ = writeln!(
                        out,
                        "<rect x=\"{x}\" y=\"{y}\" width=\"{S}\" height=\"{S}\" fill=\"#ddd\" stroke=\"#999\" stroke-width=\"0.5\"/>"
                    );
                }
                let top_right = format!("<path d=\"M {} {} A {h} {h} 0 0 0 {} {}\"/>", x + h, y, x + S, y + h);
                let left_bottom = format!("<path d=\"M {} {} A {h} {h} 0 0 1 {} {}\"/>", x, y + h, x + h, y + S);
                let vertical = format!("<line x1=\"{}\" y1=\"{y}\" x2=\"{}\" y2=\"{}\"/>", x + h, x + h, y + S);
                let horizontal = format!("<line x1=\"{x}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>", y + h, x + S, y + h);
                let parts: Vec<&str> = match self.tile(i, j) {
                    Tile::Empty => vec![],
                    Tile::Horizontal => vec![&horizontal],
                    Tile::Vertical => vec![&vertical],
                    Tile::Pivot => vec![&top_right],
                    Tile::Cross => vec![&vertical, &horizontal],
                    Tile::Elbow => vec![&top_right, &left_bottom],
                };
                for p in parts {
                    out.push_str(p);
                    out.push('\n');
                }
            }
        }
        out.push_str("</g>\n</svg>\n");
        out
    }
}

impl fmt::Display for PipeDream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_ascii())
    }
}

/// Tile rule for box `(i, j)` given the pivot prefix; `None` marks a Rothe box.
pub fn forced_tile(pivots: &[usize], i: usize, j: usize) -> Option<Tile> {
    let p = pivots[i - 1];
    let earlier = pivots[..i - 1].contains(&j);
    match (j.cmp(&p), earlier) {
        (std::cmp::Ordering::Equal, _) => Some(Tile::Pivot),
        (std::cmp::Ordering::Greater, true) => Some(Tile::Horizontal),
        (std::cmp::Ordering::Greater, false) => None,
        (std::cmp::Ordering::Less, true) => Some(Tile::Empty),
        (std::cmp::Ordering::Less, false) => Some(Tile::Vertical),
    }
}

/// Tiles `Rothe(u)` rows bottom to top, right to left, tracking the pipe
/// arriving from below in each column.
pub fn construct_fpp(u: &Permutation, v: &Permutation) -> Result<PipeDream> {
    if !bruhat_leq(u, v)? {
        return Err(Error::NotComparable { u: u.to_string(), v: v.to_string() });
    }
    let n = u.n();
    let pos_v = v.inverse();
    let rothe = rothe_diagram(u);
    let mut col = vec![0usize; n + 1];
    let mut fill: BTreeMap<(usize, usize), Tile> = BTreeMap::new();
    let mut crossed = BTreeSet::new();
    for i in (1..=n).rev() {
        let mut x = v.at(i);
        for j in rothe.row(i).into_iter().rev() {
            let (a, b) = (x.min(col[j]), x.max(col[j]));
            if a > 0 && pos_v.at(a) < pos_v.at(b) && crossed.insert((a, b)) {
                fill.insert((i, j), Tile::Cross);
            } else {
                fill.insert((i, j), Tile::Elbow);
                std::mem::swap(&mut x, &mut col[j]);
            }
        }
        col[u.at(i)] = x;
    }
    PipeDream::from_filling(n, u.values().to_vec(), false, |i, j| fill[&(i, j)])
}

pub fn exit_permutation(d: &PipeDream) -> Result<Permutation> {
    d.exit_permutation()
}

pub fn is_gamma_free(d: &PipeDream) -> Result<bool> {
    d.is_gamma_free()
}

pub fn is_fpp(d: &PipeDream) -> Result<bool> {
    d.is_fpp()
}

/// Letters of `word_x_of_rothe(u)` at the crosses.
pub fn word_y_of_crosses(d: &PipeDream) -> Result<Word> {
    if !d.is_fpp()? {
        return Err(Error::NotFpp);
    }
    let u = d.pivot_permutation()?;
    let x = word_x_of_rothe(&u);
    let letters = d
        .reading_order()
        .into_iter()
        .zip(x.letters)
        .filter(|&((i, j), _)| d.tile(i, j) == Tile::Cross)
        .map(|(_, s)| s)
        .collect();
    Ok(Word { letters })
}

/// 1-based positions of the crosses in reading order.
pub fn cross_positions(d: &PipeDream) -> Vec<usize> {
    d.reading_order()
        .into_iter()
        .enumerate()
        .filter(|&(_, (i, j))| d.tile(i, j) == Tile::Cross)
        .map(|(p, _)| p + 1)
        .collect()
}

/// All permutations of `[n]` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    (1..=n)
        .permutations(n)
        .map(|v| Permutation::new(v).expect("permutation"))
        .collect()
}

/// One dream per Bruhat interval, lexicographic in `(u, v)`.
pub fn enumerate_fpps(n: usize) -> Result<Vec<PipeDream>> {
    guard::check(n, 6)?;
    let perms = all_permutations(n);
    let mut out = Vec::new();
    for u in &perms {
        for v in &perms {
            if bruhat_leq(u, v)? {
                out.push(construct_fpp(u, v)?);
            }
        }
    }
    Ok(out)
}

/// Remaining columns appended as decreasing pivots; the new rows carry no Rothe boxes.
pub fn trivial_completion(d: &PipeDream) -> Result<PipeDream> {
    if !d.is_gamma_free()? {
        return Err(Error::NotGammaFree);
    }
    let used = d.pivot_set();
    let mut pivots = d.pivots().to_vec();
    pivots.extend(d.labels().rev().filter(|j| !used.contains(j)));
    let k = d.rows();
    PipeDream::from_filling(d.cols(), pivots, d.zero_column(), |i, j| {
        if i <= k {
            d.tile(i, j)
        } else {
            Tile::Cross
        }
    })
}

/// Postnikov-style Le diagram: row `i` has `shape[i-1]` boxes, left-justified,
/// inside a `k x (n-k)` rectangle.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LeDiagram {
    pub n: usize,
    pub k: usize,
    pub shape: Vec<usize>,
    pub tiles: Vec<Vec<Tile>>,
}

impl LeDiagram {
    /// Pivot columns `u_1 > ... > u_k` of the matching decreasing-pivot dream.
    pub fn pivots(&self) -> Vec<usize> {
        (1..=self.k).map(|r| self.n - (r - 1) - self.shape[self.k - r]).collect()
    }

    pub fn elbow_count(&self) -> usize {
        self.tiles.iter().flatten().filter(|&&t| t == Tile::Elbow).count()
    }

    pub fn to_ascii(&self) -> String {
        let mut s = String::new();
        for row in &self.tiles {
            let _ = writeln!(s, "{}", row.iter().map(|t| t.letter()).join(" "));
        }
        s
    }

    /// No cross with an elbow to its left and an elbow above it.
    pub fn has_le_property(&self) -> bool {
        let at = |i: usize, q: usize| self.tiles[i][q];
        for i in 0..self.k {
            for q in 0..self.shape[i] {
                if at(i, q) != Tile::Cross {
                    continue;
                }
                let left = (0..q).any(|p| at(i, p) == Tile::Elbow);
                let above = (0..i).any(|r| at(r, q) == Tile::Elbow);
                if left && above {
                    return false;
                }
            }
        }
        true
    }

    /// Source label of row `i` (0-indexed) and the sink label of column `q`.
    fn labels(&self) -> (Vec<usize>, Vec<usize>) {
        let pivots = self.pivots();
        let nonpivots: Vec<usize> = (1..=self.n).filter(|j| !pivots.contains(j)).collect();
        let sources = (0..self.k).map(|i| pivots[self.k - 1 - i]).collect();
        let sinks = (0..self.n - self.k).map(|q| nonpivots[self.n - self.k - 1 - q]).collect();
        (sources, sinks)
    }

    /// Bases `(I \ S) ∪ T` over vertex-disjoint families from row sources `S`
    /// to column sinks `T`, paths stepping left or down through elbows.
    pub fn bases(&self) -> BTreeSet<Vec<usize>> {
        let (sources, sinks) = self.labels();
        let mut out = BTreeSet::new();
        let mut used = vec![vec![false; self.n]; self.k];
        let mut sinks_used = vec![false; self.n - self.k];
        let mut chosen = Vec::new();
        self.families(0, &sources, &sinks, &mut used, &mut sinks_used, &mut chosen, &mut out);
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn families(
        &self,
        row: usize,
        sources: &[usize],
        sinks: &[usize],
        used: &mut Vec<Vec<bool>>,
        sinks_used: &mut Vec<bool>,
        chosen: &mut Vec<usize>,
        out: &mut BTreeSet<Vec<usize>>,
    ) {
        if row == self.k {
            let mut b = chosen.clone();
            b.sort_unstable();
            out.insert(b);
            return;
        }
        chosen.push(sources[row]);
        self.families(row + 1, sources, sinks, used, sinks_used, chosen, out);
        chosen.pop();
        // path from the right end of the row: first elbow from the right
        if let Some(q) = (0..self.shape[row]).rev().find(|&q| self.tiles[row][q] == Tile::Elbow) {
            self.walk(row, q, row, sources, sinks, used, sinks_used, chosen, out);
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn walk(
        &self,
        i: usize,
        q: usize,
        row: usize,
        sources: &[usize],
        sinks: &[usize],
        used: &mut Vec<Vec<bool>>,
        sinks_used: &mut Vec<bool>,
        chosen: &mut Vec<usize>,
        out: &mut BTreeSet<Vec<usize>>,
    ) {
        if used[i][q] {
            return;
        }
        used[i][q] = true;
        if let Some(p) = (0..q).rev().find(|&p| self.tiles[i][p] == Tile::Elbow) {
            self.walk(i, p, row, sources, sinks, used, sinks_used, chosen, out);
        }
        match (i + 1..self.k).find(|&r| q < self.shape[r] && self.tiles[r][q] == Tile::Elbow) {
            Some(r) => self.walk(r, q, row, sources, sinks, used, sinks_used, chosen, out),
            None => {
                if !sinks_used[q] {
                    sinks_used[q] = true;
                    chosen.push(sinks[q]);
                    self.families(row + 1, sources, sinks, used, sinks_used, chosen, out);
                    chosen.pop();
                    sinks_used[q] = false;
                }
            }
        }
        used[i][q] = false;
    }
}

/// `lambda_i` = number of non-pivot columns right of the pivot in dream row `k-i+1`.
pub fn grassmannian_shape(n: usize, pivots: &[usize]) -> Vec<usize> {
    let k = pivots.len();
    (1..=k)
        .map(|i| {
            let p = pivots[k - i];
            (p + 1..=n).filter(|j| !pivots.contains(j)).count()
        })
        .collect()
}

/// Push the Rothe columns together and rotate by 180 degrees.
pub fn rotate_le(d: &PipeDream) -> Result<LeDiagram> {
    if d.zero_column() {
        return Err(Error::MalformedDream("zero-column dreams have no Le diagram".into()));
    }
    let partial = if d.is_complete() {
        let asc = d.pivot_permutation()?.ascents();
        match asc.as_slice() {
            [] => d.restrict(0)?,
            [k] => d.restrict(*k)?,
            _ => return Err(Error::TooManyAscents),
        }
    } else {
        if !d.has_decreasing_pivots() {
            return Err(Error::NotDecreasing);
        }
        d.clone()
    };
    let n = partial.cols();
    let k = partial.rows();
    let pivots = partial.pivots().to_vec();
    let nonpivots: Vec<usize> = (1..=n).filter(|j| !pivots.contains(j)).collect();
    let shape = grassmannian_shape(n, &pivots);
    let tiles = (1..=k)
        .map(|i| {
            let r = k - i + 1;
            (1..=shape[i - 1])
                .map(|q| partial.tile(r, nonpivots[n - k - q]))
                .collect()
        })
        .collect();
    Ok(LeDiagram { n, k, shape, tiles })
}

/// Inverse of [`rotate_le`] onto a decreasing-pivot partial dream.
pub fn unrotate_le(le: &LeDiagram) -> Result<PipeDream> {
    let (n, k) = (le.n, le.k);
    if le.shape.len() != k || le.tiles.len() != k || k > n {
        return Err(Error::MalformedDream("Le diagram shape mismatch".into()));
    }
    if le.shape.windows(2).any(|w| w[0] < w[1]) || le.shape.first().is_some_and(|&l| l > n - k) {
        return Err(Error::MalformedDream("shape is not a partition in the k x (n-k) box".into()));
    }
    if le.tiles.iter().zip(&le.shape).any(|(row, &l)| row.len() != l) {
        return Err(Error::MalformedDream("row lengths do not match the shape".into()));
    }
    let pivots = le.pivots();
    let nonpivots: Vec<usize> = (1..=n).filter(|j| !pivots.contains(j)).collect();
    let pos = |j: usize| nonpivots.iter().position(|&x| x == j).map(|p| p + 1);
    PipeDream::from_filling(n, pivots.clone(), false, |r, j| {
        let i = k - r + 1;
        let q = n - k + 1 - pos(j).expect("Rothe column is a non-pivot");
        le.tiles[i - 1][q - 1]
    })
}
