//! The acyclic path graph of a partial pipe dream and its vertex-disjoint
//! path families. Sink sets of the families are the bases of the positroid.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pipedream::{PipeDream, Tile};

/// Family of equal-size subsets of `[n]`, or of `[0, n]` with `offset_zero`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", try_from = "BasisJson")]
pub struct BasisSet {
    n: usize,
    k: usize,
    offset_zero: bool,
    bases: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
#[serde(rename_all = "camelCase")]
struct BasisJson {
    n: usize,
    k: usize,
    #[serde(default)]
    offset_zero: bool,
    bases: Vec<Vec<usize>>,
}

impl TryFrom<BasisJson> for BasisSet {
    type Error = Error;
    fn try_from(j: BasisJson) -> Result<Self> {
        let b = BasisSet::new(j.n, j.offset_zero, j.bases)?;
        if b.k != j.k {
            return Err(Error::InvalidSet(format!("declared rank {} but members have size {}", j.k, b.k)));
        }
        Ok(b)
    }
}

impl BasisSet {
    /// Sorts members and the family; rejects empty families, mixed sizes and
    /// elements outside the ground set.
    pub fn new(n: usize, offset_zero: bool, bases: impl IntoIterator<Item = Vec<usize>>) -> Result<Self> {
        let family: BTreeSet<Vec<usize>> = bases
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        let Some(first) = family.first() else {
            return Err(Error::InvalidSet("empty basis family".into()));
        };
        let k = first.len();
        let lo = usize::from(!offset_zero);
        for b in &family {
            if b.len() != k || !b.iter().all_unique() {
                return Err(Error::InvalidSet(format!("member {b:?} is not a {k}-subset")));
            }
            if b.iter().any(|&x| x < lo || x > n) {
                return Err(Error::InvalidSet(format!("member {b:?} leaves the ground set")));
            }
        }
        Ok(BasisSet { n, k, offset_zero, bases: family.into_iter().collect() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn rank(&self) -> usize {
        self.k
    }

    pub fn offset_zero(&self) -> bool {
        self.offset_zero
    }

    pub fn ground(&self) -> Vec<usize> {
        (usize::from(!self.offset_zero)..=self.n).collect()
    }

    pub fn bases(&self) -> &[Vec<usize>] {
        &self.bases
    }

    pub fn len(&self) -> usize {
        self.bases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bases.is_empty()
    }

    pub fn contains(&self, b: &[usize]) -> bool {
        self.bases.binary_search_by(|x| x.as_slice().cmp(b)).is_ok()
    }

    pub fn lex_min(&self) -> &[usize] {
        &self.bases[0]
    }

    pub fn lex_max(&self) -> &[usize] {
        &self.bases[self.bases.len() - 1]
    }
}

impl fmt::Display for BasisSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.n <= 9 { "" } else { "," };
        let mut items = self.bases.iter().map(|b| b.iter().join(sep));
        write!(f, "{{{}}}", items.join(", "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Vertex {
    /// Pivot elbow of row `row` in column `col`.
    Source { row: usize, col: usize },
    /// Top of column `col`.
    Sink { col: usize },
    /// Elbow tile.
    Inner { row: usize, col: usize },
}

/// `G(D)`: upward edges within columns, rightward edges within rows.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathGraph {
    pub cols: usize,
    pub vertices: Vec<Vertex>,
    /// Out-neighbours by vertex index.
    pub edges: Vec<Vec<usize>>,
    /// Vertex index of the source in each row.
    pub sources: Vec<usize>,
    /// Vertex index of the sink atop each column, left to right.
    pub sinks: Vec<usize>,
}

/// One vertex-index path per source, in row order.
pub type PathFamily = Vec<Vec<usize>>;

impl PathGraph {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.iter().map(Vec::len).sum()
    }

    pub fn sink_label(&self, v: usize) -> Option<usize> {
        match self.vertices[v] {
            Vertex::Sink { col } => Some(col),
            _ => None,
        }
    }

    /// Kahn's algorithm; `None` on a cycle.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let mut indeg = vec![0usize; self.vertices.len()];
        for outs in &self.edges {
            for &w in outs {
                indeg[w] += 1;
            }
        }
        let mut stack: Vec<usize> = (0..self.vertices.len()).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(self.vertices.len());
        while let Some(v) = stack.pop() {
            order.push(v);
            for &w in &self.edges[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    stack.push(w);
                }
            }
        }
        (order.len() == self.vertices.len()).then_some(order)
    }
}

pub fn build_graph(d: &PipeDream) -> Result<PathGraph> {
    let (k, cols) = (d.rows(), d.cols());
    let base = d.base();
    let mut vertices = Vec::new();
    let mut at = vec![vec![None; cols]; k];
    let mut sources = Vec::with_capacity(k);
    for i in 1..=k {
        for j in d.labels() {
            let v = match d.tile(i, j) {
                Tile::Pivot => Vertex::Source { row: i, col: j },
                Tile::Elbow => Vertex::Inner { row: i, col: j },
                _ => continue,
            };
            at[i - 1][j - base] = Some(vertices.len());
            if matches!(v, Vertex::Source { .. }) {
                sources.push(vertices.len());
            }
            vertices.push(v);
        }
    }
    let sinks: Vec<usize> = d
        .labels()
        .map(|j| {
            vertices.push(Vertex::Sink { col: j });
            vertices.len() - 1
        })
        .collect();
    let mut edges = vec![Vec::new(); vertices.len()];
    for row in &at {
        let present: Vec<usize> = row.iter().flatten().copied().collect();
        if let Some(&first) = present.first() {
            if !matches!(vertices[first], Vertex::Source { .. }) {
                return Err(Error::MalformedDream("elbow left of its row's pivot".into()));
            }
        }
        for w in present.windows(2) {
            edges[w[0]].push(w[1]);
        }
    }
    for c in 0..cols {
        let mut above = sinks[c];
        for row in &at {
            if let Some(v) = row[c] {
                edges[v].push(above);
                above = v;
            }
        }
    }
    for outs in &mut edges {
        outs.sort_unstable();
    }
    Ok(PathGraph { cols, vertices, edges, sources, sinks })
}

fn search(
    g: &PathGraph,
    idx: usize,
    used: &mut Vec<bool>,
    current: &mut PathFamily,
    visit: &mut dyn FnMut(&PathFamily),
) {
    if idx == g.sources.len() {
        visit(current);
        return;
    }
    let s = g.sources[idx];
    let mut path = vec![s];
    used[s] = true;
    extend(g, idx, s, used, &mut path, current, visit);
    used[s] = false;
}

fn extend(
    g: &PathGraph,
    idx: usize,
    v: usize,
    used: &mut Vec<bool>,
    path: &mut Vec<usize>,
    current: &mut PathFamily,
    visit: &mut dyn FnMut(&PathFamily),
) {
    if g.edges[v].is_empty() {
        current.push(path.clone());
        search(g, idx + 1, used, current, visit);
        current.pop();
        return;
    }
    for &w in &g.edges[v] {
        if used[w] {
            continue;
        }
        used[w] = true;
        path.push(w);
        extend(g, idx, w, used, path, current, visit);
        path.pop();
        used[w] = false;
    }
}

/// Every family of vertex-disjoint source-to-sink paths, one per source,
/// in depth-first order over sources by row.
pub fn admissible_collections(g: &PathGraph, k: usize) -> Result<Vec<PathFamily>> {
    if k != g.sources.len() {
        return Err(Error::SizeMismatch(k, g.sources.len()));
    }
    let mut out = Vec::new();
    let mut used = vec![false; g.vertices.len()];
    search(g, 0, &mut used, &mut Vec::new(), &mut |f| out.push(f.clone()));
    Ok(out)
}

/// Deduplicated sink sets of the admissible families.
pub fn bases_of(d: &PipeDream) -> Result<BasisSet> {
    let g = build_graph(d)?;
    let mut sets = BTreeSet::new();
    let mut used = vec![false; g.vertices.len()];
    search(&g, 0, &mut used, &mut Vec::new(), &mut |f| {
        let mut b: Vec<usize> = f.iter().map(|p| g.sink_label(*p.last().unwrap()).unwrap()).collect();
        b.sort_unstable();
        sets.insert(b);
    });
    let n = if d.zero_column() { d.cols() - 1 } else { d.cols() };
    BasisSet::new(n, d.zero_column(), sets)
}

/// Sorted pivot columns.
pub fn lex_min_basis(d: &PipeDream) -> Vec<usize> {
    d.pivot_set().into_iter().collect()
}

/// Sorted labels of the pipes exiting at the right boundary.
pub fn lex_max_basis(d: &PipeDream) -> Result<Vec<usize>> {
    Ok(d.right_exits()?.into_iter().collect())
}
