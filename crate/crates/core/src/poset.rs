//! The graded posets of positroid quotients on `[n]`: covers from appended
//! rows (representable) or from all pairwise quotient checks (matroidal).

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::decperm::{inverse_decperm, DecoratedPermutation};
use crate::error::{Error, Result};
use crate::flagbuild::{append_row, FlagPositroid};
use crate::guard;
use crate::pathgraph::BasisSet;
use crate::pipedream::PipeDream;
use crate::positroid::{all_positroids, is_quotient, unblocked_columns, Positroid};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Representable,
    Matroidal,
}

#[derive(Debug, Clone)]
pub struct QuotientPoset {
    pub n: usize,
    pub flavor: Flavor,
    /// Elements by rank, each rank sorted by decorated permutation.
    pub ranks: Vec<Vec<Positroid>>,
    /// `covers[k][a]` lists indices into `ranks[k + 1]` covering `ranks[k][a]`.
    pub covers: Vec<Vec<Vec<usize>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelfDuality {
    pub holds: bool,
    pub counterexample: Option<(String, String)>,
}

pub fn build_poset(n: usize, flavor: Flavor) -> Result<QuotientPoset> {
    guard::check(n, if flavor == Flavor::Representable { 5 } else { 4 })?;
    let ranks = all_positroids(n)?;
    let index: Vec<HashMap<&Positroid, usize>> =
        ranks.iter().map(|r| r.iter().enumerate().map(|(i, p)| (p, i)).collect()).collect();
    let mut covers = Vec::with_capacity(n);
    for k in 0..n {
        let level: Vec<Vec<usize>> = ranks[k]
            .par_iter()
            .map(|p| -> Result<Vec<usize>> {
                let mut up: Vec<usize> = match flavor {
                    Flavor::Representable => crate::flagbuild::quotient_covers(p)?
                        .iter()
                        .map(|q| index[k + 1][q])
                        .collect(),
                    Flavor::Matroidal => {
                        let mut v = Vec::new();
                        for (j, q) in ranks[k + 1].iter().enumerate() {
                            if is_quotient(p.bases(), q.bases())? {
                                v.push(j);
                            }
                        }
                        v
                    }
                };
                up.sort_unstable();
                Ok(up)
            })
            .collect::<Result<_>>()?;
        covers.push(level);
    }
    Ok(QuotientPoset { n, flavor, ranks, covers })
}

impl QuotientPoset {
    pub fn element_count(&self) -> usize {
        self.ranks.iter().map(Vec::len).sum()
    }

    pub fn cover_count(&self) -> usize {
        self.covers.iter().flatten().map(Vec::len).sum()
    }

    pub fn index_of(&self, p: &Positroid) -> Option<(usize, usize)> {
        let k = p.rank();
        self.ranks.get(k)?.iter().position(|q| q == p).map(|i| (k, i))
    }

    /// Cover pairs as positroid references.
    pub fn cover_pairs(&self) -> Vec<(&Positroid, &Positroid)> {
        let mut out = Vec::new();
        for (k, level) in self.covers.iter().enumerate() {
            for (a, ups) in level.iter().enumerate() {
                for &b in ups {
                    out.push((&self.ranks[k][a], &self.ranks[k + 1][b]));
                }
            }
        }
        out
    }

    pub fn has_cover(&self, p: &Positroid, q: &Positroid) -> bool {
        match (self.index_of(p), self.index_of(q)) {
            (Some((k, a)), Some((l, b))) if l == k + 1 => self.covers[k][a].binary_search(&b).is_ok(),
            _ => false,
        }
    }

    /// Iterates maximal chains bottom to top in lexicographic index order.
    pub fn chains(&self) -> Chains<'_> {
        let stack = if self.ranks.first().is_some_and(|r| !r.is_empty()) { vec![vec![0]] } else { vec![] };
        Chains { poset: self, stack }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let nodes: Vec<serde_json::Value> = self
            .ranks
            .iter()
            .enumerate()
            .flat_map(|(k, r)| {
                r.iter().enumerate().map(move |(i, p)| {
                    serde_json::json!({"id": format!("{k}:{i}"), "rank": k, "label": p.decperm().to_string()})
                })
            })
            .collect();
        let edges: Vec<serde_json::Value> = self
            .cover_pairs()
            .into_iter()
            .map(|(p, q)| serde_json::json!({"from": p.decperm().to_string(), "to": q.decperm().to_string()}))
            .collect();
        serde_json::json!({"n": self.n, "flavor": self.flavor, "nodes": nodes, "edges": edges})
    }

    /// Graphviz with one row per rank; `dashed` pairs drawn dashed.
    pub fn to_dot(&self, dashed: &[(DecoratedPermutation, DecoratedPermutation)]) -> String {
        let mut s = String::from("digraph poset {\n  rankdir=BT;\n  node [shape=plaintext];\n");
        for (k, r) in self.ranks.iter().enumerate() {
            let names: Vec<String> = r.iter().map(|p| format!("\"{}\"", p.decperm())).collect();
            let _ = writeln!(s, "  {{ rank=same; {} }}", names.join("; "));
            let _ = k;
        }
        for (p, q) in self.cover_pairs() {
            let _ = writeln!(s, "  \"{}\" -> \"{}\" [arrowhead=none];", p.decperm(), q.decperm());
        }
        for (p, q) in dashed {
            let _ = writeln!(s, "  \"{p}\" -> \"{q}\" [arrowhead=none, style=dashed];");
        }
        s.push_str("}\n");
        s
    }
}

/// Path-count dynamic program from the bottom element.
pub fn maximal_chains(poset: &QuotientPoset) -> u128 {
    let mut counts: Vec<u128> = vec![1; poset.ranks.first().map_or(0, Vec::len)];
    for (k, level) in poset.covers.iter().enumerate() {
        let mut next = vec![0u128; poset.ranks[k + 1].len()];
        for (a, ups) in level.iter().enumerate() {
            for &b in ups {
                next[b] += counts[a];
            }
        }
        counts = next;
    }
    counts.iter().sum()
}

pub struct Chains<'a> {
    poset: &'a QuotientPoset,
    stack: Vec<Vec<usize>>,
}

impl<'a> Iterator for Chains<'a> {
    type Item = Vec<&'a Positroid>;

    fn next(&mut self) -> Option<Self::Item> {
        let p = self.poset;
        while let Some(chain) = self.stack.pop() {
            let k = chain.len() - 1;
            if k == p.n {
                return Some(chain.iter().enumerate().map(|(r, &i)| &p.ranks[r][i]).collect());
            }
            for &b in p.covers[k][*chain.last().unwrap()].iter().rev() {
                let mut c = chain.clone();
                c.push(b);
                self.stack.push(c);
            }
        }
        None
    }
}

/// Matroidal covers absent from the representable poset.
pub fn missing_covers(n: usize) -> Result<Vec<(DecoratedPermutation, DecoratedPermutation)>> {
    let rep = build_poset(n, Flavor::Representable)?;
    let mat = build_poset(n, Flavor::Matroidal)?;
    Ok(mat
        .cover_pairs()
        .into_iter()
        .filter(|(p, q)| !rep.has_cover(p, q))
        .map(|(p, q)| (p.decperm(), q.decperm()))
        .collect())
}

fn dual_of(p: &Positroid) -> Result<Positroid> {
    Positroid::from_decperm(&inverse_decperm(&p.decperm()))
}

/// Duality reverses every cover whose ends satisfy `keep`, and `keep` is closed under duality.
pub fn check_self_dual_on(poset: &QuotientPoset, keep: impl Fn(&Positroid) -> bool) -> Result<SelfDuality> {
    for p in poset.ranks.iter().flatten().filter(|p| keep(p)) {
        let d = dual_of(p)?;
        if !keep(&d) {
            return Ok(SelfDuality { holds: false, counterexample: Some((p.to_string(), d.to_string())) });
        }
    }
    for (p, q) in poset.cover_pairs() {
        if !keep(p) || !keep(q) {
            continue;
        }
        let (dp, dq) = (dual_of(p)?, dual_of(q)?);
        if !poset.has_cover(&dq, &dp) {
            return Ok(SelfDuality { holds: false, counterexample: Some((p.to_string(), q.to_string())) });
        }
    }
    Ok(SelfDuality { holds: true, counterexample: None })
}

pub fn check_self_dual(poset: &QuotientPoset) -> Result<SelfDuality> {
    check_self_dual_on(poset, |_| true)
}

/// Stacks the appended rows of a maximal chain `P_0 ⋖ ... ⋖ P_n` into a complete dream.
pub fn chain_to_fpp(chain: &[&Positroid]) -> Result<PipeDream> {
    let n = chain.first().map_or(0, |p| p.n());
    if chain.len() != n + 1 || chain.iter().enumerate().any(|(k, p)| p.rank() != k || p.n() != n) {
        return Err(Error::Membership("not a maximal chain of ranks 0..n".into()));
    }
    let mut d = chain[0].dle().clone();
    for target in &chain[1..] {
        let u: BTreeSet<usize> = unblocked_columns(&d)?;
        let mut found = None;
        for c in crate::decperm::nonempty_subsets(&u) {
            let next = append_row(&d, &c)?;
            if Positroid::from_partial(&next)? == **target {
                if found.is_some() {
                    return Err(Error::Membership("cover reached by two column sets".into()));
                }
                found = Some(next);
            }
        }
        d = found.ok_or(Error::NotRepresentableCover)?;
    }
    Ok(d)
}

/// `P_0 ⋖ P_1 ⋖ ... ⋖ P_n` from a complete flag.
pub fn flag_to_chain(flag: &FlagPositroid) -> Result<Vec<Positroid>> {
    let n = flag.n;
    let bottom = Positroid::from_dle(PipeDream::new(n, vec![], vec![], false)?)?;
    let top = Positroid::uniform(n, n)?;
    let mut out = vec![bottom];
    out.extend(flag.constituents.iter().cloned());
    out.push(top);
    Ok(out)
}

/// Basis families of a chain, for display.
pub fn chain_bases(chain: &[&Positroid]) -> Vec<BasisSet> {
    chain.iter().map(|p| p.bases().clone()).collect()
}
