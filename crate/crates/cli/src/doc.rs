//! Typed JSON documents emitted by the verbs, and their detection on input.

use anyhow::{anyhow, bail, Context, Result};
use fpp::poset::build_poset;
use fpp::{BasisSet, DecoratedPermutation, Flavor, PipeDream, Positroid, RationalMatrix};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

mod dp_str {
    use fpp::DecoratedPermutation;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(p: &DecoratedPermutation, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&p.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<DecoratedPermutation, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Cover {
    pub columns: Vec<usize>,
    #[serde(with = "dp_str")]
    pub decperm: DecoratedPermutation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Shift {
    #[serde(with = "dp_str")]
    pub input: DecoratedPermutation,
    pub direction: String,
    pub set: Vec<usize>,
    pub moved: Vec<usize>,
    pub freeze: Vec<usize>,
    #[serde(with = "dp_str")]
    pub result: DecoratedPermutation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecpermInfo {
    #[serde(with = "dp_str")]
    pub decperm: DecoratedPermutation,
    pub unicode: String,
    pub rank: usize,
    pub unblocked: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Node {
    pub id: String,
    pub rank: usize,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Edge {
    pub from: String,
    pub to: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Poset {
    pub n: usize,
    pub flavor: Flavor,
    pub nodes: Vec<Node>,
    pub edges: Vec<Edge>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct Stats {
    pub elements: usize,
    pub max_chains: u128,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub n: usize,
    pub seed: u64,
    pub checks: Vec<Check>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct MatrixReport {
    pub ranks: Vec<usize>,
    pub negative_minors: Vec<(usize, Vec<usize>)>,
    pub positive_per_rank: Vec<bool>,
    pub reduced: bool,
    pub complete_nonneg: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Doc {
    Dream(PipeDream),
    Positroid(Positroid),
    Bases(BasisSet),
    BasesList(Vec<BasisSet>),
    Decperm(DecoratedPermutation),
    DecpermList(Vec<DecoratedPermutation>),
    Covers(Vec<Cover>),
    Shift(Shift),
    DecpermInfo(DecpermInfo),
    Poset(Poset),
    Stats(Stats),
    Matrix(RationalMatrix),
    Report(Report),
    MatrixReport(MatrixReport),
}

fn typed<T: DeserializeOwned>(v: Value, what: &str) -> Result<T> {
    serde_json::from_value(v).with_context(|| format!("not a valid {what} document"))
}

impl Doc {
    pub fn to_value(&self) -> Value {
        let r = match self {
            Doc::Dream(d) => serde_json::to_value(d),
            Doc::Positroid(p) => serde_json::to_value(p),
            Doc::Bases(b) => serde_json::to_value(b),
            Doc::BasesList(b) => serde_json::to_value(b),
            Doc::Decperm(p) => Ok(Value::String(p.to_string())),
            Doc::DecpermList(ps) => Ok(Value::Array(ps.iter().map(|p| Value::String(p.to_string())).collect())),
            Doc::Covers(c) => serde_json::to_value(c),
            Doc::Shift(s) => serde_json::to_value(s),
            Doc::DecpermInfo(i) => serde_json::to_value(i),
            Doc::Poset(p) => serde_json::to_value(p),
            Doc::Stats(s) => serde_json::to_value(s),
            Doc::Matrix(m) => serde_json::to_value(m),
            Doc::Report(r) => serde_json::to_value(r),
            Doc::MatrixReport(r) => serde_json::to_value(r),
        };
        r.expect("documents serialize")
    }

    pub fn to_json(&self) -> String {
        self.to_value().to_string()
    }

    pub fn from_value(v: Value) -> Result<Doc> {
        match v {
            Value::String(s) => Ok(Doc::Decperm(s.parse()?)),
            Value::Array(ref items) => match items.first() {
                None | Some(Value::String(_)) => {
                    let strs: Vec<String> = typed(v, "decorated permutation list")?;
                    Ok(Doc::DecpermList(strs.iter().map(|s| s.parse()).collect::<fpp::Result<_>>()?))
                }
                Some(Value::Array(_)) => Ok(Doc::Matrix(typed(v, "matrix")?)),
                Some(Value::Object(o)) if o.contains_key("columns") => Ok(Doc::Covers(typed(v, "cover list")?)),
                Some(Value::Object(o)) if o.contains_key("bases") => Ok(Doc::BasesList(typed(v, "basis list")?)),
                _ => bail!("unrecognized JSON array"),
            },
            Value::Object(ref o) => {
                let has = |k: &str| o.contains_key(k);
                if has("tiles") && has("rank") {
                    Ok(Doc::Positroid(typed(v, "positroid")?))
                } else if has("tiles") {
                    Ok(Doc::Dream(typed(v, "pipe dream")?))
                } else if has("bases") {
                    Ok(Doc::Bases(typed(v, "basis set")?))
                } else if has("nodes") {
                    let p: Poset = typed(v, "poset")?;
                    check_poset(&p)?;
                    Ok(Doc::Poset(p))
                } else if has("maxChains") {
                    Ok(Doc::Stats(typed(v, "poset statistics")?))
                } else if has("entries") {
                    Ok(Doc::Matrix(typed(v, "matrix")?))
                } else if has("freeze") {
                    Ok(Doc::Shift(typed(v, "shift")?))
                } else if has("unblocked") {
                    Ok(Doc::DecpermInfo(typed(v, "decorated permutation")?))
                } else if has("checks") {
                    Ok(Doc::Report(typed(v, "verification report")?))
                } else if has("negativeMinors") {
                    Ok(Doc::MatrixReport(typed(v, "matrix report")?))
                } else {
                    bail!("unrecognized JSON object")
                }
            }
            _ => bail!("unrecognized JSON value"),
        }
    }
}

/// A poset document must equal the poset rebuilt from its `n` and flavor.
fn check_poset(p: &Poset) -> Result<()> {
    let rebuilt: Poset = serde_json::from_value(build_poset(p.n, p.flavor)?.to_json())?;
    if &rebuilt != p {
        return Err(anyhow!("poset document differs from the {:?} poset on [{}]", p.flavor, p.n));
    }
    Ok(())
}
