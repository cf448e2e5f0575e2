//! Reading positional inputs: a file path, `-` for stdin, or literal text.

use std::io::Read;
use std::path::Path;

use anyhow::{bail, Context, Result};
use fpp::linalg::RationalMatrix;
use fpp::{DecoratedPermutation, PipeDream, Positroid};

use crate::doc::Doc;

pub fn read_text(arg: &str) -> Result<String> {
    if arg == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    let p = Path::new(arg);
    if p.is_file() {
        return std::fs::read_to_string(p).with_context(|| format!("reading {arg}"));
    }
    Ok(arg.to_string())
}

pub fn parse_csv_matrix(text: &str) -> Result<RationalMatrix> {
    let mut rows = Vec::new();
    let mut reader = csv::ReaderBuilder::new().has_headers(false).trim(csv::Trim::All).from_reader(text.as_bytes());
    for rec in reader.records() {
        let rec = rec?;
        rows.push(rec.iter().map(str::to_string).collect::<Vec<_>>());
    }
    Ok(RationalMatrix::from_strings(&rows, false)?)
}

/// JSON document, decorated permutation, ASCII dream or CSV matrix, tried in that order.
pub fn parse_doc(text: &str) -> Result<Doc> {
    let trimmed = text.trim();
    if let Ok(v) = serde_json::from_str::<serde_json::Value>(trimmed) {
        return Doc::from_value(v);
    }
    if let Ok(p) = trimmed.parse::<DecoratedPermutation>() {
        return Ok(Doc::Decperm(p));
    }
    if let Ok(d) = PipeDream::from_ascii(trimmed) {
        return Ok(Doc::Dream(d));
    }
    if trimmed.contains(',') {
        if let Ok(m) = parse_csv_matrix(trimmed) {
            return Ok(Doc::Matrix(m));
        }
    }
    bail!("input is not a JSON document, decorated permutation, ASCII pipe dream or CSV matrix")
}

pub fn load(arg: &str) -> Result<Doc> {
    parse_doc(&read_text(arg)?)
}

pub fn load_matrix(arg: &str) -> Result<RationalMatrix> {
    let text = read_text(arg)?;
    match serde_json::from_str::<RationalMatrix>(text.trim()) {
        Ok(m) => Ok(m),
        Err(_) => parse_csv_matrix(&text),
    }
}

pub fn positroid_of(doc: Doc) -> Result<Positroid> {
    Ok(match doc {
        Doc::Decperm(p) => Positroid::from_decperm(&p)?,
        Doc::DecpermInfo(i) => Positroid::from_decperm(&i.decperm)?,
        Doc::Positroid(p) => p,
        Doc::Dream(d) => Positroid::from_partial(&d)?,
        _ => bail!("expected a positroid: a decorated permutation or a pipe dream"),
    })
}
