//! Text and JSON encodings of cover relations, plus Graphviz output.
//!
//! The text grammar (used for both `.lat` and `.poset` files) is: the element
//! count on the first significant line, then one `lower upper` pair per line.
//! `#` starts a comment; blank lines are ignored.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::poset::FinitePoset;
use crate::ElementId;

/// Raw cover data as read from a file, before validation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverList {
    pub n: usize,
    pub covers: Vec<(ElementId, ElementId)>,
}

impl CoverList {
    pub fn to_poset(&self) -> Result<FinitePoset> {
        FinitePoset::from_covers(self.n, &self.covers)
    }

    pub fn to_lattice(&self) -> Result<Lattice> {
        Lattice::try_from_poset(self.to_poset()?)
    }
}

/// Parses either the text grammar or the JSON form `{"n": .., "covers": [[a, b], ..]}`.
pub fn parse(input: &str) -> Result<CoverList> {
    if input.trim_start().starts_with('{') {
        parse_json(input)
    } else {
        parse_text(input)
    }
}

pub fn parse_text(input: &str) -> Result<CoverList> {
    let mut n = None;
    let mut covers = Vec::new();
    for (i, raw) in input.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let num = |s: &str| {
            s.parse::<usize>().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("expected a non-negative integer, found {s:?}"),
            })
        };
        match (n, fields.as_slice()) {
            (None, [count]) => n = Some(num(count)?),
            (None, _) => {
                return Err(Error::Parse {
                    line: line_no,
                    message: "expected the element count on its own line".into(),
                })
            }
            (Some(_), [a, b]) => covers.push((num(a)?, num(b)?)),
            (Some(_), _) => {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("expected a cover pair `a b`, found {line:?}"),
                })
            }
        }
    }
    let n = n.ok_or(Error::Parse {
        line: 0,
        message: "missing element count".into(),
    })?;
    Ok(CoverList { n, covers })
}

pub fn parse_json(input: &str) -> Result<CoverList> {
    serde_json::from_str(input).map_err(|e| Error::Parse {
        line: e.line(),
        message: e.to_string(),
    })
}

/// Text form with covers sorted by `(lower, upper)`.
pub fn write_text(p: &FinitePoset) -> String {
    let mut out = format!("{}\n", p.len());
    for &(a, b) in p.covers() {
        let _ = writeln!(out, "{a} {b}");
    }
    out
}

pub fn write_json(p: &FinitePoset) -> String {
    serde_json::to_string(&CoverList {
        n: p.len(),
        covers: p.covers().to_vec(),
    })
    .expect("cover lists serialize")
}

/// Hasse diagram with covers pointing upward.
pub fn write_dot(p: &FinitePoset, name: &str) -> String {
    let mut out = format!("digraph \"{name}\" {{\n  rankdir=BT;\n  node [shape=circle];\n");
    for a in 0..p.len() {
        let _ = writeln!(out, "  {a};");
    }
    for &(a, b) in p.covers() {
        let _ = writeln!(out, "  {a} -> {b};");
    }
    out.push_str("}\n");
    out
}
