//! The atlas: every lattice up to a given size, classified, with JSONL and CSV
//! persistence, the implication grid check and the question hunts.

mod enumerate;
mod hunt;
mod implications;

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canonical::CanonicalForm;
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::properties::{classify, ClassificationRecord, ClassifyOptions};
use crate::shellability::LexMode;

pub use enumerate::{enumerate_canonical_forms, enumerate_lattices, MAX_ENUMERATION_SIZE};
pub use hunt::{hunt_questions, Candidate, HuntReport};
pub use implications::{
    arrows, check_implications, fixture_form, scan_lemmas, structural_checks, Arrow, ArrowColor,
    ArrowResult, ArrowVerdict, Cell, Col, ImplicationReport, LemmaResult, Row,
};

pub const ATLAS_SCHEMA: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtlasEntry {
    pub canonical: CanonicalForm,
    pub n: usize,
    pub record: ClassificationRecord,
}

impl AtlasEntry {
    pub fn new(lattice: &Lattice, opts: &ClassifyOptions) -> AtlasEntry {
        AtlasEntry {
            canonical: crate::canonical::canonical_form(lattice.poset()),
            n: lattice.len(),
            record: classify(lattice, opts),
        }
    }

    /// The lattice in canonical labeling.
    pub fn lattice(&self) -> Result<Lattice> {
        Lattice::try_from_poset(self.canonical.to_poset()?)
    }

    /// Re-ingests the lattice and checks that classification reproduces the
    /// stored record.
    pub fn reverify(&self, opts: &ClassifyOptions) -> Result<bool> {
        let l = self.lattice()?;
        Ok(l.len() == self.n && classify(&l, opts) == self.record)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_value(self)
            .expect("entries serialize")
            .to_string()
    }
}

/// First line of an atlas file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtlasHeader {
    pub schema: u32,
    pub max_n: usize,
    /// `None` when EL-shellability was only decided through left-modular
    /// labelings.
    pub el_budget: Option<u64>,
    pub lex_mode: LexMode,
}

impl AtlasHeader {
    pub fn options(&self) -> ClassifyOptions {
        ClassifyOptions {
            el_budget: self.el_budget,
            lex_mode: self.lex_mode,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Atlas {
    pub header: AtlasHeader,
    pub entries: Vec<AtlasEntry>,
}

/// Classifies every lattice with at most `max_n` elements, ordered by
/// `(n, canonical)`.
pub fn build_atlas(max_n: usize, el_budget: Option<u64>) -> Result<Vec<AtlasEntry>> {
    let opts = ClassifyOptions {
        el_budget,
        ..ClassifyOptions::default()
    };
    let mut out = Vec::new();
    build_atlas_with(max_n, &opts, &BTreeSet::new(), |e| {
        out.push(e.clone());
        Ok(())
    })?;
    Ok(out)
}

/// Streams entries size by size to `sink`, skipping canonical forms in
/// `skip`. Within one size, classification runs in parallel and entries are
/// emitted in canonical order.
pub fn build_atlas_with(
    max_n: usize,
    opts: &ClassifyOptions,
    skip: &BTreeSet<CanonicalForm>,
    mut sink: impl FnMut(&AtlasEntry) -> Result<()>,
) -> Result<usize> {
    let mut count = 0;
    for n in 1..=max_n {
        let forms: Vec<CanonicalForm> = enumerate_canonical_forms(n)?
            .into_iter()
            .filter(|c| !skip.contains(c))
            .collect();
        let entries: Vec<AtlasEntry> = forms
            .par_iter()
            .map(|c| -> Result<AtlasEntry> {
                let l = Lattice::try_from_poset(c.to_poset()?)?;
                Ok(AtlasEntry {
                    canonical: c.clone(),
                    n,
                    record: classify(&l, opts),
                })
            })
            .collect::<Result<_>>()?;
        for e in &entries {
            sink(e)?;
        }
        count += entries.len();
    }
    Ok(count)
}

fn header_line(header: &AtlasHeader) -> String {
    serde_json::to_value(header)
        .expect("header serializes")
        .to_string()
}

/// Writes a fresh atlas file: the header, then one entry per line.
pub fn write_atlas(path: &Path, atlas: &Atlas) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    writeln!(w, "{}", header_line(&atlas.header))?;
    for e in &atlas.entries {
        writeln!(w, "{}", e.to_json())?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_atlas(path: &Path) -> Result<Atlas> {
    parse_atlas(BufReader::new(File::open(path)?))
}

pub fn parse_atlas(r: impl BufRead) -> Result<Atlas> {
    let mut lines = r.lines().enumerate();
    let parse_err = |line: usize, e: serde_json::Error| Error::Parse {
        line,
        message: e.to_string(),
    };
    let header: AtlasHeader = match lines.next() {
        Some((_, line)) => serde_json::from_str(&line?).map_err(|e| parse_err(1, e))?,
        None => {
            return Err(Error::Parse {
                line: 1,
                message: "missing atlas header".into(),
            })
        }
    };
    if header.schema != ATLAS_SCHEMA {
        return Err(Error::Parse {
            line: 1,
            message: format!("unsupported atlas schema {}", header.schema),
        });
    }
    let mut entries = Vec::new();
    for (i, line) in lines {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let e: AtlasEntry = serde_json::from_str(&line).map_err(|e| parse_err(i + 1, e))?;
        if e.canonical.size() != e.n {
            return Err(Error::Parse {
                line: i + 1,
                message: format!(
                    "entry size {} does not match canonical form of size {}",
                    e.n,
                    e.canonical.size()
                ),
            });
        }
        entries.push(e);
    }
    Ok(Atlas { header, entries })
}

/// Builds (or extends) the atlas file at `path` up to `max_n`. Entries whose
/// canonical form is already in the file are kept and not recomputed; the
/// file is rewritten in `(n, canonical)` order. Returns the number of new
/// entries.
pub fn extend_atlas_file(path: &Path, max_n: usize, opts: &ClassifyOptions) -> Result<usize> {
    let mut existing = if path.exists() {
        let a = read_atlas(path)?;
        if a.header.options() != *opts {
            return Err(Error::Parse {
                line: 1,
                message: "existing atlas was built with different options".into(),
            });
        }
        a.entries
    } else {
        Vec::new()
    };
    existing.retain(|e| e.n <= max_n);
    let skip: BTreeSet<CanonicalForm> = existing.iter().map(|e| e.canonical.clone()).collect();
    let mut fresh = Vec::new();
    let added = build_atlas_with(max_n, opts, &skip, |e| {
        fresh.push(e.clone());
        Ok(())
    })?;
    existing.extend(fresh);
    existing.sort_by(|a, b| (a.n, &a.canonical).cmp(&(b.n, &b.canonical)));
    let header = AtlasHeader {
        schema: ATLAS_SCHEMA,
        max_n,
        el_budget: opts.el_budget,
        lex_mode: opts.lex_mode,
    };
    write_atlas(
        path,
        &Atlas {
            header,
            entries: existing,
        },
    )?;
    Ok(added)
}

pub const CSV_COLUMNS: [&str; 13] = [
    "n",
    "canonical",
    "distributive",
    "jsd",
    "msd",
    "sd",
    "join_extremal",
    "extremal",
    "left_modular",
    "el",
    "lenL",
    "J",
    "M",
];

/// One row per entry; verdicts as `yes`, `no` or `unknown`.
pub fn summary_csv(entries: &[AtlasEntry]) -> String {
    let mut out = CSV_COLUMNS.join(",");
    out.push('\n');
    for e in entries {
        let r = &e.record;
        let _ = write!(out, "{},{}", e.n, e.canonical);
        for (_, v) in r.flags() {
            let _ = write!(
                out,
                ",{}",
                serde_json::to_value(v).unwrap().as_str().unwrap()
            );
        }
        let c = &r.counts;
        let _ = writeln!(
            out,
            ",{},{},{}",
            c.length, c.join_irreducibles, c.meet_irreducibles
        );
    }
    out
}
