//! Searches the atlas for semidistributive EL-shellable lattices that are not
//! left-modular, or not extremal.

use serde::Serialize;

use super::AtlasEntry;
use crate::canonical::CanonicalForm;
use crate::properties::{classify, ClassifyOptions, Verdict};
use crate::shellability::{is_el_labeling, LexMode};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Candidate {
    pub canonical: CanonicalForm,
    pub n: usize,
    /// Re-ingested, re-classified, and the EL certificate re-checked.
    pub reverified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HuntReport {
    pub max_n: usize,
    pub scanned: usize,
    pub semidistributive: usize,
    /// Semidistributive, EL-shellable, not left-modular.
    pub not_left_modular: Vec<Candidate>,
    /// Semidistributive, EL-shellable, not extremal.
    pub not_extremal: Vec<Candidate>,
    /// Semidistributive entries whose EL-shellability is undecided.
    pub unknown_el: Vec<CanonicalForm>,
}

impl HuntReport {
    pub fn all_reverified(&self) -> bool {
        self.not_left_modular
            .iter()
            .chain(&self.not_extremal)
            .all(|c| c.reverified)
    }

    pub fn to_table(&self) -> String {
        let mut out = format!(
            "scanned {} lattices (n <= {}), {} semidistributive\n",
            self.scanned, self.max_n, self.semidistributive
        );
        let list = |title: &str, cs: &[Candidate], out: &mut String| {
            out.push_str(&format!("{title}: {}\n", cs.len()));
            for c in cs {
                out.push_str(&format!(
                    "  n={} {} {}\n",
                    c.n,
                    c.canonical,
                    if c.reverified {
                        "reverified"
                    } else {
                        "NOT REVERIFIED"
                    }
                ));
            }
        };
        list(
            "semidistributive, EL-shellable, not left-modular",
            &self.not_left_modular,
            &mut out,
        );
        list(
            "semidistributive, EL-shellable, not extremal",
            &self.not_extremal,
            &mut out,
        );
        out.push_str(&format!(
            "semidistributive with undecided EL: {}\n",
            self.unknown_el.len()
        ));
        for c in &self.unknown_el {
            out.push_str(&format!("  {c}\n"));
        }
        out
    }
}

fn reverify(e: &AtlasEntry, opts: &ClassifyOptions, want_lm: bool) -> bool {
    let Ok(l) = e.lattice() else {
        return false;
    };
    let r = classify(&l, opts);
    let flag = if want_lm { r.left_modular } else { r.extremal };
    let cert_ok = r
        .witnesses
        .el_certificate
        .as_ref()
        .is_some_and(|c| is_el_labeling(&l, c, LexMode::Weak).is_ok_and(|v| v.is_el()));
    r.semidistributive.is_yes() && r.el_shellable.is_yes() && flag.is_no() && cert_ok
}

/// Lists candidates without asserting anything about them.
pub fn hunt_questions(entries: &[AtlasEntry], opts: &ClassifyOptions) -> HuntReport {
    let mut report = HuntReport {
        max_n: entries.iter().map(|e| e.n).max().unwrap_or(0),
        scanned: entries.len(),
        semidistributive: 0,
        not_left_modular: Vec::new(),
        not_extremal: Vec::new(),
        unknown_el: Vec::new(),
    };
    for e in entries {
        let r = &e.record;
        if !r.semidistributive.is_yes() {
            continue;
        }
        report.semidistributive += 1;
        match r.el_shellable {
            Verdict::Unknown => report.unknown_el.push(e.canonical.clone()),
            Verdict::No => {}
            Verdict::Yes => {
                let candidate = |want_lm| Candidate {
                    canonical: e.canonical.clone(),
                    n: e.n,
                    reverified: reverify(e, opts, want_lm),
                };
                if r.left_modular.is_no() {
                    report.not_left_modular.push(candidate(true));
                }
                if r.extremal.is_no() {
                    report.not_extremal.push(candidate(false));
                }
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn figure_lattices_are_not_candidates() {
        let opts = ClassifyOptions::default();
        let entries: Vec<AtlasEntry> = fixtures::all()
            .iter()
            .map(|(_, l)| AtlasEntry::new(l, &opts))
            .collect();
        let report = hunt_questions(&entries, &opts);
        assert!(report.not_left_modular.is_empty());
        assert!(report.not_extremal.is_empty());
        // only the hexagon is semidistributive among them
        assert_eq!(report.semidistributive, 1);
    }
}
