//! The implication grid between lattice classes and the structural scans
//! behind it.
//!
//! Boxes sit at (row, column): rows are all lattices, join-semidistributive
//! lattices and semidistributive lattices; columns are extremal,
//! join-extremal, left-modular and EL-shellable. An arrow from box `p` to
//! box `q` claims that every lattice in `p` lies in `q`.

use std::fmt;

use serde::Serialize;

use super::AtlasEntry;
use crate::canonical::{canonical_form, CanonicalForm};
use crate::fixtures;
use crate::irreducibles::{
    gamma_map, is_perspective, join_irreducibles, kappa_by_join, kappa_data, length,
    maximal_chains, meet_irreducibles, perspectivity_witness_recursive, perspectivity_witness_scan,
};
use crate::lattice::Lattice;
use crate::properties::{
    classify, is_join_semidistributive, is_meet_semidistributive, left_modular_chain,
    ClassificationRecord, ClassifyOptions, Verdict,
};
use crate::shellability::{is_el_labeling, lm_labeling, LexMode, DEFAULT_EL_BUDGET};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Row {
    Lattice,
    JoinSemidistributive,
    Semidistributive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Col {
    Extremal,
    JoinExtremal,
    LeftModular,
    ElShellable,
}

impl Row {
    pub const ALL: [Row; 3] = [
        Row::Lattice,
        Row::JoinSemidistributive,
        Row::Semidistributive,
    ];

    fn verdict(self, r: &ClassificationRecord) -> Verdict {
        match self {
            Row::Lattice => Verdict::Yes,
            Row::JoinSemidistributive => r.join_semidistributive,
            Row::Semidistributive => r.semidistributive,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Row::Lattice => "lattice",
            Row::JoinSemidistributive => "join-semidistributive",
            Row::Semidistributive => "semidistributive",
        }
    }
}

impl Col {
    pub const ALL: [Col; 4] = [
        Col::Extremal,
        Col::JoinExtremal,
        Col::LeftModular,
        Col::ElShellable,
    ];

    fn verdict(self, r: &ClassificationRecord) -> Verdict {
        match self {
            Col::Extremal => r.extremal,
            Col::JoinExtremal => r.join_extremal,
            Col::LeftModular => r.left_modular,
            Col::ElShellable => r.el_shellable,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Col::Extremal => "extremal",
            Col::JoinExtremal => "join-extremal",
            Col::LeftModular => "left-modular",
            Col::ElShellable => "EL-shellable",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Cell {
    pub row: Row,
    pub col: Col,
}

impl Cell {
    pub fn verdict(self, r: &ClassificationRecord) -> Verdict {
        self.row.verdict(r).and(self.col.verdict(r))
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.row {
            Row::Lattice => f.write_str(self.col.name()),
            row => write!(f, "{} {}", row.name(), self.col.name()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ArrowColor {
    /// The implication holds.
    Green,
    /// The implication fails; a named figure lattice refutes it.
    Red,
    /// Unresolved.
    Open,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Arrow {
    pub from: Cell,
    pub to: Cell,
    pub color: ArrowColor,
    /// Fixture designated to refute a red arrow.
    pub counterexample: Option<&'static str>,
}

impl Arrow {
    pub fn id(&self) -> String {
        format!("{} => {}", self.from, self.to)
    }
}

fn cell(row: Row, col: Col) -> Cell {
    Cell { row, col }
}

/// The 34 arrows of the grid.
pub fn arrows() -> Vec<Arrow> {
    use ArrowColor::*;
    use Col::*;
    use Row::*;
    let mut out = Vec::new();
    let mut add = |row: Row, from: Col, to: Col, color: ArrowColor, fig: Option<&'static str>| {
        out.push(Arrow {
            from: cell(row, from),
            to: cell(row, to),
            color,
            counterexample: fig,
        })
    };
    add(Lattice, Extremal, JoinExtremal, Green, None);
    add(Lattice, JoinExtremal, Extremal, Red, Some("fig6a"));
    add(Lattice, JoinExtremal, LeftModular, Red, Some("fig6b"));
    add(Lattice, LeftModular, JoinExtremal, Red, Some("fig5b"));
    add(Lattice, LeftModular, ElShellable, Green, None);
    add(Lattice, ElShellable, LeftModular, Red, Some("fig6b"));

    add(JoinSemidistributive, Extremal, JoinExtremal, Green, None);
    add(
        JoinSemidistributive,
        JoinExtremal,
        Extremal,
        Red,
        Some("fig6a"),
    );
    add(
        JoinSemidistributive,
        JoinExtremal,
        LeftModular,
        Red,
        Some("fig6b"),
    );
    add(JoinSemidistributive, LeftModular, JoinExtremal, Green, None);
    add(JoinSemidistributive, LeftModular, ElShellable, Green, None);
    add(
        JoinSemidistributive,
        ElShellable,
        LeftModular,
        Red,
        Some("fig6b"),
    );

    add(Semidistributive, Extremal, JoinExtremal, Green, None);
    add(Semidistributive, JoinExtremal, Extremal, Green, None);
    add(Semidistributive, JoinExtremal, LeftModular, Green, None);
    add(Semidistributive, LeftModular, JoinExtremal, Green, None);
    add(Semidistributive, LeftModular, ElShellable, Green, None);
    add(Semidistributive, ElShellable, LeftModular, Open, None);

    let down_lattice = [
        (Extremal, "fig5c"),
        (JoinExtremal, "fig5c"),
        (LeftModular, "fig5b"),
        (ElShellable, "fig5b"),
    ];
    for (col, fig) in down_lattice {
        out.push(Arrow {
            from: cell(JoinSemidistributive, col),
            to: cell(Lattice, col),
            color: Green,
            counterexample: None,
        });
        out.push(Arrow {
            from: cell(Lattice, col),
            to: cell(JoinSemidistributive, col),
            color: Red,
            counterexample: Some(fig),
        });
    }
    for col in Col::ALL {
        out.push(Arrow {
            from: cell(Semidistributive, col),
            to: cell(JoinSemidistributive, col),
            color: Green,
            counterexample: None,
        });
        let (color, fig) = if col == Extremal {
            (Green, None)
        } else {
            (Red, Some("fig6a"))
        };
        out.push(Arrow {
            from: cell(JoinSemidistributive, col),
            to: cell(Semidistributive, col),
            color,
            counterexample: fig,
        });
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ArrowVerdict {
    /// No scanned lattice satisfies the premise and fails the conclusion.
    Holds,
    Refuted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArrowResult {
    pub arrow: String,
    pub color: ArrowColor,
    pub verdict: ArrowVerdict,
    /// Least canonical form refuting the arrow.
    pub counterexample: Option<CanonicalForm>,
    pub violations: usize,
    /// Lattices in the premise whose conclusion is unknown.
    pub undecided: usize,
    pub designated: Option<&'static str>,
    /// Whether the designated fixture refutes the arrow, re-checked by
    /// classifying the fixture.
    pub designated_refutes: Option<bool>,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaResult {
    pub name: &'static str,
    pub statement: &'static str,
    pub checked: usize,
    pub violations: Vec<CanonicalForm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ImplicationReport {
    pub max_n: usize,
    pub lattices: usize,
    pub arrows: Vec<ArrowResult>,
    pub lemmas: Vec<LemmaResult>,
    /// Entries whose stored record disagrees with re-classification.
    pub stale_entries: Vec<CanonicalForm>,
}

impl ImplicationReport {
    /// No green arrow or structural statement is violated.
    pub fn green_ok(&self) -> bool {
        self.arrows
            .iter()
            .filter(|a| a.color == ArrowColor::Green)
            .all(|a| a.ok)
            && self.lemmas.iter().all(|l| l.violations.is_empty())
            && self.stale_entries.is_empty()
    }

    /// Every red arrow is refuted, by its designated fixture too.
    pub fn red_ok(&self) -> bool {
        self.arrows
            .iter()
            .filter(|a| a.color == ArrowColor::Red)
            .all(|a| a.ok)
    }

    pub fn ok(&self) -> bool {
        self.green_ok() && self.red_ok()
    }

    pub fn to_table(&self) -> String {
        let mut out = format!(
            "lattices scanned: {} (n <= {})\n",
            self.lattices, self.max_n
        );
        for a in &self.arrows {
            let color = match a.color {
                ArrowColor::Green => "green",
                ArrowColor::Red => "red",
                ArrowColor::Open => "open",
            };
            let verdict = match a.verdict {
                ArrowVerdict::Holds => "holds",
                ArrowVerdict::Refuted => "refuted",
            };
            out.push_str(&format!(
                "{:<4} {:<5} {:<7} {:<72} violations={} undecided={}{}\n",
                if a.ok { "ok" } else { "FAIL" },
                color,
                verdict,
                a.arrow,
                a.violations,
                a.undecided,
                a.counterexample
                    .as_ref()
                    .map(|c| format!(" first={c}"))
                    .unwrap_or_default(),
            ));
        }
        for l in &self.lemmas {
            out.push_str(&format!(
                "{:<4} {:<44} checked={} violations={}\n",
                if l.violations.is_empty() {
                    "ok"
                } else {
                    "FAIL"
                },
                l.name,
                l.checked,
                l.violations.len()
            ));
        }
        if !self.stale_entries.is_empty() {
            out.push_str(&format!(
                "FAIL stale entries: {}\n",
                self.stale_entries.len()
            ));
        }
        out
    }
}

fn fixture(name: &str) -> Option<Lattice> {
    fixtures::all()
        .into_iter()
        .find(|(n, _)| *n == name)
        .map(|(_, l)| l)
}

/// Checks every arrow against the entries, then runs the structural scans on
/// each re-ingested lattice. With `recheck`, each entry is also re-classified
/// under `opts` and compared with its stored record.
pub fn check_implications(
    entries: &[AtlasEntry],
    opts: &ClassifyOptions,
    recheck: bool,
) -> ImplicationReport {
    let mut results = Vec::new();
    for arrow in arrows() {
        let mut violations = 0;
        let mut undecided = 0;
        let mut first: Option<&CanonicalForm> = None;
        for e in entries {
            if !arrow.from.verdict(&e.record).is_yes() {
                continue;
            }
            match arrow.to.verdict(&e.record) {
                Verdict::No => {
                    violations += 1;
                    if first.is_none_or(|f| e.canonical < *f) {
                        first = Some(&e.canonical);
                    }
                }
                Verdict::Unknown => undecided += 1,
                Verdict::Yes => {}
            }
        }
        let designated_refutes = arrow.counterexample.map(|name| {
            let l = fixture(name).expect("designated fixture exists");
            let r = classify(
                &l,
                &ClassifyOptions {
                    el_budget: Some(DEFAULT_EL_BUDGET),
                    lex_mode: opts.lex_mode,
                },
            );
            arrow.from.verdict(&r).is_yes() && arrow.to.verdict(&r).is_no()
        });
        let verdict = if violations == 0 {
            ArrowVerdict::Holds
        } else {
            ArrowVerdict::Refuted
        };
        let ok = match arrow.color {
            ArrowColor::Green => verdict == ArrowVerdict::Holds,
            ArrowColor::Red => verdict == ArrowVerdict::Refuted && designated_refutes == Some(true),
            ArrowColor::Open => true,
        };
        results.push(ArrowResult {
            arrow: arrow.id(),
            color: arrow.color,
            verdict,
            counterexample: first.cloned(),
            violations,
            undecided,
            designated: arrow.counterexample,
            designated_refutes,
            ok,
        });
    }

    let mut lemmas: Vec<LemmaResult> = LEMMAS
        .iter()
        .map(|&(name, statement)| LemmaResult {
            name,
            statement,
            checked: 0,
            violations: Vec::new(),
        })
        .collect();
    let mut stale = Vec::new();
    for e in entries {
        let Ok(l) = e.lattice() else {
            stale.push(e.canonical.clone());
            continue;
        };
        for (slot, outcome) in lemmas.iter_mut().zip(scan_lemmas(&l)) {
            match outcome {
                Some(true) => slot.checked += 1,
                Some(false) => {
                    slot.checked += 1;
                    slot.violations.push(e.canonical.clone());
                }
                None => {}
            }
        }
        if let Some(cert) = &e.record.witnesses.el_certificate {
            let slot = lemmas.iter_mut().find(|s| s.name == CERTIFICATES).unwrap();
            slot.checked += 1;
            let weak = is_el_labeling(&l, cert, LexMode::Weak).is_ok_and(|v| v.is_el());
            let strict = is_el_labeling(&l, cert, LexMode::Strict).is_ok_and(|v| v.is_el());
            if !(weak && strict) {
                slot.violations.push(e.canonical.clone());
            }
        }
        if recheck && classify(&l, opts) != e.record {
            stale.push(e.canonical.clone());
        }
    }

    ImplicationReport {
        max_n: entries.iter().map(|e| e.n).max().unwrap_or(0),
        lattices: entries.len(),
        arrows: results,
        lemmas,
        stale_entries: stale,
    }
}

const CERTIFICATES: &str = "el-certificates";

const LEMMAS: [(&str, &str); 12] = [
    (
        "cover-perspectivity-witness",
        "every cover is perspective to some (j_*, j); both witness searches agree with is_perspective",
    ),
    ("gamma-surjective", "gamma_C maps onto 1..len(C) for every maximal chain C"),
    (
        "gamma-bijective-iff-join-extremal",
        "on maximum-length chains, gamma_C is bijective exactly when L is join-extremal",
    ),
    ("semidistributive-equal-counts", "semidistributive implies |J| = |M|"),
    (
        "semidistributive-left-modular-iff-extremal",
        "for semidistributive lattices, left-modular iff extremal",
    ),
    ("kappa-maximals-meet-irreducible", "every maximal element of K(j) is meet-irreducible"),
    (
        "kappa-maximals-disjoint",
        "in a join-semidistributive lattice, no element is maximal in K(j) and K(j') for j != j'",
    ),
    (
        "jsd-equal-counts-semidistributive",
        "join-semidistributive with |J| = |M| implies semidistributive",
    ),
    (
        "left-modular-labeling-el",
        "for a left-modular chain C, the labeling induced by gamma_C is an EL-labeling",
    ),
    (
        "kappa-readings-agree",
        "the unique maximal element of K(j) and the join of K(j) give the same kappa",
    ),
    (
        "lex-modes-agree",
        "weak and strict lexicographic minimality agree on the left-modular labeling",
    ),
    (
        CERTIFICATES,
        "stored EL certificates verify under both lexicographic modes",
    ),
];

/// Names and statements of the checks [`scan_lemmas`] performs, in order.
pub fn structural_checks() -> &'static [(&'static str, &'static str)] {
    &LEMMAS[..LEMMAS.len() - 1]
}

/// Runs the structural checks on one lattice, in the order of the report's
/// lemma list (the certificate check excluded). `None` means the statement's
/// hypothesis does not apply.
pub fn scan_lemmas(l: &Lattice) -> Vec<Option<bool>> {
    let jis = join_irreducibles(l);
    let j_count = jis.len();
    let m_count = meet_irreducibles(l).len();
    let len = length(l);
    let jsd = is_join_semidistributive(l);
    let sd = jsd && is_meet_semidistributive(l);
    let join_extremal = len == j_count;
    let extremal = join_extremal && len == m_count;
    let lm_chain = left_modular_chain(l);

    let witnesses = l.covers().iter().all(|&c| {
        let ok = |r: crate::error::Result<crate::irreducibles::JoinIrreducible>| {
            r.is_ok_and(|w| is_perspective(l, c, w.cover()).unwrap_or(false))
        };
        ok(perspectivity_witness_scan(l, c)) && ok(perspectivity_witness_recursive(l, c))
    });

    let mut surjective = true;
    let mut bijective_iff = true;
    for chain in maximal_chains(l) {
        let k = chain.length();
        let mut hit = vec![false; k + 1];
        for (_, s) in gamma_map(l, &chain) {
            hit[s] = true;
        }
        let onto = hit[1..].iter().all(|&h| h);
        surjective &= onto;
        if k == len {
            let bijective = onto && j_count == k;
            bijective_iff &= bijective == join_extremal;
        }
    }

    let mut kappa_meet_irr = true;
    let mut kappa_disjoint = true;
    let mut kappa_agree = true;
    let mut seen_maximals = vec![false; l.len()];
    let meet_irr: Vec<bool> = {
        let mut v = vec![false; l.len()];
        for m in meet_irreducibles(l) {
            v[m.m] = true;
        }
        v
    };
    for ji in &jis {
        let data = kappa_data(l, ji.j).expect("join-irreducible");
        kappa_meet_irr &= data.maximals.iter().all(|&m| meet_irr[m]);
        for &m in &data.maximals {
            kappa_disjoint &= !seen_maximals[m];
            seen_maximals[m] = true;
        }
        kappa_agree &= data.kappa == kappa_by_join(l, &data);
    }

    let (lm_el, lex_agree) = match &lm_chain {
        Some(c) => {
            let lab = lm_labeling(l, c).expect("left-modular chain of maximum length");
            let weak = is_el_labeling(l, &lab, LexMode::Weak)
                .expect("total labeling")
                .is_el();
            let strict = is_el_labeling(l, &lab, LexMode::Strict)
                .expect("total labeling")
                .is_el();
            (Some(weak), Some(weak == strict))
        }
        None => (None, None),
    };

    vec![
        Some(witnesses),
        Some(surjective),
        Some(bijective_iff),
        sd.then_some(j_count == m_count),
        sd.then_some(lm_chain.is_some() == extremal),
        Some(kappa_meet_irr),
        jsd.then_some(kappa_disjoint),
        (jsd && j_count == m_count).then_some(sd),
        lm_el,
        Some(kappa_agree),
        lex_agree,
    ]
}

/// Canonical form of a fixture, for reports.
pub fn fixture_form(name: &str) -> Option<CanonicalForm> {
    fixture(name).map(|l| canonical_form(l.poset()))
}
