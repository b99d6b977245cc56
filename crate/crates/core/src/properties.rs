//! Decision procedures for the lattice properties, each by exhaustive checks
//! over pairs and triples.

use serde::{Deserialize, Serialize};

use crate::irreducibles::{join_irreducibles, length, meet_irreducibles, MaximalChain};
use crate::lattice::Lattice;
use crate::shellability::{
    el_search, is_el_labeling, lm_labeling, EdgeLabeling, ElVerdict, LexMode, SearchOutcome,
    DEFAULT_EL_BUDGET,
};
use crate::ElementId;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Verdict {
        if b {
            Verdict::Yes
        } else {
            Verdict::No
        }
    }

    pub fn is_yes(self) -> bool {
        self == Verdict::Yes
    }

    pub fn is_no(self) -> bool {
        self == Verdict::No
    }

    /// `None` for `Unknown`.
    pub fn known(self) -> Option<bool> {
        match self {
            Verdict::Yes => Some(true),
            Verdict::No => Some(false),
            Verdict::Unknown => None,
        }
    }

    pub fn and(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::No, _) | (_, Verdict::No) => Verdict::No,
            (Verdict::Yes, Verdict::Yes) => Verdict::Yes,
            _ => Verdict::Unknown,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    /// `(a, b, c)` with `a ∨ b = a ∨ c` but `a ∨ b != a ∨ (b ∧ c)`.
    JsdTriple,
    /// `(a, b, c)` with `b < c` and `(b ∨ a) ∧ c != b ∨ (a ∧ c)`.
    LmTriple,
    /// `(a, b, c)` breaking one of the two distributive laws.
    DistributiveTriple,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub elements: Vec<ElementId>,
}

impl Violation {
    fn triple(kind: ViolationKind, a: ElementId, b: ElementId, c: ElementId) -> Violation {
        Violation {
            kind,
            elements: vec![a, b, c],
        }
    }

    /// Re-evaluates the defining equation on the stored tuple; true when it
    /// still fails in `l`.
    pub fn reproduces(&self, l: &Lattice) -> bool {
        let &[a, b, c] = self.elements.as_slice() else {
            return false;
        };
        if [a, b, c].iter().any(|&x| x >= l.len()) {
            return false;
        }
        match self.kind {
            ViolationKind::JsdTriple => jsd_fails(l, a, b, c),
            ViolationKind::LmTriple => l.lt(b, c) && lm_fails(l, a, b, c),
            ViolationKind::DistributiveTriple => distributive_fails(l, a, b, c),
        }
    }
}

fn distributive_fails(l: &Lattice, a: ElementId, b: ElementId, c: ElementId) -> bool {
    l.meet(l.join(a, b), l.join(a, c)) != l.join(a, l.meet(b, c))
        || l.join(l.meet(a, b), l.meet(a, c)) != l.meet(a, l.join(b, c))
}

fn jsd_fails(l: &Lattice, a: ElementId, b: ElementId, c: ElementId) -> bool {
    let ab = l.join(a, b);
    ab == l.join(a, c) && ab != l.join(a, l.meet(b, c))
}

fn lm_fails(l: &Lattice, a: ElementId, b: ElementId, c: ElementId) -> bool {
    l.meet(l.join(b, a), c) != l.join(b, l.meet(a, c))
}

fn first_triple(
    l: &Lattice,
    mut fails: impl FnMut(ElementId, ElementId, ElementId) -> bool,
) -> Option<[ElementId; 3]> {
    for a in l.elements() {
        for b in l.elements() {
            for c in l.elements() {
                if fails(a, b, c) {
                    return Some([a, b, c]);
                }
            }
        }
    }
    None
}

/// First triple (in lexicographic order) breaking a distributive law.
pub fn distributive_violation(l: &Lattice) -> Option<Violation> {
    first_triple(l, |a, b, c| distributive_fails(l, a, b, c))
        .map(|[a, b, c]| Violation::triple(ViolationKind::DistributiveTriple, a, b, c))
}

pub fn is_distributive(l: &Lattice) -> bool {
    distributive_violation(l).is_none()
}

/// First triple breaking join-semidistributivity.
pub fn jsd_violation(l: &Lattice) -> Option<Violation> {
    first_triple(l, |a, b, c| jsd_fails(l, a, b, c))
        .map(|[a, b, c]| Violation::triple(ViolationKind::JsdTriple, a, b, c))
}

pub fn is_join_semidistributive(l: &Lattice) -> bool {
    jsd_violation(l).is_none()
}

/// Join-semidistributivity of the dual; the triple refers to the dual's
/// operations (same element ids).
pub fn msd_violation(l: &Lattice) -> Option<Violation> {
    jsd_violation(&l.dual())
}

pub fn is_meet_semidistributive(l: &Lattice) -> bool {
    msd_violation(l).is_none()
}

/// A triple `(a, b, c)` with `b < c` and `(b ∨ a) ∧ c != b ∨ (a ∧ c)`, if `a`
/// is not left-modular.
pub fn left_modular_violation(l: &Lattice, a: ElementId) -> Option<Violation> {
    for b in l.elements() {
        for c in l.poset().up_set(b).iter() {
            if b != c && lm_fails(l, a, b, c) {
                return Some(Violation::triple(ViolationKind::LmTriple, a, b, c));
            }
        }
    }
    None
}

pub fn is_left_modular_element(l: &Lattice, a: ElementId) -> bool {
    left_modular_violation(l, a).is_none()
}

/// All left-modular elements, ascending.
pub fn left_modular_elements(l: &Lattice) -> Vec<ElementId> {
    l.elements()
        .filter(|&a| is_left_modular_element(l, a))
        .collect()
}

/// Lexicographically least maximal chain of length `len(L)` made of
/// left-modular elements.
pub fn left_modular_chain(l: &Lattice) -> Option<MaximalChain> {
    let n = l.len();
    let len = length(l);
    let mut lm = vec![false; n];
    for a in left_modular_elements(l) {
        lm[a] = true;
    }
    if !lm[l.bot()] || !lm[l.top()] {
        return None;
    }
    // longest left-modular cover path from each element up to the top
    let mut height: Vec<Option<usize>> = vec![None; n];
    for &v in l.poset().linear_extension().iter().rev() {
        if !lm[v] {
            continue;
        }
        height[v] = if v == l.top() {
            Some(0)
        } else {
            l.upper_covers(v)
                .iter()
                .filter_map(|&w| height[w])
                .max()
                .map(|h| h + 1)
        };
    }
    if height[l.bot()] != Some(len) {
        return None;
    }
    let mut chain = vec![l.bot()];
    let mut v = l.bot();
    while v != l.top() {
        let remaining = len - (chain.len() - 1);
        v = *l
            .upper_covers(v)
            .iter()
            .find(|&&w| height[w] == Some(remaining - 1))
            .expect("height guarantees a continuation");
        chain.push(v);
    }
    Some(MaximalChain::new(l, chain).expect("cover path from bottom to top"))
}

pub fn is_left_modular(l: &Lattice) -> bool {
    left_modular_chain(l).is_some()
}

pub fn is_join_extremal(l: &Lattice) -> bool {
    length(l) == join_irreducibles(l).len()
}

pub fn is_extremal(l: &Lattice) -> bool {
    is_join_extremal(l) && is_join_extremal(&l.dual())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub join_irreducibles: usize,
    pub meet_irreducibles: usize,
    pub length: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witnesses {
    pub distributive: Option<Violation>,
    pub join_semidistributive: Option<Violation>,
    pub meet_semidistributive: Option<Violation>,
    pub left_modular_chain: Option<MaximalChainIds>,
    pub el_certificate: Option<EdgeLabeling>,
}

/// Element ids of a maximal chain, bottom first.
pub type MaximalChainIds = Vec<ElementId>;

/// Verdicts for all eight properties with supporting evidence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationRecord {
    pub distributive: Verdict,
    pub join_semidistributive: Verdict,
    pub meet_semidistributive: Verdict,
    pub semidistributive: Verdict,
    pub join_extremal: Verdict,
    pub extremal: Verdict,
    pub left_modular: Verdict,
    pub el_shellable: Verdict,
    /// Search nodes spent on the EL decision; zero when a left-modular
    /// labeling settled it.
    pub el_nodes: u64,
    pub counts: Counts,
    pub witnesses: Witnesses,
}

impl ClassificationRecord {
    /// Flags in the fixed export order.
    pub fn flags(&self) -> [(&'static str, Verdict); 8] {
        [
            ("distributive", self.distributive),
            ("jsd", self.join_semidistributive),
            ("msd", self.meet_semidistributive),
            ("sd", self.semidistributive),
            ("join_extremal", self.join_extremal),
            ("extremal", self.extremal),
            ("left_modular", self.left_modular),
            ("el", self.el_shellable),
        ]
    }

    /// JSON object with sorted keys.
    pub fn to_json(&self) -> String {
        serde_json::to_value(self)
            .expect("records serialize")
            .to_string()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassifyOptions {
    /// Node budget for the EL search; `None` leaves EL-shellability unknown
    /// unless a left-modular labeling certifies it.
    pub el_budget: Option<u64>,
    pub lex_mode: LexMode,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            el_budget: Some(DEFAULT_EL_BUDGET),
            lex_mode: LexMode::Weak,
        }
    }
}

pub fn classify(l: &Lattice, opts: &ClassifyOptions) -> ClassificationRecord {
    let dual = l.dual();
    let dist = distributive_violation(l);
    let jsd = jsd_violation(l);
    let msd = jsd_violation(&dual);
    let j = join_irreducibles(l).len();
    let m = meet_irreducibles(l).len();
    let len = length(l);
    let lm_chain = left_modular_chain(l);

    let join_extremal = len == j;
    let extremal = join_extremal && len == m;

    let mut el = Verdict::Unknown;
    let mut el_nodes = 0;
    let mut certificate = None;
    if let Some(chain) = &lm_chain {
        let lab = lm_labeling(l, chain).expect("chain is left-modular of maximum length");
        if is_el_labeling(l, &lab, opts.lex_mode)
            .expect("labeling is total")
            .is_el()
        {
            el = Verdict::Yes;
            certificate = Some(lab);
        }
    }
    if el == Verdict::Unknown {
        if let Some(budget) = opts.el_budget {
            let r = el_search(l, budget, opts.lex_mode);
            el_nodes = r.nodes;
            match r.outcome {
                SearchOutcome::Shellable(lab) => {
                    debug_assert_eq!(
                        is_el_labeling(l, &lab, opts.lex_mode).unwrap(),
                        ElVerdict::IsEl
                    );
                    el = Verdict::Yes;
                    certificate = Some(lab);
                }
                SearchOutcome::NotShellable => el = Verdict::No,
                SearchOutcome::Unknown { .. } => {}
            }
        }
    }

    ClassificationRecord {
        distributive: Verdict::from_bool(dist.is_none()),
        join_semidistributive: Verdict::from_bool(jsd.is_none()),
        meet_semidistributive: Verdict::from_bool(msd.is_none()),
        semidistributive: Verdict::from_bool(jsd.is_none() && msd.is_none()),
        join_extremal: Verdict::from_bool(join_extremal),
        extremal: Verdict::from_bool(extremal),
        left_modular: Verdict::from_bool(lm_chain.is_some()),
        el_shellable: el,
        el_nodes,
        counts: Counts {
            join_irreducibles: j,
            meet_irreducibles: m,
            length: len,
        },
        witnesses: Witnesses {
            distributive: dist,
            join_semidistributive: jsd,
            meet_semidistributive: msd,
            left_modular_chain: lm_chain.map(|c| c.elements().to_vec()),
            el_certificate: certificate,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::ideals::{ideal_lattice, DEFAULT_IDEAL_CAP};

    #[test]
    fn distributivity() {
        let il = ideal_lattice(&fixtures::fig1a_poset(), DEFAULT_IDEAL_CAP).unwrap();
        assert!(is_distributive(&il.lattice));
        for k in 0..5 {
            assert!(is_distributive(&Lattice::chain(k)));
        }
        let m3 = fixtures::m3();
        let v = distributive_violation(&m3).unwrap();
        assert_eq!(v.elements, vec![1, 2, 3]);
        assert!(v.reproduces(&m3));
    }

    #[test]
    fn m3_is_not_jsd() {
        let m3 = fixtures::m3();
        let v = jsd_violation(&m3).unwrap();
        assert_eq!(v.kind, ViolationKind::JsdTriple);
        assert_eq!(v.elements, vec![1, 2, 3]);
        assert!(v.reproduces(&m3));
        assert!(is_join_semidistributive(&fixtures::hexagon()));
        assert!(is_join_semidistributive(&fixtures::fig6b()));
    }

    #[test]
    fn left_modular_elements_of_fixtures() {
        assert_eq!(left_modular_elements(&fixtures::hexagon()), vec![0, 5]);
        assert_eq!(left_modular_elements(&fixtures::m3()), vec![0, 1, 2, 3, 4]);
        let v = left_modular_violation(&fixtures::hexagon(), 1).unwrap();
        assert!(v.reproduces(&fixtures::hexagon()));
        for (_, l) in fixtures::all() {
            let lm = left_modular_elements(&l);
            assert!(lm.contains(&l.bot()) && lm.contains(&l.top()));
        }
    }

    #[test]
    fn left_modular_chains() {
        let m3 = fixtures::m3();
        assert_eq!(left_modular_chain(&m3).unwrap().elements(), &[0, 1, 4]);
        assert!(left_modular_chain(&fixtures::fig6b()).is_none());
        assert!(left_modular_chain(&fixtures::hexagon()).is_none());
        let c = left_modular_chain(&fixtures::fig6a()).unwrap();
        assert_eq!(c.length(), 3);
    }

    #[test]
    fn verdict_logic() {
        assert_eq!(Verdict::Yes.and(Verdict::Unknown), Verdict::Unknown);
        assert_eq!(Verdict::No.and(Verdict::Unknown), Verdict::No);
        assert_eq!(Verdict::Yes.and(Verdict::Yes), Verdict::Yes);
        assert_eq!(
            serde_json::to_string(&Verdict::Unknown).unwrap(),
            "\"unknown\""
        );
    }

    #[test]
    fn record_json_has_sorted_keys() {
        let r = classify(&fixtures::m3(), &ClassifyOptions::default());
        let s = r.to_json();
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        let keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert!(s.find("\"counts\"").unwrap() < s.find("\"distributive\"").unwrap());
        let back: ClassificationRecord = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
    }
}
