//! Edge labelings of the cover graph and EL-shellability.

mod search;
mod verify;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::irreducibles::{gamma_map, length, MaximalChain};
use crate::lattice::Lattice;
use crate::properties::left_modular_elements;
use crate::ElementId;

pub use search::{el_search, SearchOutcome, DEFAULT_EL_BUDGET};
pub use verify::{interval_chains, is_el_labeling, ElFailure, ElReason, ElVerdict, LexMode};

/// Integer labels on cover pairs. Only their relative order matters.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(
    into = "Vec<(ElementId, ElementId, i64)>",
    from = "Vec<(ElementId, ElementId, i64)>"
)]
pub struct EdgeLabeling {
    labels: BTreeMap<(ElementId, ElementId), i64>,
}

impl EdgeLabeling {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_fn(l: &Lattice, mut f: impl FnMut(ElementId, ElementId) -> i64) -> Self {
        EdgeLabeling {
            labels: l.covers().iter().map(|&(a, b)| ((a, b), f(a, b))).collect(),
        }
    }

    pub fn insert(&mut self, a: ElementId, b: ElementId, label: i64) {
        self.labels.insert((a, b), label);
    }

    pub fn get(&self, a: ElementId, b: ElementId) -> Option<i64> {
        self.labels.get(&(a, b)).copied()
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = ((ElementId, ElementId), i64)> + '_ {
        self.labels.iter().map(|(&k, &v)| (k, v))
    }

    /// Applies `f` to every label.
    pub fn map_labels(&self, f: impl Fn(i64) -> i64) -> EdgeLabeling {
        EdgeLabeling {
            labels: self.labels.iter().map(|(&k, &v)| (k, f(v))).collect(),
        }
    }

    /// First cover without a label, if any.
    pub fn missing_cover(&self, l: &Lattice) -> Option<(ElementId, ElementId)> {
        l.covers()
            .iter()
            .copied()
            .find(|c| !self.labels.contains_key(c))
    }

    /// `a b label` lines in cover order.
    pub fn to_text(&self, l: &Lattice) -> String {
        let mut out = String::new();
        for &(a, b) in l.covers() {
            if let Some(x) = self.get(a, b) {
                let _ = writeln!(out, "{a} {b} {x}");
            }
        }
        out
    }
}

impl From<EdgeLabeling> for Vec<(ElementId, ElementId, i64)> {
    fn from(l: EdgeLabeling) -> Self {
        l.labels.into_iter().map(|((a, b), x)| (a, b, x)).collect()
    }
}

impl From<Vec<(ElementId, ElementId, i64)>> for EdgeLabeling {
    fn from(v: Vec<(ElementId, ElementId, i64)>) -> Self {
        EdgeLabeling {
            labels: v.into_iter().map(|(a, b, x)| ((a, b), x)).collect(),
        }
    }
}

/// Labels each cover `(a, b)` with the least `gamma_C(j)` over join-irreducibles
/// `j` with `a ∨ j = b`, for a maximum-length chain `C` of left-modular
/// elements.
pub fn lm_labeling(l: &Lattice, chain: &MaximalChain) -> Result<EdgeLabeling> {
    let len = length(l);
    if chain.length() != len {
        return Err(Error::ChainNotMaximumLength {
            found: chain.length(),
            expected: len,
        });
    }
    let lm = left_modular_elements(l);
    if let Some(&bad) = chain.elements().iter().find(|e| !lm.contains(e)) {
        return Err(Error::ChainNotLeftModular(bad));
    }
    let gammas = gamma_map(l, chain);
    let mut labeling = EdgeLabeling::new();
    for &(a, b) in l.covers() {
        let label = gammas
            .iter()
            .filter(|&&(j, _)| l.join(a, j) == b)
            .map(|&(_, g)| g)
            .min()
            .expect("every cover is reached by joining some join-irreducible");
        labeling.insert(a, b, label as i64);
    }
    Ok(labeling)
}

/// Labels along a chain given by its elements.
pub fn label_vector(labeling: &EdgeLabeling, chain: &[ElementId]) -> Result<Vec<i64>> {
    chain
        .windows(2)
        .map(|w| {
            labeling
                .get(w[0], w[1])
                .ok_or(Error::PartialLabeling(w[0], w[1]))
        })
        .collect()
}

/// Strictly increasing.
pub fn is_increasing(v: &[i64]) -> bool {
    v.windows(2).all(|w| w[0] < w[1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn m3_lm_labeling() {
        let m3 = fixtures::m3();
        let c = MaximalChain::new(&m3, vec![0, 1, 4]).unwrap();
        let lab = lm_labeling(&m3, &c).unwrap();
        let got: Vec<_> = lab.iter().collect();
        assert_eq!(
            got,
            vec![
                ((0, 1), 1),
                ((0, 2), 2),
                ((0, 3), 2),
                ((1, 4), 2),
                ((2, 4), 1),
                ((3, 4), 1)
            ]
        );
        assert_eq!(label_vector(&lab, &[0, 2, 4]).unwrap(), vec![2, 1]);
        assert!(!is_increasing(&[2, 1]));
    }

    #[test]
    fn chain_lattice_labels_in_order() {
        let c = Lattice::chain(4);
        let mc = MaximalChain::new(&c, vec![0, 1, 2, 3, 4]).unwrap();
        let lab = lm_labeling(&c, &mc).unwrap();
        assert_eq!(label_vector(&lab, mc.elements()).unwrap(), vec![1, 2, 3, 4]);
    }

    #[test]
    fn lm_labeling_preconditions() {
        let h = fixtures::hexagon();
        let c = MaximalChain::new(&h, vec![0, 1, 3, 5]).unwrap();
        assert!(matches!(
            lm_labeling(&h, &c),
            Err(Error::ChainNotLeftModular(1))
        ));

        let l = fixtures::fig5c();
        let short = MaximalChain::new(&l, vec![0, 1, 4, 8]).unwrap();
        assert!(matches!(
            lm_labeling(&l, &short),
            Err(Error::ChainNotMaximumLength {
                found: 3,
                expected: 4
            })
        ));
    }

    #[test]
    fn increasing_is_strict() {
        assert!(is_increasing(&[1, 2, 3]));
        assert!(!is_increasing(&[1, 1]));
        assert!(is_increasing(&[]));
        assert!(matches!(
            label_vector(&EdgeLabeling::new(), &[0, 1]),
            Err(Error::PartialLabeling(0, 1))
        ));
    }

    #[test]
    fn labeling_text_follows_cover_order() {
        let m3 = fixtures::m3();
        let lab = EdgeLabeling::from_fn(&m3, |a, b| (a + b) as i64);
        assert_eq!(lab.to_text(&m3).lines().next(), Some("0 1 1"));
        assert_eq!(lab.to_text(&m3).lines().count(), 6);
    }
}
