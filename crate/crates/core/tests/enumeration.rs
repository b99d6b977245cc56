mod common;

use std::collections::BTreeSet;

use common::naive_lattices;
use latticelab::atlas::{enumerate_canonical_forms, enumerate_lattices};
use latticelab::canonical_form;

#[test]
fn orderly_generation_matches_naive_oracle() {
    for n in 1..=6 {
        let naive: BTreeSet<_> = naive_lattices(n).iter().map(canonical_form).collect();
        let fast: BTreeSet<_> = enumerate_canonical_forms(n).unwrap().into_iter().collect();
        assert_eq!(naive.len(), [1, 1, 1, 2, 5, 15][n - 1], "n = {n}");
        assert_eq!(naive, fast, "n = {n}");
    }
}

#[test]
fn known_counts_beyond_the_oracle() {
    // OEIS A006966
    assert_eq!(enumerate_canonical_forms(7).unwrap().len(), 53);
    assert_eq!(enumerate_canonical_forms(8).unwrap().len(), 222);
}

#[test]
fn enumeration_is_deterministic() {
    for n in [5, 7] {
        assert_eq!(
            enumerate_canonical_forms(n).unwrap(),
            enumerate_canonical_forms(n).unwrap()
        );
    }
}

#[test]
fn emitted_lattices_are_pairwise_non_isomorphic_and_sorted() {
    let forms: Vec<_> = enumerate_lattices(7)
        .unwrap()
        .iter()
        .map(|l| canonical_form(l.poset()))
        .collect();
    assert!(forms.windows(2).all(|w| w[0] < w[1]));
}
