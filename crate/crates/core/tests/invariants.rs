use latticelab::atlas::enumerate_lattices;
use latticelab::shellability::{el_search, is_el_labeling, lm_labeling, LexMode, SearchOutcome};
use latticelab::*;
use proptest::prelude::*;
use proptest::sample::select;

fn all_small() -> Vec<Lattice> {
    (1..=6)
        .flat_map(|n| enumerate_lattices(n).unwrap())
        .collect()
}

fn fixture() -> impl Strategy<Value = Lattice> {
    select(
        fixtures::all()
            .into_iter()
            .map(|(_, l)| l)
            .collect::<Vec<_>>(),
    )
}

fn relabeled() -> impl Strategy<Value = (Lattice, Vec<usize>)> {
    fixture().prop_flat_map(|l| {
        let n = l.len();
        (Just(l), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

proptest! {
    #[test]
    fn lattice_axioms(l in select(all_small()), a in 0usize..6, b in 0usize..6, c in 0usize..6) {
        let n = l.len();
        let (a, b, c) = (a % n, b % n, c % n);
        prop_assert_eq!(l.join(a, b), l.join(b, a));
        prop_assert_eq!(l.meet(a, b), l.meet(b, a));
        prop_assert_eq!(l.join(a, l.join(b, c)), l.join(l.join(a, b), c));
        prop_assert_eq!(l.meet(a, l.meet(b, c)), l.meet(l.meet(a, b), c));
        prop_assert_eq!(l.join(a, l.meet(a, b)), a);
        prop_assert_eq!(l.meet(a, l.join(a, b)), a);
        prop_assert_eq!(l.leq(a, b), l.join(a, b) == b);
    }

    #[test]
    fn relabeling_preserves_canonical_form((l, perm) in relabeled()) {
        let r = l.relabel(&perm);
        prop_assert_eq!(canonical_form(r.poset()), canonical_form(l.poset()));
        prop_assert!(is_isomorphic(r.poset(), l.poset()));
    }

    #[test]
    fn dual_is_an_involution(l in fixture()) {
        let dd = l.dual().dual();
        prop_assert_eq!(dd.covers(), l.covers());
        prop_assert_eq!(canonical_form(dd.poset()), canonical_form(l.poset()));
    }

    #[test]
    fn ideal_lattices_are_distributive(covers in proptest::collection::vec((0usize..6, 0usize..6), 0..8)) {
        let pairs: Vec<_> = covers.into_iter().filter(|(a, b)| a < b).collect();
        let p = FinitePoset::transitive_reduce(6, &pairs).unwrap();
        let il = ideal_lattice(&p, DEFAULT_IDEAL_CAP).unwrap();
        prop_assert!(properties::is_distributive(&il.lattice));
        prop_assert_eq!(join_irreducibles(&il.lattice).len(), 6);
        prop_assert_eq!(length(&il.lattice), 6);
    }

    #[test]
    fn monotone_label_maps_keep_el(l in select(all_small()), scale in 1i64..5, shift in -10i64..10, cube in any::<bool>()) {
        if let SearchOutcome::Shellable(lab) = el_search(&l, DEFAULT_EL_BUDGET, LexMode::Weak).outcome {
            let mapped = lab.map_labels(|x| if cube { x * x * x + shift } else { scale * x + shift });
            prop_assert!(is_el_labeling(&l, &mapped, LexMode::Weak).unwrap().is_el());
        }
    }
}

#[test]
fn refutations_are_stable_under_more_budget() {
    for l in (1..=7).flat_map(|n| enumerate_lattices(n).unwrap()) {
        let r = el_search(&l, DEFAULT_EL_BUDGET, LexMode::Weak);
        if r.outcome == SearchOutcome::NotShellable {
            let again = el_search(&l, 2 * DEFAULT_EL_BUDGET, LexMode::Weak);
            assert_eq!(again.outcome, SearchOutcome::NotShellable);
        }
    }
}

#[test]
fn search_certificates_verify() {
    for l in (1..=7).flat_map(|n| enumerate_lattices(n).unwrap()) {
        for mode in [LexMode::Weak, LexMode::Strict] {
            if let SearchOutcome::Shellable(lab) = el_search(&l, DEFAULT_EL_BUDGET, mode).outcome {
                assert!(is_el_labeling(&l, &lab, mode).unwrap().is_el());
            }
        }
    }
}

#[test]
fn lex_modes_give_the_same_verdicts() {
    for l in (1..=7).flat_map(|n| enumerate_lattices(n).unwrap()) {
        let weak = el_search(&l, DEFAULT_EL_BUDGET, LexMode::Weak).outcome;
        let strict = el_search(&l, DEFAULT_EL_BUDGET, LexMode::Strict).outcome;
        assert_eq!(
            matches!(weak, SearchOutcome::Shellable(_)),
            matches!(strict, SearchOutcome::Shellable(_))
        );
    }
}

#[test]
fn join_semidistributive_left_modular_lattices_are_shellable() {
    for l in (1..=8).flat_map(|n| enumerate_lattices(n).unwrap()) {
        if properties::is_join_semidistributive(&l) {
            if let Some(c) = properties::left_modular_chain(&l) {
                let lab = lm_labeling(&l, &c).unwrap();
                assert!(is_el_labeling(&l, &lab, LexMode::Weak).unwrap().is_el());
            }
        }
    }
}
