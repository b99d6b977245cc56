mod common;

use common::*;
use latticelab::atlas::enumerate_lattices;
use latticelab::irreducibles::{is_perspective, perspective_irreducibles};
use latticelab::properties::{is_join_semidistributive, left_modular_elements};
use latticelab::*;

#[test]
fn joins_and_meets_match_brute_force() {
    for (name, l) in fixtures::all() {
        let le = order_matrix(l.poset());
        for a in l.elements() {
            for b in l.elements() {
                assert_eq!(Some(l.join(a, b)), join(&le, a, b), "{name} join {a} {b}");
                assert_eq!(Some(l.meet(a, b)), meet(&le, a, b), "{name} meet {a} {b}");
            }
        }
    }
}

#[test]
fn irreducible_counts_and_length_match_brute_force() {
    for n in 1..=7 {
        for l in enumerate_lattices(n).unwrap() {
            let le = order_matrix(l.poset());
            assert_eq!(join_irreducibles(&l).len(), join_irreducible_count(&le));
            assert_eq!(meet_irreducibles(&l).len(), meet_irreducible_count(&le));
            assert_eq!(latticelab::length(&l), common::length(&le));
        }
    }
}

#[test]
fn fixture_irreducible_counts() {
    let count = |l: &Lattice| {
        let le = order_matrix(l.poset());
        (join_irreducible_count(&le), meet_irreducible_count(&le))
    };
    assert_eq!(count(&fixtures::hexagon()), (4, 4));
    assert_eq!(count(&fixtures::fig6a()), (3, 4));
    let fig6b = fixtures::fig6b();
    let (j, m) = count(&fig6b);
    assert_eq!((j, m), (4, 5));
    assert_eq!(join_irreducibles(&fig6b).len(), j);
    assert_eq!(meet_irreducibles(&fig6b).len(), m);
    // the dual swaps the two counts
    let d = fig6b.dual();
    assert_eq!(join_irreducibles(&d).len(), m);
    assert_eq!(meet_irreducibles(&d).len(), j);
    assert_eq!(count(&fixtures::fig5c()), (4, 4));
}

#[test]
fn fig5c_dual_isomorphism_matches_brute_force() {
    let l = fixtures::fig5c();
    let brute = brute_isomorphic(l.poset(), l.dual().poset());
    assert_eq!(is_isomorphic(l.poset(), l.dual().poset()), brute);
    // searching all 9! relabelings finds an anti-automorphism
    assert!(brute);
}

#[test]
fn canonical_forms_separate_exactly_the_isomorphism_classes() {
    let ls: Vec<Lattice> = (1..=6)
        .flat_map(|n| enumerate_lattices(n).unwrap())
        .collect();
    for (i, a) in ls.iter().enumerate() {
        for b in &ls[i..] {
            let brute = brute_isomorphic(a.poset(), b.poset());
            assert_eq!(
                canonical_form(a.poset()) == canonical_form(b.poset()),
                brute
            );
        }
    }
}

#[test]
fn hexagon_interval() {
    let h = fixtures::hexagon();
    let le = order_matrix(h.poset());
    let iv = h.interval(0, 3).unwrap();
    let expected: Vec<usize> = (0..6).filter(|&x| le[0][x] && le[x][3]).collect();
    assert_eq!(iv.elements, expected);
    assert_eq!(iv.lattice.len(), 3);
}

#[test]
fn left_modular_elements_by_definition() {
    for (name, l) in fixtures::all() {
        let le = order_matrix(l.poset());
        let n = l.len();
        let brute: Vec<usize> = (0..n)
            .filter(|&a| {
                (0..n).all(|b| {
                    (0..n).all(|c| {
                        if b == c || !le[b][c] {
                            return true;
                        }
                        let lhs = meet(&le, join(&le, b, a).unwrap(), c).unwrap();
                        let rhs = join(&le, b, meet(&le, a, c).unwrap()).unwrap();
                        lhs == rhs
                    })
                })
            })
            .collect();
        assert_eq!(left_modular_elements(&l), brute, "{name}");
    }
    assert_eq!(left_modular_elements(&fixtures::hexagon()), vec![0, 5]);
    assert_eq!(left_modular_elements(&fixtures::m3()), vec![0, 1, 2, 3, 4]);
}

#[test]
fn join_semidistributivity_by_definition() {
    for n in 1..=7 {
        for l in enumerate_lattices(n).unwrap() {
            let le = order_matrix(l.poset());
            let n = l.len();
            let brute = (0..n).all(|a| {
                (0..n).all(|b| {
                    (0..n).all(|c| {
                        let ab = join(&le, a, b).unwrap();
                        ab != join(&le, a, c).unwrap()
                            || ab == join(&le, a, meet(&le, b, c).unwrap()).unwrap()
                    })
                })
            });
            assert_eq!(is_join_semidistributive(&l), brute);
        }
    }
}

#[test]
fn fig5c_top_cover_has_a_witness() {
    let l = fixtures::fig5c();
    let cover = (7, 8);
    let all = perspective_irreducibles(&l, cover).unwrap();
    assert!(!all.is_empty());
    for w in [
        perspectivity_witness_scan(&l, cover).unwrap(),
        perspectivity_witness_recursive(&l, cover).unwrap(),
    ] {
        assert!(is_perspective(&l, cover, w.cover()).unwrap());
        assert!(all.contains(&w));
    }
}

#[test]
fn ideal_lattice_matches_brute_force() {
    let p = fixtures::fig1a_poset();
    let il = ideal_lattice(&p, DEFAULT_IDEAL_CAP).unwrap();
    let le = order_matrix(&p);
    // down-closed subsets of a 4-element set
    let brute = (0u32..16)
        .filter(|&s| {
            (0..4).all(|x| s >> x & 1 == 0 || (0..4).all(|y| !le[y][x] || s >> y & 1 == 1))
        })
        .count();
    assert_eq!(il.lattice.len(), brute);
    assert_eq!(brute, 10);
}
