//! Small named lattices used as counterexamples throughout the crate.
//!
//! The element numbering of each lattice is that of the matching file in the
//! repository's `fixtures/` directory.

use crate::format;
use crate::lattice::Lattice;
use crate::poset::FinitePoset;

pub const FIG1A_POSET: &str = include_str!("../../../fixtures/fig1a.poset");
pub const HEXAGON: &str = include_str!("../../../fixtures/fig5a.lat");
pub const M3: &str = include_str!("../../../fixtures/fig5b.lat");
pub const FIG5C: &str = include_str!("../../../fixtures/fig5c.lat");
pub const FIG6A: &str = include_str!("../../../fixtures/fig6a.lat");
pub const FIG6B: &str = include_str!("../../../fixtures/fig6b.lat");

fn load(src: &str) -> Lattice {
    format::parse(src)
        .and_then(|c| c.to_lattice())
        .expect("fixture is a lattice")
}

/// Poset on four points: 3 covers 0 and 1; 2 is isolated.
pub fn fig1a_poset() -> FinitePoset {
    format::parse(FIG1A_POSET)
        .and_then(|c| c.to_poset())
        .expect("fixture is a poset")
}

/// Hexagon: chains 0 < 1 < 3 < 5 and 0 < 2 < 4 < 5. Join-semidistributive,
/// neither join-extremal nor left-modular.
pub fn hexagon() -> Lattice {
    load(HEXAGON)
}

/// The diamond with atoms 1, 2, 3. Left-modular, neither join-extremal nor
/// join-semidistributive.
pub fn m3() -> Lattice {
    load(M3)
}

/// Join-extremal, neither left-modular nor join-semidistributive.
pub fn fig5c() -> Lattice {
    load(FIG5C)
}

/// Join-semidistributive, join-extremal and left-modular but not
/// semidistributive.
pub fn fig6a() -> Lattice {
    load(FIG6A)
}

/// Join-semidistributive and join-extremal but not left-modular.
pub fn fig6b() -> Lattice {
    load(FIG6B)
}

/// All named lattices with their short names.
pub fn all() -> Vec<(&'static str, Lattice)> {
    vec![
        ("fig5a", hexagon()),
        ("fig5b", m3()),
        ("fig5c", fig5c()),
        ("fig6a", fig6a()),
        ("fig6b", fig6b()),
    ]
}
