use thiserror::Error;

use crate::ElementId;

#[derive(Debug, Error)]
pub enum Error {
    #[error("element {element} out of range for a structure with {n} elements")]
    OutOfRange { element: ElementId, n: usize },

    #[error("pair ({0}, {0}) relates an element to itself")]
    SelfLoop(ElementId),

    #[error("duplicate cover pair ({0}, {1})")]
    DuplicatePair(ElementId, ElementId),

    #[error("cover relation has a cycle: {0:?}")]
    Cycle(Vec<ElementId>),

    #[error("cover pair ({}, {}) is implied by the longer path {path:?}", pair.0, pair.1)]
    NotReduced {
        pair: (ElementId, ElementId),
        path: Vec<ElementId>,
    },

    #[error(
        "elements {a} and {b} have no unique join; minimal upper bounds {minimal_upper_bounds:?}"
    )]
    NoUniqueJoin {
        a: ElementId,
        b: ElementId,
        minimal_upper_bounds: Vec<ElementId>,
    },

    #[error(
        "elements {a} and {b} have no unique meet; maximal lower bounds {maximal_lower_bounds:?}"
    )]
    NoUniqueMeet {
        a: ElementId,
        b: ElementId,
        maximal_lower_bounds: Vec<ElementId>,
    },

    #[error("poset has no bottom element")]
    NoBottom,

    #[error("poset has no top element")]
    NoTop,

    #[error("elements {0} and {1} are not comparable as a <= b")]
    NotComparable(ElementId, ElementId),

    #[error("ideal lattice exceeds the cap of {cap} elements")]
    CapExceeded { cap: usize },

    #[error("element {0} is not join-irreducible")]
    NotJoinIrreducible(ElementId),

    #[error("({0}, {1}) is not a cover pair")]
    NotACover(ElementId, ElementId),

    #[error("no perspective join-irreducible found for cover ({}, {}): {diagnostics}", cover.0, cover.1)]
    WitnessNotFound {
        cover: (ElementId, ElementId),
        diagnostics: String,
    },

    #[error("chain {0:?} is not a maximal chain")]
    NotAMaximalChain(Vec<ElementId>),

    #[error("chain element {0} is not left-modular")]
    ChainNotLeftModular(ElementId),

    #[error("chain has length {found}, lattice length is {expected}")]
    ChainNotMaximumLength { found: usize, expected: usize },

    #[error("labeling has no label for cover ({0}, {1})")]
    PartialLabeling(ElementId, ElementId),

    #[error("lattice enumeration requested for n = {n}; supported bound is {max}")]
    BoundExceeded { n: usize, max: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
