//! Finite posets and lattices: irreducibles, perspectivity, semidistributivity,
//! left modularity, extremality and EL-shellability, plus an enumerator that
//! builds a classified atlas of small lattices.

pub mod atlas;
pub mod bitset;
pub mod canonical;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod ideals;
pub mod irreducibles;
pub mod lattice;
pub mod poset;
pub mod properties;
pub mod shellability;

/// Elements are numbered `0..n`.
pub type ElementId = usize;

pub use bitset::BitSet;
pub use canonical::{canonical_form, canonical_labeling, is_isomorphic, CanonicalForm};
pub use error::{Error, Result};
pub use ideals::{ideal_lattice, IdealLattice, DEFAULT_IDEAL_CAP};
pub use irreducibles::{
    canonical_join_rep, gamma, gamma_map, join_irreducibles, kappa_by_join, kappa_data, length,
    maximal_chains, meet_irreducibles, perspectivity_witness_recursive, perspectivity_witness_scan,
    JoinIrreducible, KappaData, MaximalChain, MeetIrreducible,
};
pub use lattice::{Interval, Lattice};
pub use poset::FinitePoset;
pub use properties::{
    classify, ClassificationRecord, ClassifyOptions, Verdict, Violation, ViolationKind,
};
pub use shellability::{
    el_search, is_el_labeling, lm_labeling, EdgeLabeling, ElFailure, ElReason, ElVerdict, LexMode,
    SearchOutcome, DEFAULT_EL_BUDGET,
};
