//! Exact combinatorics for systems of distinct representatives (SDRs).
//!
//! A family `F = (A_1, ..., A_n)` of finite sets has an SDR when one can pick
//! pairwise distinct `x_i ∈ A_i`. This crate counts SDRs exactly, decides the
//! `(t, n)`-family and valued-family conditions, classifies exclusive and
//! saturated element pairs, and runs exhaustive isomorph-free searches for the
//! families that minimise the SDR count under those conditions.
//!
//! Modules:
//!
//! - [`family`]: set families, structural predicates, the two extremal
//!   constructions, the exchange transform, tight sets and canonical forms.
//! - [`counting`]: the subset dynamic program for `N(F)`, an enumeration
//!   oracle, and a matching-based existence test.
//! - [`closed`]: the closed-form SDR counts of the extremal families.
//! - [`pairs`]: exclusive / saturated pair classification and descent steps.
//! - [`search`]: orderly generation of valued families, the minimum search
//!   and the randomised descent probe.

pub mod bitset;
pub mod closed;
pub mod counting;
mod error;
pub mod exec;
pub mod family;
pub mod pairs;
pub mod search;

pub use bitset::{ElementSet, IndexSet};
pub use closed::{chang_u, elementary_symmetric, valued_u, SymmetricTable};
pub use counting::{count_sdr, enumerate_sdrs, has_sdr, SdrList};
pub use error::{Error, Result};
pub use exec::Execution;
pub use family::{
    canonical_form, construct_bar, construct_star, equivalence_classes, parse_family,
    serialize_family, tight_sets, Exchange, FamilyFile, GroundMap, SetFamily, TightSet, Valuation,
};
pub use pairs::{
    census, census_with, classify_pair, descent_step, DescentStep, PairCensus, PairReport,
};
pub use search::{
    descent_probe, descent_probe_with, enumerate_families, verify_extremal, verify_extremal_with,
    DescentReport, SearchBudget, SearchMode, SearchReport, SearchSpec, SearchStatus, ShardProgress,
};

/// Arbitrary-precision SDR counts.
pub type BigCount = num_bigint::BigUint;
