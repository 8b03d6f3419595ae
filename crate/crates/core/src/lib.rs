//! Symbolic expansion of mixed higher-order partial derivatives under
//! arbitrary identification of the independent variables.
//!
//! The distinct-variable expansions of d^n/dx1..dxn f(y) and
//! d^n/dx1..dxn (uv) have all coefficients equal to 1, with one term per set
//! partition (respectively per subset) of {1..n}. Identifying variables
//! merges terms and nothing else: every coefficient of the collected
//! expansion is the number of distinct-variable terms that became
//! indistinguishable. This crate computes those expansions and coefficients
//! exactly:
//!
//! * [`multiset`], [`set_partition`], [`multiset_partition`], [`collapse`] —
//!   the underlying combinatorics: Bell numbers, partition enumeration, and
//!   the closed-form collapsing-partition multiplicity with its brute-force
//!   counterpart;
//! * [`expansion`], [`product`] — collected expansions of compositions and
//!   products, the classical single-variable coefficients, and incremental
//!   differentiation of an existing expansion;
//! * [`oracle`] — independent verification on exact-rational polynomials;
//! * [`cumulants`] — the same partition calculus applied to raw moments and
//!   joint cumulants;
//! * [`render`], [`json`] — deterministic text/LaTeX/JSON output.

pub mod collapse;
pub mod cumulants;
pub mod error;
pub mod expansion;
pub mod json;
pub mod multiset;
pub mod multiset_partition;
pub mod oracle;
pub mod poly;
pub mod product;
pub mod render;
pub mod set_partition;

/// Default cap on exhaustive partition enumeration: B_15 is around 1.4e9,
/// the practical ceiling for walking every set partition.
pub const DEFAULT_ENUMERATION_LIMIT: usize = 15;

pub use collapse::{collapse, multiplicity, multiplicity_bruteforce, CollapseMap};
pub use cumulants::{
    collapse_cumulant_identity_check, cumulants_from_moments, moment_from_cumulants,
    CumulantAssignment, MomentAssignment,
};
pub use error::{Error, Result};
pub use expansion::{
    differentiate_expansion, expand_composition, expand_exponential, faa_di_bruno_coefficient,
    CompositionExpansion, CompositionTerm,
};
pub use multiset::{multiset_factorial, Multiset, VarId};
pub use multiset_partition::{multiset_partitions, MultisetPartition};
pub use product::{expand_product, ProductExpansion, ProductTerm};
pub use set_partition::{bell, set_partitions, SetPartition};
