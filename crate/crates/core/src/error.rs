//! Error type shared across the library.

use crate::multiset::Multiset;
use thiserror::Error;

/// Errors reported by enumeration, counting and verification routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Exhaustive enumeration was refused because the ground set is too large.
    #[error("enumeration limit exceeded: size {size} is over the configured limit {limit}")]
    GuardExceeded { size: usize, limit: usize },

    /// A claimed multiset partition does not sum to the stated total.
    #[error("not a partition of {expected}: parts sum to {found}")]
    InvalidPartition { expected: Multiset, found: Multiset },

    /// A derivative signature (m_1, ..., m_k) violates sum(j * m_j) = k.
    #[error("invalid derivative signature: sum of j*m_j is {got}, expected {expected}")]
    InvalidSignature { got: u64, expected: u64 },

    /// A polynomial was evaluated at a point that does not cover all its variables.
    #[error("variable x{0} has no value in the evaluation point")]
    MissingVariable(u32),

    /// A cumulant value needed by a moment computation is absent.
    #[error("missing cumulant value for {0}")]
    MissingCumulant(Multiset),

    /// A moment value needed by a cumulant computation is absent.
    #[error("missing moment value for {0}")]
    MissingMoment(Multiset),

    /// A serialized document could not be decoded into its in-memory form.
    #[error("invalid document: {0}")]
    InvalidDocument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
