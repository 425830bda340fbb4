//! Error taxonomy shared by every module in the crate.

use std::fmt;

use thiserror::Error;

/// Which group axiom a candidate Cayley table failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupCheck {
    Associativity,
    Identity,
    Inverse,
    LatinSquare,
}

impl fmt::Display for GroupCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            GroupCheck::Associativity => "associativity",
            GroupCheck::Identity => "identity",
            GroupCheck::Inverse => "inverse",
            GroupCheck::LatinSquare => "latin-square",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    /// A constructor argument is outside its domain (n = 0, oversized table, ...).
    #[error("invalid-parameter: {0}")]
    InvalidParameter(String),

    /// A candidate Cayley table violates a group axiom. `witness` pins down
    /// the offending row, element, or triple.
    #[error("not-a-group({check}): {witness}")]
    NotAGroup { check: GroupCheck, witness: String },

    /// An element index is out of range for the group it was used with.
    #[error("invalid-element: index {index} out of range for group of order {order}")]
    InvalidElement { index: usize, order: usize },

    /// The request exceeds a configured size cap.
    #[error("resource-limit: {0}")]
    ResourceLimit(String),

    /// A lookup key is absent (for lattices this signals an incomplete
    /// lattice and is treated as an internal invariant failure by callers
    /// that built the lattice themselves).
    #[error("not-found: {0}")]
    NotFound(String),

    /// Malformed caller-supplied data (degree files, mismatched arguments).
    #[error("invalid-input: {0}")]
    InvalidInput(String),

    /// Requested family parameters violate the family's hypotheses.
    #[error("invalid-spec: {0}")]
    InvalidSpec(String),

    /// A closed form that must evaluate to an integer did not.
    #[error("non-integral-result: {0}")]
    NonIntegralResult(String),

    /// Two routes that must agree disagreed, or a structural invariant broke.
    /// Always a bug, never a caller error.
    #[error("internal-inconsistency: {0}")]
    InternalInconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
