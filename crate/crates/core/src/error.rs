//! Error type shared by every module of the crate.
//!
//! Structural errors (bad multiplication tables, index violations) name the
//! offending indices so a failing ring description can be repaired without
//! re-deriving the check by hand.  All indices in error messages are 1-based,
//! matching the public API.

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// A ring description is structurally malformed (wrong table shape,
    /// unit index out of range, empty basis, ...).
    #[error("invalid ring description: {0}")]
    RingSpecInvalid(String),

    /// The multiplication table is not commutative: v_i * v_j != v_j * v_i.
    #[error("commutativity violation in multiplication table at basis pair (v_{i}, v_{j})")]
    CommutativityViolation { i: usize, j: usize },

    /// The multiplication table is not associative at the named triple.
    #[error("associativity violation in multiplication table at basis triple (v_{i}, v_{j}, v_{l})")]
    AssociativityViolation { i: usize, j: usize, l: usize },

    /// The designated unit basis element does not act as 1.
    #[error("unit violation in multiplication table: unit * v_{j} != v_{j}")]
    UnitViolation { j: usize },

    /// Two operands live over different rings or different moduli.
    #[error("context mismatch: {0}")]
    ContextMismatch(String),

    /// A reduction was requested to a modulus that does not divide the
    /// current one.
    #[error("incompatible modulus: {0}")]
    IncompatibleModulus(String),

    /// Matrix dimension outside the supported range 2..=6.
    #[error("matrix dimension {n} outside supported range 2..=6")]
    DimensionTooLarge { n: usize },

    /// Mismatched vector/matrix sizes.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// A matrix expected to be congruent to the identity at some depth
    /// is not.
    #[error("matrix is not unipotent at the required level: {0}")]
    NotUnipotent(String),

    /// A matrix violates the determinant-one condition of its context.
    #[error("matrix is not special linear in its context: {0}")]
    NotSpecialLinear(String),

    /// A basis or matrix-position index is out of its declared range.
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    /// A hypothesis of the operation is violated; the message names it.
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    /// The excluded small case of the p-th-power map.
    #[error("excluded case (Prop 4.5): the p-th-power map on filtration quotients is not an isomorphism for p = 2, r = 1")]
    ExcludedCase,

    /// An enumeration would exceed the configured cap.
    #[error("enumeration too large: group order {order} exceeds cap {cap}")]
    TooLarge { order: String, cap: u64 },

    /// A truncated polynomial ring is too small for the requested degrees.
    #[error("truncation too small: computation needs degree < {required} but the ring truncates at degree {bound}")]
    TruncationTooSmall { required: usize, bound: usize },

    /// Fixed-width integer arithmetic overflowed; the computation cannot be
    /// represented at this scale.
    #[error("integer overflow: {0}")]
    Overflow(String),

    /// I/O failure while loading a ring description file.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    /// Malformed JSON in a ring description or element record.
    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
