//! Error type shared by all modules.

use thiserror::Error;

#[derive(Error, Debug)]
pub enum Error {
    #[error("invalid triangle group signature: {0}")]
    InvalidTriple(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("field mismatch: operands belong to different fields")]
    FieldMismatch,

    #[error("unsupported prime {p}: {reason}")]
    UnsupportedPrime { p: u64, reason: String },

    #[error("denominator of a coordinate is divisible by {p}")]
    DenominatorCollision { p: u64 },

    #[error("enumeration cap {cap} exceeded")]
    CapExceeded { cap: usize },

    #[error("search budget of {budget} attempts exhausted")]
    BudgetExhausted { budget: u64 },

    #[error("ambiguous or unrecognized ideal label: {0}")]
    BadLabel(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}
