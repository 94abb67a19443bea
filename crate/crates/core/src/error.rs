//! Crate-wide error type.
//!
//! Budget exhaustion is deliberately a distinct variant from mathematical
//! failure modes so callers can tell "ran out of steam" apart from "the
//! input was bad".

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("modulus {0} is not an odd prime below 2^31")]
    BadModulus(u64),

    #[error("operands live in different rings ({left} vs {right})")]
    RingMismatch { left: String, right: String },

    #[error("expected {expected} exponents, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("parse error at byte {at}: {msg}")]
    Parse { at: usize, msg: String },

    #[error("polynomial is not homogeneous")]
    NotHomogeneous,

    #[error("matrix shape mismatch: {0}")]
    Shape(String),

    #[error("division by zero in F_p")]
    DivisionByZero,

    #[error("{what} budget exhausted (limit {limit})")]
    BudgetExceeded { what: &'static str, limit: u64 },

    #[error("matrix of {rows} x {cols} exceeds the configured dimension cap")]
    DimensionCap { rows: usize, cols: usize },

    #[error("unknown catalog variety `{0}`")]
    UnknownVariety(String),

    #[error("{0}")]
    Unsupported(String),

    #[error("index {index} out of range (len {len})")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
