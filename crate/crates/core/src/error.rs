use thiserror::Error;

/// Errors produced by the exact-arithmetic engine.
///
/// `InternalInconsistency` is reserved for conditions that indicate a bug in
/// this crate (a division that must be exact leaving a remainder, a symbolic
/// identity failing to hold); it is never raised for bad user input.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid key: {0}")]
    InvalidKey(String),

    #[error("tally order violated: {0}")]
    TallyOrder(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("no rational scaling parameter for gamma = {gamma} at order {m}: {hint}")]
    NonRationalScaling { m: u32, gamma: String, hint: String },

    #[error("zero polynomial not allowed: {0}")]
    ZeroPolynomial(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
