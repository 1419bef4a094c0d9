use thiserror::Error;

/// Errors raised by the set, energy, incidence and verification layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("zero divisor: {0}")]
    ZeroDivisor(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid family spec `{spec}`: {msg}")]
    InvalidSpec { spec: String, msg: String },

    #[error("input too small: {0}")]
    Undersized(String),
}

pub type Result<T> = std::result::Result<T, Error>;
