use num_bigint::BigInt;
use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation (zero where a
    /// unit is required, a non-prime modulus, and so on).
    #[error("domain error: {0}")]
    Domain(String),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("matrix is singular")]
    Singular,

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// Malformed textual input. `line` and `column` are 1-based.
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("not a connected non-complete strongly regular graph: {0}")]
    NotStronglyRegular(String),

    /// The adjacency spectrum is irrational, which for a strongly regular
    /// graph means a conference graph on `vertices` vertices.
    #[error("non-integral spectrum (conference graph on {vertices} vertices)")]
    NonIntegralSpectrum { vertices: BigInt },

    #[error("inconsistent spectral parameters: {0}")]
    Inconsistent(String),

    #[error("no closed form available: {0}")]
    NoClosedForm(String),

    #[error("parameters are not feasible: {0}")]
    Infeasible(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
