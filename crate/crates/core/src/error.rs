use thiserror::Error;

use crate::lie::Violation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("matrix is not invertible: {0}")]
    NotInvertible(String),

    #[error("degree {degree} out of range 0..={max}")]
    DegreeOutOfRange { degree: usize, max: usize },

    #[error("invalid Lie algebra: {0}")]
    InvalidAlgebra(Violation),

    #[error("Lie algebra is not nilpotent: the nilpotent homogeneous model requires a nilpotent kernel algebra")]
    NotNilpotent,

    #[error("matrix is not in GL(n,Z): |det| = {0}, expected 1")]
    NotToral(String),

    #[error("fixed point is not leafwise simple: {0}")]
    NotSimple(String),

    #[error("independent computation paths disagree: {0}")]
    Inconsistent(String),

    #[error("fixed-point enumeration of {count} points exceeds the cap of {cap}")]
    EnumerationOverflow { count: String, cap: u64 },

    #[error("pairing needs the integral of f against the volume form because the smooth part is nonzero")]
    MissingIntegral,

    #[error("pairing refused: {0} symbolic orbital-integral term(s) present")]
    SymbolicOrbitTerms(usize),

    #[error("exact point {exact} and inexact point {approx} coincide within tolerance; pass an explicit tolerance to merge them")]
    AmbiguousMerge { exact: String, approx: String },

    #[error("incompatible group-point variants: {0}")]
    IncompatibleGroups(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Parse/format failures, as opposed to domain failures.
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse(_))
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
