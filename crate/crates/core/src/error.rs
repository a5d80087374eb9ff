use thiserror::Error;

/// Errors raised by the exact and numerical layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,

    #[error("DivisionError: {dividend} is not divisible by {divisor}")]
    Division { dividend: String, divisor: String },

    #[error("DegenerateError: det(tS - S^T) vanishes identically")]
    Degenerate,

    #[error("NotFiberedError: |det S| = {det}, expected 1")]
    NotFibered { det: String },

    #[error("invalid plumbing tree: {0}")]
    InvalidTree(String),

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("ConvergenceError: root finder did not converge for {poly}")]
    Convergence { poly: String },

    #[error("MatchError: {0}")]
    Match(String),

    #[error("CalibrationError: routes disagree for Gamma({m},{n})")]
    Calibration { m: usize, n: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable error name used in machine-readable payloads.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::ZeroPolynomial => "ZeroPolynomial",
            Error::Division { .. } => "DivisionError",
            Error::Degenerate => "DegenerateError",
            Error::NotFibered { .. } => "NotFiberedError",
            Error::InvalidTree(_) => "InvalidTree",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::Convergence { .. } => "ConvergenceError",
            Error::Match(_) => "MatchError",
            Error::Calibration { .. } => "CalibrationError",
            Error::InvalidArgument(_) => "InvalidArgument",
            Error::Parse(_) => "ParseError",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
