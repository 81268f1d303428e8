//! Error types shared by every module of the kernel.

use thiserror::Error;

/// Failures of the exact coefficient arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("precision error: {0}")]
    Precision(String),
    #[error("element is not invertible: {0}")]
    NotInvertible(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid unit: {0}")]
    InvalidUnit(String),
    #[error("composition requires a zero constant term in the inner series")]
    CompositionDomain,
    #[error("reversion requires f(0)=0 and an invertible linear coefficient")]
    Reversion,
    #[error("level must be at least 1, got {0}")]
    Level(u32),
    #[error("ring mismatch: {0}")]
    Mismatch(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Errors raised by the number-theoretic operations built on top of the arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("Lubin-Tate construction: {0}")]
    Construction(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("function is not stable: {0}")]
    NotStable(String),
    #[error("level {requested} exceeds available level {available}")]
    LevelExceeded { requested: u32, available: u32 },
    #[error("conductor error: {0}")]
    Conductor(String),
    #[error("pole: {0}")]
    Pole(String),
    #[error("divergent tail integral: {0}")]
    Divergence(String),
    #[error("pair is not admissible: {0}")]
    Admissibility(String),
    #[error("missing data: {0}")]
    MissingData(String),
    #[error("excluded character: {0}")]
    ExcludedCharacter(String),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

impl KernelError {
    /// True when the failure indicates broken math rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, KernelError::Consistency(_))
    }
}

pub type Result<T, E = KernelError> = std::result::Result<T, E>;
