use thiserror::Error;

/// Failures surfaced to callers. Identity-check failures are not errors;
/// they are report entries.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("unsupported dimension {0} (expected 1..=8)")]
    BadDimension(usize),
    #[error("parse error at byte {pos}: {message}")]
    Parse { pos: usize, message: String },
    #[error("axis {axis} out of range for n = {n}")]
    AxisOutOfRange { axis: usize, n: usize },
    #[error("expected a form of degree {expected}, got {found}")]
    WrongDegree { expected: usize, found: String },
    #[error("derivation images have mixed degrees")]
    NonUniformDerivation,
    #[error("input is not in the required subspace: {0}")]
    NotInSubspace(String),
    #[error("target is not closed; d(target) = {0}")]
    NotClosed(String),
    #[error("unknown {kind}: {name}")]
    Unknown { kind: &'static str, name: String },
    #[error("preset error: {0}")]
    Preset(String),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
