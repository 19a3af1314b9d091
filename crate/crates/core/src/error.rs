use thiserror::Error;

use crate::exactnum::Basis;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ShellError {
    #[error("basis mismatch: {0:?} vs {1:?}")]
    BasisMismatch(Basis, Basis),
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse quadratic value {0:?}")]
    Parse(String),
    #[error("polygon needs at least 3 vertices, got {0}")]
    DegeneratePolygon(usize),
    #[error("window dimension does not match the displacement")]
    DimensionMismatch,
    #[error("expected {expected} lattice coefficients, got {got}")]
    CoefficientCount { expected: usize, got: usize },
    #[error("operation not supported for {0}")]
    Unsupported(&'static str),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("value is not an element of Z[sqrt2]: {0}")]
    NotIntegral(String),
    #[error("approximant order {0} out of range 1..=8")]
    OrderOutOfRange(u32),
    #[error("approximant window is degenerate: {0}")]
    Degenerate(String),
    #[error("vertex {0} is not flippable")]
    NotFlippable(usize),
    #[error("cutoff {r} must be below half the period {half_period}")]
    CutoffTooLarge { r: f64, half_period: f64 },
    #[error("inconsistent tiling: {0}")]
    Inconsistent(String),
    #[error("snapshot: {0}")]
    Snapshot(String),
}

pub type Result<T> = std::result::Result<T, ShellError>;
