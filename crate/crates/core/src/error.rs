use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("series must hold at least one coefficient")]
    EmptySeries,
    #[error("non-finite value at index {index}")]
    NonFinite { index: usize },
    #[error("expected constant term {expected}, found {found}")]
    ConstantTerm { expected: f64, found: Complex64 },
    #[error("radius {0} is outside (0, 1)")]
    Radius(f64),
    #[error("angle {0} is outside [-pi, pi]")]
    Angle(f64),
    #[error("grid size {0} must be even and at least 4")]
    Grid(usize),
    #[error("invalid class parameters: {0}")]
    Params(String),
    #[error("grid mismatch: {left} points vs {right} points")]
    GridMismatch { left: usize, right: usize },
    #[error("function vanishes on the circle near theta = {theta}")]
    ZeroOnGrid { theta: f64 },
    #[error("series division by a series with zero constant term")]
    SingularDivision,
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
