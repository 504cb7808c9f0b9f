use alloc::string::String;

/// Failure modes shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("elliptic modulus k = {0} outside [0, 1)")]
    Domain(f64),
    #[error("singular case: {0}")]
    Singular(&'static str),
    #[error("not admissible: {0}")]
    Admissibility(String),
    #[error("period too small: {0}")]
    PeriodTooSmall(String),
    #[error("degenerate orbit: {0}")]
    DegenerateOrbit(&'static str),
    #[error("degenerate phase: second derivative at the origin is {0:e}")]
    DegeneratePhase(f64),
    #[error("unsupported: {0}")]
    Unsupported(&'static str),
    #[error("insufficient resolution: {0}")]
    Resolution(String),
    #[error("grid mismatch: {0} vs {1} samples")]
    Shape(usize, usize),
    #[error("difference stencil around k = {0} leaves the admissible interval")]
    Stencil(f64),
    #[error("integration aborted at t = {t}: {reason}")]
    Abort { t: f64, reason: &'static str },
    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T> = core::result::Result<T, Error>;
