use alloc::string::String;

/// Failures raised by the algebra, lattice and strata routines.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("generators have mixed degrees {0} and {1}")]
    MixedDegrees(usize, usize),
    #[error("monomial degree {found} does not match polynomial degree {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("operation needs a polynomial of positive degree")]
    ZeroDegree,
    #[error("Milnor algebra does not stabilize by degree {0}; the curve has non-isolated singularities")]
    NonIsolatedSingularities(usize),
    #[error("degree cap {cap} is below the stable range (need at least {min})")]
    CapTooSmall { cap: usize, min: usize },
    #[error("line {0} is identically zero")]
    ZeroLine(usize),
    #[error("lines {0} and {1} proportional")]
    ProportionalLines(usize, usize),
    #[error("invalid parameters for {family}: {reason}")]
    InvalidParameters { family: String, reason: String },
    #[error("{0} has no realization over the rationals")]
    NotRationallyRealizable(String),
    #[error("arrangement does not satisfy incidence equation D({0},{1},{2})")]
    UnsatisfiedIncidence(usize, usize, usize),
    #[error("invariant violation: {0}")]
    InvariantViolation(String),
}

pub type Result<T> = core::result::Result<T, Error>;
