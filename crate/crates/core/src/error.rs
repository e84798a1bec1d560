use thiserror::Error;

/// Errors raised by depth computations and the analysis routines built on them.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum DepthError {
    #[error("coordinate {index} is not finite ({value})")]
    NonFinite { index: usize, value: f64 },

    #[error("points must have at least one coordinate")]
    EmptyPoint,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("operation requires planar input, got dimension {0}")]
    NotPlanar(usize),

    #[error("influence region is undefined for coincident points")]
    CoincidentPoints,

    #[error("beta must be >= 1 (or infinite), got {0}")]
    InvalidBeta(f64),

    #[error("need at least {required} points, got {found}")]
    TooFewPoints { required: usize, found: usize },

    #[error("every pair of data points coincides; beta-skeleton depth is undefined")]
    AllPairsDegenerate,

    #[error("epsilon must lie in (0, 1), got {0}")]
    InvalidEpsilon(f64),

    #[error("delta must lie in (0, 1), got {0}")]
    InvalidDelta(f64),

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("design matrix is rank deficient (predictor has too few distinct values for degree {degree})")]
    RankDeficient { degree: usize },

    #[error("polynomial degree must be >= 1")]
    InvalidDegree,

    #[error("comparison matrix entry ({row}, {col}) is {value}, expected 0 or 1")]
    InvalidMatrixEntry { row: usize, col: usize, value: u8 },

    #[error("comparison matrix must be reflexive; diagonal entry {0} is 0")]
    NonReflexive(usize),

    #[error("invalid bounding box: {0}")]
    InvalidBoundingBox(String),
}

pub type Result<T, E = DepthError> = std::result::Result<T, E>;
