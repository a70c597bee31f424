use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeomError {
    #[error("dimension mismatch: expected {expected} coordinates, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("sphere dimension must be at least 2, got {0}")]
    DimensionTooSmall(usize),
    #[error("zero or non-finite vector cannot be normalized")]
    ZeroVector,
    #[error("point set is empty")]
    Empty,
    #[error("radius {0} outside (0, pi/2]")]
    InvalidRadius(f64),
    #[error("generator set is not wide: diameter {diameter} exceeds radius {radius}")]
    NotWide { diameter: f64, radius: f64 },
    #[error("generator set contains an antipodal pair ({0}, {1})")]
    Antipodal(usize, usize),
    #[error("points are not contained in an open hemisphere")]
    NotInOpenHemisphere,
    #[error("invalid input: {0}")]
    Input(String),
    #[error("malformed boundary: {0}")]
    Structure(String),
    #[error("numerical degeneracy: {0}")]
    Degenerate(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("verification failure: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, GeomError>;
