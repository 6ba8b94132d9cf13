use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TspnError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("unsupported dimension {0}")]
    UnsupportedDimension(usize),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("unit radii required")]
    UnequalRadii,

    #[error("no feasible tree: group {0} is unreachable")]
    NoFeasibleTree(usize),

    #[error("instance exceeds solver limits: {0}")]
    LimitsExceeded(String),

    #[error("graph is disconnected")]
    Disconnected,
}

pub type Result<T> = std::result::Result<T, TspnError>;

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(TspnError::DimensionMismatch { expected, found })
    }
}
