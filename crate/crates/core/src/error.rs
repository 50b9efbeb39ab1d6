use thiserror::Error;

/// Errors raised by space construction and by the geometric operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum NormError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("{0} must be nonzero")]
    ZeroVector(&'static str),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("unsupported: {0}")]
    Capability(String),

    #[error("degenerate geometry: {0}")]
    Geometry(String),
}

impl NormError {
    /// Errors caused by the caller's data rather than by a missing capability.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            NormError::DimensionMismatch { .. }
                | NormError::ZeroVector(_)
                | NormError::InvalidInput(_)
                | NormError::Geometry(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, NormError>;
