use thiserror::Error;

use crate::exactnum::ExactError;

/// Errors surfaced by the library. `Precondition` marks bad input rather than
/// an internal failure.
#[derive(Debug, Error)]
pub enum InertiaError {
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("group of order {order} exceeds the supported maximum {max}")]
    GroupTooLarge { order: usize, max: usize },
    #[error("character table computation did not converge; retry with another seed")]
    TableDidNotConverge,
    #[error("internal error: {0}")]
    Internal(String),
}

impl InertiaError {
    pub fn precondition(msg: impl Into<String>) -> Self {
        InertiaError::Precondition(msg.into())
    }

    pub fn is_precondition(&self) -> bool {
        matches!(self, InertiaError::Precondition(_) | InertiaError::GroupTooLarge { .. })
    }
}

pub type Result<T> = std::result::Result<T, InertiaError>;
