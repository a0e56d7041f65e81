use thiserror::Error;

use crate::report::ValidationReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("parity violation: {0}")]
    Parity(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("capacity exceeded: {what} is {value}, limit is {limit}")]
    Capacity {
        what: &'static str,
        value: usize,
        limit: usize,
    },

    #[error("invalid quadratic refinement: {0}")]
    InvalidForm(String),

    #[error("invalid twist curve: {0}")]
    InvalidTwist(String),

    #[error("validation failed:\n{0}")]
    Validation(ValidationReport),
}

pub(crate) fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::Dimension { expected, found })
    }
}
