use thiserror::Error;

use crate::strata::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("group order exceeds the configured cap of {cap} elements")]
    ResourceLimit { cap: usize },

    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),

    #[error("unknown case `{name}`; available: {}", available.join(", "))]
    NotFound {
        name: String,
        available: Vec<String>,
    },

    #[error("validation failed:\n{0}")]
    Validation(ValidationReport),

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
