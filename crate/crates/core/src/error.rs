use thiserror::Error;

/// Errors produced while building or evaluating Chebyshev tables.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("fit failure at node {node} (x = {x}): {reason}")]
    FitFailure {
        node: usize,
        x: String,
        reason: String,
    },

    #[error("no minimum term found for z = {z} within {n_scan} Stirling terms")]
    ScanExhausted { z: f64, n_scan: usize },

    #[error("capacity exceeded: {what}; at most {max_digits} digits are supported")]
    Capacity { what: String, max_digits: usize },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
