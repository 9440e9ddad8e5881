//! Error types shared across the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Input outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An epsilon-refinement sequence failed to converge. Carries the raw
    /// punched values so the caller can inspect the sequence.
    #[error("divergent epsilon sequence: {message} (values {values:?})")]
    Divergence { message: String, values: Vec<f64> },

    /// An integrand produced a non-finite sample at a quadrature node.
    #[error("non-finite integrand sample at r={r}, theta={theta}")]
    NonFinite { r: f64, theta: f64 },

    /// A series truncation order is too small for the requested evaluation.
    #[error("insufficient resolution: {0}")]
    InsufficientResolution(String),

    /// Invalid quadrature rule, grid or run configuration.
    #[error("invalid configuration: {0}")]
    Config(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }
}
