//! Shared error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Operator or state dimensions do not line up.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// A density matrix failed its trace/hermiticity/positivity checks.
    #[error("invalid quantum state: {0}")]
    InvalidState(String),

    /// A spec or configuration value violates an invariant.
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// The integrator could not complete (step underflow, invariant drift).
    #[error("integration failure: {0}")]
    Integration(String),
}

pub type Result<T> = std::result::Result<T, Error>;
