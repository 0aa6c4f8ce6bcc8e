//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// An argument left the mathematical domain of an operation
    /// (negative modulus argument, evaluation point outside the open disk, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A configuration value failed validation before any numerics ran.
    #[error("invalid spec: {0}")]
    InvalidSpec(String),

    /// An integrand produced a non-finite value; the message names the node.
    #[error("non-finite integrand value at {0}")]
    NonFinite(String),
}

pub type Result<T> = std::result::Result<T, Error>;
