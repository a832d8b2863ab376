//! Error type shared by all modules.

use alloc::string::String;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An argument lies outside the domain of the function.
    #[error("domain error: {0}")]
    Domain(String),
    /// A floating-point evaluation produced a non-finite or unusable value.
    #[error("numeric error: {0}")]
    Numeric(String),
    /// The discretized operator is too close to singular to be trusted.
    #[error("ill-conditioned: 1 - xi*lambda_0 = {gap:e} at {context}")]
    IllConditioned {
        /// Smallest eigenvalue of `I - xi K` on the grid.
        gap: f64,
        /// Where it happened.
        context: String,
    },
    /// The ODE integrator failed (step underflow, residual blow-up).
    #[error("integration failure at x = {x}: {reason}")]
    Integration {
        /// Abscissa of the failure.
        x: f64,
        /// Description.
        reason: String,
    },
    /// A square-root or quadratic branch could not be continued.
    #[error("branch error at {at}: {reason}")]
    Branch {
        /// Abscissa (x, s or t depending on the map).
        at: f64,
        /// Description.
        reason: String,
    },
    /// Invalid simulation or run configuration.
    #[error("configuration error: {0}")]
    Config(String),
    /// A statistical fit could not be performed.
    #[error("estimation error: {0}")]
    Estimation(String),
}

/// Crate result alias.
pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn numeric(msg: impl Into<String>) -> Error {
    Error::Numeric(msg.into())
}
