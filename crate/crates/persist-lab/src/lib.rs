//! Std companion of `persist-core`: the `persist` command-line driver,
//! CSV/JSON output with run manifests, rayon-parallel sweeps and Monte Carlo
//! replicas, and the verification suites behind `persist verify`.

#![warn(missing_docs)]

pub mod commands;
pub mod manifest;
pub mod output;
pub mod verify;

use std::fmt;

/// Failure of a subcommand, split by exit code.
#[derive(Debug)]
pub enum LabError {
    /// Bad flags or parameters outside a domain (exit 2).
    Usage(String),
    /// Numerical, IO or acceptance failure (exit 1).
    Compute(anyhow::Error),
}

impl LabError {
    /// Process exit code.
    pub fn exit_code(&self) -> i32 {
        match self {
            LabError::Usage(_) => 2,
            LabError::Compute(_) => 1,
        }
    }
}

impl fmt::Display for LabError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LabError::Usage(s) => write!(f, "usage error: {s}"),
            LabError::Compute(e) => write!(f, "{e:#}"),
        }
    }
}

impl std::error::Error for LabError {}

impl From<persist_core::Error> for LabError {
    fn from(e: persist_core::Error) -> Self {
        use persist_core::Error as E;
        match e {
            E::Domain(_) | E::Config(_) => LabError::Usage(e.to_string()),
            other => LabError::Compute(other.into()),
        }
    }
}

impl From<anyhow::Error> for LabError {
    fn from(e: anyhow::Error) -> Self {
        LabError::Compute(e)
    }
}

impl From<std::io::Error> for LabError {
    fn from(e: std::io::Error) -> Self {
        LabError::Compute(e.into())
    }
}

/// Result alias for subcommands.
pub type LabResult<T> = Result<T, LabError>;

/// Shorthand for a usage error.
pub fn usage<T>(msg: impl Into<String>) -> LabResult<T> {
    Err(LabError::Usage(msg.into()))
}
