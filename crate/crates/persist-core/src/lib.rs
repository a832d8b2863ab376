//! Numerics for the persistence probability of the zero-temperature Glauber
//! Ising chain and the K_θ kernel family.
//!
//! Four routes compute the same distribution and are meant to be checked
//! against each other:
//!
//! * [`fredholm`]: Nyström discretization of Fredholm determinants, spectra
//!   and resolvent endpoint values.
//! * [`resolvent_ode`]: the third-order Bonnet equation for the logarithmic
//!   derivative `H` of the determinant, integrated from a series start.
//! * [`painleve`]: residual evaluators and algebraic maps of the Painlevé VI
//!   family the ODE belongs to (sigma form, Okamoto Hamiltonians, quadratic
//!   folding, Chazy form).
//! * [`asymptotics`]: closed-form large-interval constants.
//!
//! [`glauber_mc`] is an independent Monte Carlo sampler of the spin chain,
//! and [`persistence`] is the user-facing facade.
//!
//! The crate is `no_std` (with `alloc`). IO, CLI and parallel drivers live in
//! the `persist-lab` companion crate.

#![no_std]
#![warn(missing_docs)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod asymptotics;
pub mod error;
pub mod fredholm;
pub mod glauber_mc;
pub mod jet;
pub mod kernels;
pub mod ode;
pub mod painleve;
pub mod persistence;
pub mod quad;
pub mod resolvent_ode;
pub mod specfun;

pub(crate) mod fmath;

pub use error::{Error, Result};

/// Version of this crate, recorded in run manifests.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
