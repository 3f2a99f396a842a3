//! Numerical core for dimerized-chain electronic structure and the dynamics
//! of Rabi wave packets on `n` coupled qubit chains driven by a single
//! quantized field mode.
//!
//! The crate is `no_std` and only needs `alloc`. Everything here is a pure
//! function of immutable inputs; IO, configuration files, spectra and the
//! command line live in the companion `rabiwave-cli` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod error;
pub mod hypercomplex;
pub mod numeric;
pub mod quasiparticle;
pub mod rabi_dynamics;
pub mod ssh_band;

pub use error::{Error, Result};
pub use hypercomplex::{CirculantMatrix, HyperNumber, ProjectorBasis};

/// Complex scalar used throughout (64 bits per part).
pub type C64 = num_complex::Complex64;
