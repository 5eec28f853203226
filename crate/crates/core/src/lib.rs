//! Driven qubit coupled to a flat or structured bosonic reservoir.
//!
//! The crate builds three Markovian generators for a laser-driven two-level
//! system in the frame rotating at the laser frequency:
//!
//! * the fixed-dissipator master equation (FDME), whose dissipator is the one
//!   of the undriven qubit;
//! * the secular microscopic master equation, whose rates sample the bath
//!   spectral density at the carrier `omega_l` and the sidebands
//!   `omega_l +- nu`;
//! * the full (non-secular) microscopic master equation including the
//!   principal-value terms.
//!
//! On top of the generators sit steady-state extraction, time evolution and
//! the analyses comparing the families of reachable steady states.
//!
//! Units: `hbar = k_B = 1`, all frequencies angular. The crate is `no_std`
//! and needs only `alloc`.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod analysis;
pub mod dynamics;
pub mod error;
pub mod liouvillian;
pub mod quadrature;
pub mod qubit;
pub mod reservoir;

pub use nalgebra::Complex;

/// Complex scalar used throughout.
pub type C64 = Complex<f64>;

pub use error::{Error, Result};
pub use qubit::{dressed_basis, fidelity, BlochVector, ControlField, DressedBasis, QubitState};
pub use liouvillian::{GeneratorKind, Liouvillian};
pub use reservoir::{RateSet, SpectralDensity, Thermal};
pub use analysis::{FdDissipator, ReservoirModel, SteadyMethod, SweepGrid, SweepResult};
