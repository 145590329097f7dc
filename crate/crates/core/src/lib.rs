//! Thermal states of two tunnel-coupled double quantum dots and the
//! quantities built on them: quantum-correlation quantifiers, teleportation
//! fidelity metrics, and extractable-work thermodynamics.
//!
//! The crate is `no_std` (with `alloc`); all file and terminal concerns live
//! in the companion CLI crate.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod correlations;
pub mod error;
pub mod linalg;
pub mod model;
pub mod teleport;
pub mod thermo;

pub use error::{Error, Result};
pub use linalg::{c64, ComplexMatrix, C64};
pub use model::{DensityMatrix, ModelParams};
