//! Exact-diagonalization toolkit for the anisotropic central spin model.
//!
//! A spin-1/2 central spin couples to a bath of `N` spin-1/2 particles that
//! is treated as a collective spin `I = N/2`. The crate builds the model in
//! the maximal-spin Dicke sector, maps it onto the anisotropic
//! Lipkin-Meshkov-Glick (LMG) Hamiltonian, and measures spin squeezing and
//! the ground-state quantum Fisher information (QFI).
//!
//! The crate is `no_std` and only needs `alloc`; file formats, sweeps and
//! the command line live in the `cspin` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod criticality;
pub mod dynamics;
mod error;
pub mod linalg;
pub mod model;
pub mod spectrum;
pub mod spinspace;
pub mod squeezing;
pub mod swmap;

pub use error::{Error, Result};
pub use linalg::{CMatrix, SymTridiagonal, C64};
pub use model::{DerivedCouplings, ModelKind, ModelParams};
pub use spinspace::{Basis, CentralSpinBasis, DickeBasis, HermitianOperator, StateVector};
