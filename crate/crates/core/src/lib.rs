//! Simulation and analysis of PT-symmetric two-level dynamics.
//!
//! The crate evolves states under non-Hermitian (pseudo-Hermitian)
//! Hamiltonians, embeds the resulting non-unitary propagator into a unitary
//! on qubit ⊗ ancilla, and measures what that embedding costs: the
//! post-selection success probability and the eigenvalue spread of the
//! Hermitian generator that actually drives the dilated unitary.
//!
//! Module map:
//!
//! * [`linalg`]: small dense complex matrices, `expm`, eigensolvers, SVD.
//! * [`quantum`]: states, the PT Hamiltonian family, spectra, metric operator.
//! * [`brachistochrone`]: Hermitian minimal time and PT flip-time search.
//! * [`dilation`]: contraction dilation, Kraus maps, post-selection.
//! * [`analysis`]: effective generator, time-bound checks, efficiency report.
//! * [`harness`]: CLI, Monte Carlo runs and CSV sweeps (feature `cli`).

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod brachistochrone;
pub mod dilation;
mod error;
pub mod linalg;
pub mod quantum;
pub mod rng;

#[cfg(feature = "cli")]
pub mod harness;

pub use error::{Error, Result};
pub use linalg::{CMatrix, C64};
pub use quantum::{PTParams, SpectralData, StateVector};
