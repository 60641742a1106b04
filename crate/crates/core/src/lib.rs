//! Energy cost of extracting entanglement from ground states of 1D lattice
//! models.
//!
//! The crate samples energy/entanglement trade-offs with matrix product
//! states, extracts their Pareto fronts and entanglement temperatures
//! `T = ΔE/ΔS`, and checks them against closed-form and small exact
//! reference results.
//!
//! * [`linalg`]: dense complex kernels (SVD, Hermitian eigensolvers and exponentials).
//! * [`mps`]: matrix product states with Schmidt spectra, truncation and energies.
//! * [`models`]: the toy Bell-pair model, Heisenberg and Ising chains, staggered fermions.
//! * [`exact`]: exact diagonalization for small chains.
//! * [`tradeoff`]: imaginary-time evolution, sharpening, sampling and Pareto fronts.
//! * [`oneshot`]: majorization and rank-constrained energy minimization.
//! * [`oracles`]: reference results the numerics are checked against.
//! * [`cli`]: the `enttemp` command-line front end.

// `!(x > 0.0)` style guards deliberately reject NaN along with the bad range.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod exact;
pub mod linalg;
pub mod models;
pub mod mps;
pub mod oneshot;
pub mod oracles;
pub mod tradeoff;

pub use error::{Error, Result};
pub use linalg::{DenseMatrix, C64};
pub use models::{FermionChainSpec, LocalHamiltonian, ModelSpec, Term};
pub use mps::{MatrixProductState, SchmidtSpectrum};
