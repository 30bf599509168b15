//! Dense complex linear algebra for small matrices, the matrix geometric
//! mean, conditional expectations onto the commutant of a unitary, and
//! numerical checkers for a family of operator-norm inequalities, including
//! a constructive counterexample pipeline.
//!
//! The crate is `no_std` (with `alloc`); all IO, serialization beyond the
//! optional `serde` derives, and the search harness live in the companion
//! `schwarz-lab` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod conjectures;
pub mod counterexample;
mod eig;
pub mod error;
pub mod expectation;
pub mod hermitian;
pub mod matrix;
pub mod means;
pub mod normal;
pub mod norms;
pub mod random;
pub mod unitary;

pub use conjectures::{CheckReport, ConjectureId, DEFAULT_VIOLATION_TOL};
pub use counterexample::{
    construct_conj1_counterexample, reference_counterexample, CounterexampleConstruction,
    ReferenceFacts,
};
pub use error::{Error, Result};
pub use expectation::{expect_u, expect_u_power_avg, SpectralDecomposition};
pub use hermitian::{HermitianEig, HermitianMatrix, PositiveDefiniteMatrix};
pub use matrix::ComplexMatrix;
pub use means::{gmean, gmean_2x2};
pub use normal::NormalMatrix;
pub use unitary::UnitaryMatrix;

pub use num_complex::Complex64;
