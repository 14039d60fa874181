//! Numerical operator theory on the symmetrized polydisc.
//!
//! The closed symmetrized polydisc `Γₙ` is the image of the closed unit
//! polydisc under the symmetrization map `πₙ(z) = (e₁(z), …, e_{n−1}(z), z₁⋯zₙ)`
//! built from the elementary symmetric polynomials. This crate makes that
//! geometry computable:
//!
//! * [`numerics`] — dense complex linear algebra kernels (Hermitian
//!   eigenproblems, singular values, complex Schur form, companion-matrix
//!   polynomial roots, numerical radius),
//! * [`scalar`] — point membership in `𝔾ₙ`, `Γₙ` and the distinguished
//!   boundary `bΓₙ`, cross-validated against a root-finding oracle,
//! * [`tuples`] — commuting matrix tuples: operator pencils, joint
//!   eigenvalues, `Γₙ`-unitary / `Γₙ`-isometry certification and sampled
//!   von Neumann (spectral-set) testing,
//! * [`fundamental`] — defect spaces and the fundamental operator tuple
//!   solving `Sᵢ − S_{n−i}*P = D_P Fᵢ D_P`,
//! * [`counterexample`] — a finite truncation of the block-operator model
//!   whose fundamental operators fail almost-normality, certifying the
//!   obstruction to rational dilation for `n ≥ 3`.
//!
//! The crate is `no_std` + `alloc`; IO, file formats and the CLI live in the
//! companion `symdisc-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod counterexample;
mod error;
pub mod fundamental;
pub mod grid;
pub mod numerics;
pub mod sampling;
pub mod scalar;
pub mod tuples;

pub use error::Error;
pub use numerics::{ComplexMatrix, Tolerance};

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex<f64>;

/// Result alias for fallible operations in this crate.
pub type Result<T> = core::result::Result<T, Error>;
