//! Angular graph fractional Fourier transforms.
//!
//! The crate is organized bottom-up:
//!
//! * [`matcore`]: dense eigen-solvers, skew-symmetric exponentials and
//!   fractional powers of unitary matrices;
//! * [`rotations`]: legacy and degeneracy-friendly rotation families;
//! * [`spectral`]: GFT / GFRFT / AGFT / type I and II AGFRFT operators;
//! * [`graphs`]: k-NN graph builders and shift operators;
//! * [`filtering`]: spectral Wiener filtering, grid search and gradient descent;
//! * [`harness`]: I/O, noise, metrics and the end-to-end denoising pipelines;
//! * [`properties`]: a batch verifier for the algebraic properties.
//!
//! All numeric code is generic over [`Scalar`] (`f32` or `f64`); the aliases
//! at the crate root fix the scalar to `f64`.

// Parameter checks use `!(x > 0)` so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod filtering;
pub mod graphs;
pub mod harness;
pub mod matcore;
pub mod matrix;
pub mod properties;
pub mod rotations;
pub mod scalar;
pub mod spectral;

pub use error::{Error, Result};
pub use matrix::{ComplexMatrix, Matrix, RealMatrix};
pub use num_complex::Complex;
pub use scalar::Scalar;

pub type Mat = RealMatrix<f64>;
pub type CMat = ComplexMatrix<f64>;
pub type C64 = Complex<f64>;
pub type Spectrum = spectral::GraphSpectrum<f64>;
pub type Operator = spectral::TransformOperator<f64>;
pub type Rotation = rotations::RotationSpec<f64>;
