//! Numerical harmonic analysis on the line, the half-line and the circle.
//!
//! * [`specfun`]: Hermite functions `K_n` and Laguerre functions `M_n^alpha`.
//! * [`quadrature`]: Gauss-Hermite / Gauss-Laguerre rules for the plain measure.
//! * [`spectral`]: analysis and synthesis in those bases.
//! * [`algebra`]: ladder operators, the `A_{k,r}` family and `su(1,1)` generators.
//! * [`frft`]: fractional Fourier transform and `(k, r)` eigen-subspace splits.
//! * [`halfline`]: the cosine/sine transforms on `[0, inf)` and their fractional powers.
//! * [`circle`]: periodized Hermite functions, Gram matrices and exact determinants.

// `!(x > 0.0)` is used on purpose so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod algebra;
pub mod circle;
pub mod error;
pub mod frft;
pub mod halfline;
pub mod gamma;
pub mod quadrature;
pub mod specfun;
pub mod spectral;

pub use error::{Error, Result};
pub use num_complex::Complex64;
