//! Spectral filtering of sampled signals.
//!
//! A signal is mapped through an affine window onto the Hermite line or the
//! Laguerre half-line, expanded in `N` modes, filtered in coefficient space by
//! the steps of a [`plan::FilterPlan`], and resynthesized on the input grid.

pub mod csvio;
pub mod error;
pub mod pipeline;
pub mod plan;
pub mod synth;
pub mod verify;

pub use error::{FilterError, Result};
