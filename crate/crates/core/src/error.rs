use thiserror::Error;

use crate::spectral::Basis;

/// Errors raised by the numerical routines in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("basis mismatch: expected {expected}, found {found}")]
    BasisMismatch { expected: Basis, found: Basis },

    #[error("quadrature rule mismatch: {0}")]
    RuleMismatch(String),

    #[error("integrand is not finite at node {node}")]
    NonFinite { node: f64 },

    #[error("interior contract violated: margin {margin} < band reach {reach}, boundary index {boundary_index}")]
    Contract {
        margin: usize,
        reach: usize,
        boundary_index: usize,
    },

    #[error("vector {index} is numerically dependent on its predecessors (relative pivot {pivot:e})")]
    Dependence { index: usize, pivot: f64 },

    #[error("grid of {grid} points aliases a cutoff requiring at least {required}")]
    Aliasing { grid: usize, required: usize },

    #[error("size {requested} exceeds the supported maximum {max}")]
    Resource { requested: usize, max: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
