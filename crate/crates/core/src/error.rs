//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    /// Argument outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The circulant extension of a covariance stayed indefinite after the
    /// allowed number of grid doublings.
    #[error(
        "embedding not positive definite: min eigenvalue {min_eig:.6e} is below \
         -{tolerance:.1e} x max eigenvalue {max_eig:.6e} after {doublings} doubling(s)"
    )]
    EmbeddingNotPd {
        min_eig: f64,
        max_eig: f64,
        tolerance: f64,
        doublings: u32,
    },

    /// The normalization integral diverges for the requested exponents.
    #[error("divergent constant: exponent sum {exponent} >= dimension {dim}")]
    DivergentConstant { exponent: f64, dim: u32 },

    /// No component dominates: some slowly-varying ratio has no finite limit.
    #[error("no dominant component: {0}")]
    NoDominantComponent(String),

    /// An inequality-check hypothesis does not hold for the supplied parameters.
    /// This is a reported outcome, not a bug.
    #[error("hypothesis failed: {lhs} < {rhs} is false for {detail}")]
    HypothesisFailed { lhs: f64, rhs: f64, detail: String },

    /// Invalid run configuration.
    #[error("configuration error: {0}")]
    Config(String),

    /// Mismatched lattice shapes.
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
