use thiserror::Error;

use crate::impulse::StabilityVerdict;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Coarse classification used for process exit codes and FFI status codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Bad argument supplied by the caller (vertex index, eta, budget...).
    Argument,
    /// Input map failed to decode or validate.
    Validation,
    /// Path budget exhausted, eigenvalue iteration failure, divergence.
    Numerical,
    /// The requested method does not apply to this map.
    NotApplicable,
}

// Row and column numbers carried by validation errors are 1-based; vertex
// indices are 0-based and rendered 1-based in messages.
#[derive(Debug, Error)]
pub enum Error {
    #[error("map is empty")]
    Empty,
    #[error("matrix is not square: row {row} has {found} cells, expected {expected}")]
    NonSquare {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("non-numeric cell {text:?} at row {row}, column {col}")]
    NonNumeric {
        row: usize,
        col: usize,
        text: String,
    },
    #[error("non-finite weight at row {row}, column {col}")]
    NonFinite { row: usize, col: usize },
    #[error("self-loop at vertex {vertex}: diagonal weight must be 0")]
    SelfLoop { vertex: usize },
    #[error("expected {expected} labels, found {found}")]
    LabelCount { expected: usize, found: usize },
    #[error("invalid JSON map: {0}")]
    Json(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("vertex {} out of range for a map with {n} vertices", .vertex + 1)]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("source and target are the same vertex ({})", .0 + 1)]
    SameVertex(usize),

    #[error(
        "path budget exceeded for pair {from_vertex} -> {to_vertex}: {found} paths found (limit {limit})",
        from_vertex = .from + 1,
        to_vertex = .to + 1
    )]
    PathBudget {
        from: usize,
        to: usize,
        found: usize,
        limit: usize,
    },
    #[error(
        "paths for pair {from_vertex} -> {to_vertex} exceed the length limit of {max_len} edges",
        from_vertex = .from + 1,
        to_vertex = .to + 1
    )]
    PathLength {
        from: usize,
        to: usize,
        max_len: usize,
    },
    #[error("eigenvalue iteration did not converge after {iterations} iterations (active block ending at {index})")]
    EigenNoConvergence { iterations: usize, index: usize },
    #[error("impulse process diverged at step {step}")]
    Divergence { step: usize },
    #[error("impulse process did not converge within {steps} steps")]
    NotConverged { steps: usize },
    #[error("impulse method not applicable: map is not impulse stable (spectral radius {:.4}); use the accumulated influence method", .0.spectral_radius())]
    Unstable(Box<StabilityVerdict>),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Empty
            | Error::NonSquare { .. }
            | Error::NonNumeric { .. }
            | Error::NonFinite { .. }
            | Error::SelfLoop { .. }
            | Error::LabelCount { .. }
            | Error::Json(_)
            | Error::Io(_) => ErrorKind::Validation,
            Error::InvalidArgument(_) | Error::VertexOutOfRange { .. } | Error::SameVertex(_) => {
                ErrorKind::Argument
            }
            Error::PathBudget { .. }
            | Error::PathLength { .. }
            | Error::EigenNoConvergence { .. }
            | Error::Divergence { .. }
            | Error::NotConverged { .. } => ErrorKind::Numerical,
            Error::Unstable(_) => ErrorKind::NotApplicable,
        }
    }
}
