use thiserror::Error;

use crate::weights::Monoid;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("monoid mismatch: {0} vs {1}")]
    MonoidMismatch(Monoid, Monoid),

    #[error("monoid {0} is not signed")]
    Unsigned(Monoid),

    #[error("monoid {0} has no addition")]
    NoAddition(Monoid),

    #[error("invalid weight: {0}")]
    InvalidWeight(String),

    #[error("invalid point label {0:?}: {1}")]
    InvalidLabel(String, String),

    #[error("duplicate point {0} in carrier")]
    DuplicatePoint(String),

    #[error("point {0} is not in the {1} carrier")]
    DanglingPoint(String, &'static str),

    #[error("carrier mismatch: {0}")]
    CarrierMismatch(String),

    #[error("execution is not nilpotent: cycle {}", .0.join(" -> "))]
    NonNilpotent(Vec<String>),

    #[error("series did not converge after {terms} terms (last increment {last_delta:e})")]
    Divergence { terms: usize, last_delta: f64 },

    #[error("size bound exceeded: {what} is {actual}, bound is {bound}")]
    BoundExceeded {
        what: &'static str,
        actual: usize,
        bound: usize,
    },

    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),

    #[error("measure map {0} is not applicable: {1}")]
    Measure(String, String),

    #[error("no convergence after {0} iterations")]
    NoConvergence(usize),

    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("typing error: {0}")]
    Typing(String),

    #[error("json: {0}")]
    Json(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
