//! Exact sparse multivariate polynomials over arbitrary-precision integers.

mod int;
mod json;
mod matrix;
mod parse;
mod poly;
mod vars;

pub use int::Int;
pub use json::PolyJson;
pub use matrix::PolyMatrix;
pub use poly::Polynomial;
pub use vars::{Monomial, VarTable, MAX_VARS};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("operands use different variable tables")]
    VarTableMismatch,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("variable `{0}` has no value")]
    UnassignedVariable(String),
    #[error("variable `{0}` listed twice")]
    DuplicateVariable(String),
    #[error("{0} variables exceed the supported maximum")]
    TooManyVariables(usize),
    #[error("exponent does not fit in a monomial slot")]
    DegreeOverflow,
    #[error("matrix is not square")]
    NotSquare,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("malformed polynomial json: {0}")]
    Json(String),
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
}
