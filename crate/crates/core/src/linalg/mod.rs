//! Exact linear algebra over the rationals.

mod complex;
mod matrix;
mod rational;

pub use complex::{Class, CochainComplex, Cohomology, Generator};
pub use matrix::{add_entry, axpy, solve_linear, Matrix, SparseVec};
pub use rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("cannot parse rational {0:?}")]
    ParseRational(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("contract violation: {0}")]
    Contract(String),
}
