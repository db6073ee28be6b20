//! Exact multivariate polynomials over a graded variable universe, plus
//! univariate truncated power series with polynomial coefficients.

mod monomial;
mod parse;
mod polynomial;
mod series;
mod universe;

pub use monomial::Monomial;
pub use parse::parse_polynomial;
pub use polynomial::{PolyJson, Polynomial, TermJson};
pub use series::TruncatedSeries;
pub use universe::{Universe, Variable};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("polynomials live in different variable universes ({left} vs {right})")]
    UniverseMismatch { left: String, right: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("variable `{0}` declared twice")]
    DuplicateVariable(String),
    #[error("invalid variable name `{0}`")]
    InvalidName(String),
    #[error("series constant term must be 1")]
    ConstantTermNotOne,
    #[error("series truncation orders differ ({0} vs {1})")]
    OrderMismatch(usize, usize),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}
