//! Graded quotient rings: completion, normal forms, standard monomials,
//! ideal membership, multiplication matrices and the numeric spectrum check.

mod certificate;
mod engine;
mod graded;
mod matrix;
mod presentation;
mod spectrum;

pub use certificate::{ideal_certificate, render_certificate};
pub use engine::NormalFormEngine;
pub use graded::{BasisElement, Expander, Expansion, GradedBasis};
pub use matrix::{evaluate_matrix, multiplication_matrix};
pub use presentation::GradedPresentation;
pub use spectrum::{spectrum_check, SpectrumReport};

pub(crate) use engine::monomials_of_degree;

use thiserror::Error;

use crate::algebra::AlgebraError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuotientError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("relation {relation} is not homogeneous: term `{term}` has degree {term_degree}, expected {expected}")]
    NotHomogeneous {
        relation: usize,
        term: String,
        term_degree: i64,
        expected: i64,
    },
    #[error("variable `{variable}` has non-positive degree {degree}; graded completion needs positive weights")]
    NonPositiveDegree { variable: String, degree: i32 },
    #[error("degree {degree} exceeds the certified cap {cap}")]
    DegreeAboveCap { degree: i64, cap: i64 },
    #[error("basis lift failure: {0}")]
    BasisLift(String),
    #[error("{0}")]
    Invalid(String),
}
