//! Exact computations in small quantum cohomology rings.
//!
//! The crate builds graded presentations of the quantum cohomology of
//! projective spaces, Grassmannians, the three-dimensional flag manifold and
//! the Hirzebruch surfaces of degree 0 and 1, completes them into normal-form
//! engines, and checks a collection of identities around them: quantum
//! product tables, Schubert classes, Landau-Ginzburg potentials and residue
//! sums, Poisson brackets of relations, the open Toda lattice on three sites,
//! and generating functions annihilated by the relation operators.
//!
//! Everything symbolic is generic over a [`Scalar`] coefficient field; the
//! aliases below fix it to exact rationals, which is what every identity is
//! checked in.

pub mod algebra;
pub mod genfun;
pub mod landau_ginzburg;
pub mod linalg;
pub mod quotient;
pub mod scalar;
pub mod schubert;
pub mod spaces;
pub mod symplectic;
pub mod toda;
pub mod verify;

pub use scalar::Scalar;

/// Exact rational coefficients.
pub type Rational = num_rational::BigRational;
pub type Poly = algebra::Polynomial<Rational>;
pub type Series = algebra::TruncatedSeries<Rational>;
pub type Presentation = quotient::GradedPresentation<Rational>;
pub type Engine = quotient::NormalFormEngine<Rational>;
pub type Basis = quotient::GradedBasis<Rational>;
pub type RingExpander = quotient::Expander<Rational>;

/// Floating-point polynomials, used for fast numeric evaluation.
pub type FloatPoly = algebra::Polynomial<f64>;
pub type ComplexPoly = algebra::Polynomial<num_complex::Complex64>;

use thiserror::Error;

/// Crate-level error: every module error converts into it.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Algebra(#[from] algebra::AlgebraError),
    #[error(transparent)]
    Quotient(#[from] quotient::QuotientError),
    #[error(transparent)]
    Space(#[from] spaces::SpaceError),
    #[error(transparent)]
    Schubert(#[from] schubert::SchubertError),
    #[error(transparent)]
    LandauGinzburg(#[from] landau_ginzburg::LgError),
    #[error(transparent)]
    Toda(#[from] toda::TodaError),
    #[error(transparent)]
    Genfun(#[from] genfun::GenfunError),
    #[error(transparent)]
    Symplectic(#[from] symplectic::SymplecticError),
}

/// Parse a polynomial in the given universe.
pub fn parse(src: &str, universe: &std::sync::Arc<algebra::Universe>) -> Result<Poly, Error> {
    Ok(algebra::parse_polynomial(src, universe)?)
}
