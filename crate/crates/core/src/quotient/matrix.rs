use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::algebra::Polynomial;
use crate::Scalar;

use super::{Expander, QuotientError};

/// Matrix of multiplication by `x` on the lifted basis: entry `(i, j)` is the
/// coefficient of basis element `i` in `x * lift_j`, a polynomial in the
/// quantum parameters.
pub fn multiplication_matrix<C: Scalar>(
    expander: &Expander<C>,
    x: &Polynomial<C>,
) -> Result<Vec<Vec<Polynomial<C>>>, QuotientError> {
    if !x.is_homogeneous() {
        return Err(QuotientError::Invalid(format!(
            "multiplier `{x}` must be homogeneous"
        )));
    }
    let universe = expander.engine().presentation().universe().clone();
    let x = x.rehome(&universe)?;
    let n = expander.basis().len();
    let mut rows = vec![vec![Polynomial::zero(&universe); n]; n];
    for (j, e) in expander.basis().elements.iter().enumerate() {
        let column = expander.expand(&(&x * &e.lift))?;
        for (i, c) in column.coeffs.into_iter().enumerate() {
            rows[i][j] = c;
        }
    }
    Ok(rows)
}

/// Specialize the quantum parameters numerically (`q_values` in universe
/// order of the quantum parameters).
pub fn evaluate_matrix<C: Scalar>(
    matrix: &[Vec<Polynomial<C>>],
    n_generators: usize,
    q_values: &[Complex64],
) -> DMatrix<Complex64> {
    let n = matrix.len();
    let mut point = vec![Complex64::new(0.0, 0.0); n_generators];
    point.extend_from_slice(q_values);
    DMatrix::from_fn(n, n, |i, j| matrix[i][j].eval_complex(&point))
}
