use nalgebra::{DMatrix, DVector, Schur};
use num_complex::Complex64;
use serde::Serialize;

use crate::algebra::Polynomial;
use crate::Scalar;

use super::{evaluate_matrix, multiplication_matrix, Expander, QuotientError};

/// Outcome of checking that the joint spectrum of the degree-2 quantum
/// multiplication operators lies on the relation variety.
#[derive(Clone, Debug, Serialize)]
pub struct SpectrumReport {
    pub q_values: Vec<[f64; 2]>,
    /// One tuple `(lambda(b_1), ..., lambda(b_r))` per joint eigenvector.
    pub eigen_tuples: Vec<Vec<[f64; 2]>>,
    /// Largest |R(q, lambda)| over relations and tuples.
    pub max_residual: f64,
    /// Largest `|M_i v - lambda_i v| / |v|`.
    pub max_eigen_residual: f64,
    /// Smallest distance between eigenvalues of the generic combination.
    pub min_gap: f64,
    pub diagonalizable: bool,
    pub pass: bool,
}

const GAP_FLOOR: f64 = 1e-9;

pub fn spectrum_check<C: Scalar>(
    expander: &Expander<C>,
    q_values: &[Complex64],
    tol: f64,
) -> Result<SpectrumReport, QuotientError> {
    let pres = expander.engine().presentation();
    let nq = pres.quantum_indices().len();
    if q_values.len() != nq {
        return Err(QuotientError::Invalid(format!(
            "expected {nq} quantum parameter values, got {}",
            q_values.len()
        )));
    }
    if q_values.iter().any(|q| q.norm() == 0.0) {
        return Err(QuotientError::Invalid("quantum parameters must be nonzero".into()));
    }
    let universe = pres.universe();
    let gens: Vec<usize> = pres.generator_indices().collect();
    let mats: Vec<DMatrix<Complex64>> = gens
        .iter()
        .map(|&g| {
            let x = Polynomial::var_at(universe, g);
            multiplication_matrix(expander, &x)
                .map(|m| evaluate_matrix(&m, pres.n_generators(), q_values))
        })
        .collect::<Result<_, _>>()?;

    let n = expander.basis().len();
    let mut generic = DMatrix::<Complex64>::zeros(n, n);
    for (i, m) in mats.iter().enumerate() {
        let w = Complex64::new(1.0 + 0.618_033_988 * i as f64, 0.414_213_562 * (i + 1) as f64);
        generic += m * w;
    }

    let (q, t) = Schur::new(generic).unpack();
    let diag: Vec<Complex64> = (0..n).map(|k| t[(k, k)]).collect();
    let mut min_gap = f64::INFINITY;
    for a in 0..n {
        for b in (a + 1)..n {
            min_gap = min_gap.min((diag[a] - diag[b]).norm());
        }
    }
    let diagonalizable = min_gap > GAP_FLOOR;

    let mut eigen_tuples = Vec::with_capacity(n);
    let mut max_residual: f64 = 0.0;
    let mut max_eigen_residual: f64 = 0.0;
    for k in 0..n {
        let mut y = DVector::<Complex64>::zeros(n);
        y[k] = Complex64::new(1.0, 0.0);
        for j in (0..k).rev() {
            let mut s = Complex64::new(0.0, 0.0);
            for l in (j + 1)..=k {
                s += t[(j, l)] * y[l];
            }
            let d = t[(j, j)] - diag[k];
            y[j] = if d.norm() > GAP_FLOOR { -s / d } else { Complex64::new(0.0, 0.0) };
        }
        let v = &q * y;
        let vv = v.dotc(&v);
        let lambdas: Vec<Complex64> = mats.iter().map(|m| v.dotc(&(m * &v)) / vv).collect();
        for (m, lam) in mats.iter().zip(&lambdas) {
            let r = (m * &v - &v * *lam).norm() / vv.re.sqrt();
            max_eigen_residual = max_eigen_residual.max(r);
        }
        let mut point: Vec<Complex64> = lambdas.clone();
        point.extend_from_slice(q_values);
        for rel in pres.relations() {
            max_residual = max_residual.max(rel.eval_complex(&point).norm());
        }
        eigen_tuples.push(lambdas.iter().map(|z| [z.re, z.im]).collect());
    }

    Ok(SpectrumReport {
        q_values: q_values.iter().map(|z| [z.re, z.im]).collect(),
        eigen_tuples,
        max_residual,
        max_eigen_residual,
        min_gap,
        diagonalizable,
        pass: max_residual < tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::{Space, SpaceId};

    fn eigenvalues(id: SpaceId, q: f64) -> Vec<Complex64> {
        let space = Space::build(&id, true).unwrap();
        let ex = space.expander().unwrap();
        let rep = spectrum_check(&ex, &[Complex64::new(q, 0.0)], 1e-8).unwrap();
        assert!(rep.pass && rep.diagonalizable);
        rep.eigen_tuples
            .iter()
            .map(|t| Complex64::new(t[0][0], t[0][1]))
            .collect()
    }

    #[test]
    fn cube_roots_of_unity() {
        let ev = eigenvalues(SpaceId::Projective(2), 1.0);
        assert_eq!(ev.len(), 3);
        for z in ev {
            assert!((z.powu(3) - 1.0).norm() < 1e-10);
        }
    }

    #[test]
    fn square_roots_of_four() {
        let mut re: Vec<f64> = eigenvalues(SpaceId::Projective(1), 4.0)
            .into_iter()
            .map(|z| z.re)
            .collect();
        re.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((re[0] + 2.0).abs() < 1e-10 && (re[1] - 2.0).abs() < 1e-10);
    }

    #[test]
    fn zero_q_rejected() {
        let space = Space::build(&SpaceId::Projective(1), true).unwrap();
        let ex = space.expander().unwrap();
        assert!(spectrum_check(&ex, &[Complex64::new(0.0, 0.0)], 1e-8).is_err());
    }
}
