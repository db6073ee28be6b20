//! Dense Gaussian elimination over an exact [`Scalar`] field.

use crate::Scalar;

/// Row-reduce `rows` in place to reduced row echelon form and return the
/// pivot column of each nonzero row.
pub fn rref<C: Scalar>(rows: &mut Vec<Vec<C>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = C::one() / rows[r][col].clone();
        for x in rows[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x = x.clone() - f.clone() * y.clone();
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank<C: Scalar>(rows: &[Vec<C>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Inverse of a square matrix, `None` when singular.
pub fn inverse<C: Scalar>(a: &[Vec<C>]) -> Option<Vec<Vec<C>>> {
    let n = a.len();
    if a.iter().any(|r| r.len() != n) {
        return None;
    }
    if n == 0 {
        return Some(Vec::new());
    }
    let mut aug: Vec<Vec<C>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { C::one() } else { C::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// One solution of `A x = b` (free variables set to zero), or `None` when
/// the system is inconsistent. `a` is given row-major.
pub fn solve<C: Scalar>(a: &[Vec<C>], b: &[C]) -> Option<Vec<C>> {
    let ncols = a.first().map_or(0, Vec::len);
    let mut aug: Vec<Vec<C>> = a
        .iter()
        .zip(b)
        .map(|(row, y)| {
            let mut r = row.clone();
            r.push(y.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![C::zero(); ncols];
    for (row, &col) in aug.iter().zip(&pivots) {
        x[col] = row[ncols].clone();
    }
    Some(x)
}

pub fn mat_vec<C: Scalar>(a: &[Vec<C>], x: &[C]) -> Vec<C> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(x)
                .filter(|(r, v)| !r.is_zero() && !v.is_zero())
                .fold(C::zero(), |acc, (r, v)| acc + r.clone() * v.clone())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;
    use crate::Rational;

    fn q(n: i64) -> Rational {
        ratio(n, 1)
    }

    #[test]
    fn inverse_of_2x2() {
        let a = vec![vec![q(2), q(1)], vec![q(1), q(1)]];
        let inv = inverse(&a).unwrap();
        assert_eq!(inv, vec![vec![q(1), q(-1)], vec![q(-1), q(2)]]);
    }

    #[test]
    fn empty_matrix_inverts() {
        let a: Vec<Vec<crate::Rational>> = Vec::new();
        assert_eq!(inverse(&a), Some(Vec::new()));
    }

    #[test]
    fn singular_has_no_inverse() {
        let a = vec![vec![q(1), q(2)], vec![q(2), q(4)]];
        assert!(inverse(&a).is_none());
        assert_eq!(rank(&a), 1);
    }

    #[test]
    fn inconsistent_system() {
        let a = vec![vec![q(1), q(1)], vec![q(1), q(1)]];
        assert!(solve(&a, &[q(1), q(2)]).is_none());
        let x = solve(&a, &[q(3), q(3)]).unwrap();
        assert_eq!(mat_vec(&a, &x), vec![q(3), q(3)]);
    }
}
