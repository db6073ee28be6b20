use crate::algebra::{Monomial, Polynomial};
use crate::linalg;
use crate::Scalar;

use super::engine::monomials_of_degree;

/// Homogeneous cofactors `c_i` with `p = sum c_i * relations[i]`, found by a
/// linear solve in the single degree of `p`. `None` if `p` is inhomogeneous
/// or not in the span at that degree.
pub fn ideal_certificate<C: Scalar>(
    p: &Polynomial<C>,
    relations: &[Polynomial<C>],
) -> Option<Vec<Polynomial<C>>> {
    let universe = p.universe();
    if p.is_zero() {
        return Some(vec![Polynomial::zero(universe); relations.len()]);
    }
    let degree = p.homogeneous_degree()??;
    if universe.vars().iter().any(|v| v.degree <= 0) {
        return None;
    }

    let mut unknowns: Vec<(usize, Monomial)> = Vec::new();
    for (i, r) in relations.iter().enumerate() {
        let Some(Some(rd)) = r.homogeneous_degree() else {
            continue;
        };
        for m in monomials_of_degree(universe, degree - rd, 0..universe.len()) {
            unknowns.push((i, m));
        }
    }
    let rows_index: Vec<Monomial> = monomials_of_degree(universe, degree, 0..universe.len());
    let mut a = vec![vec![C::zero(); unknowns.len()]; rows_index.len()];
    for (col, (i, m)) in unknowns.iter().enumerate() {
        for (t, c) in relations[*i].mul_term(m, &C::one()).terms() {
            let row = rows_index.iter().position(|x| x == t).expect("same degree");
            a[row][col] = c.clone();
        }
    }
    let b: Vec<C> = rows_index.iter().map(|m| p.coefficient(m)).collect();
    let x = linalg::solve(&a, &b)?;
    let mut cof = vec![Polynomial::zero(universe); relations.len()];
    for ((i, m), c) in unknowns.into_iter().zip(x) {
        cof[i].add_term(m, c);
    }
    Some(cof)
}

/// `q2*R2`, `(p1 + q2)*R1 - R2`, or `0`.
pub fn render_certificate<C: Scalar>(cofactors: &[Polynomial<C>], names: &[String]) -> String {
    let mut parts: Vec<String> = Vec::new();
    for (c, name) in cofactors.iter().zip(names) {
        if c.is_zero() {
            continue;
        }
        let one = Polynomial::one(c.universe());
        let piece = if *c == one {
            name.clone()
        } else if *c == -&one {
            format!("-{name}")
        } else if c.len() == 1 {
            format!("{c}*{name}")
        } else {
            format!("({c})*{name}")
        };
        parts.push(piece);
    }
    if parts.is_empty() {
        return "0".into();
    }
    let mut s = parts[0].clone();
    for p in &parts[1..] {
        match p.strip_prefix('-') {
            Some(rest) => {
                s.push_str(" - ");
                s.push_str(rest);
            }
            None => {
                s.push_str(" + ");
                s.push_str(p);
            }
        }
    }
    s
}
