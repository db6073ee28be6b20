//! Truncated generating functions `V(t, q) = sum_j t^j / j! <b^j, M>` and
//! the action of relations as differential operators `p_i -> d/dt_i`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{Monomial, Polynomial, Universe};
use crate::quotient::QuotientError;
use crate::spaces::{Space, SpaceError};
use crate::{Engine, Poly, Presentation, Rational, RingExpander};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenfunError {
    #[error(
        "{0} is not generated in degree 2: generator `{1}` has degree {2}, so relations do \
         not act as operators in the t-variables"
    )]
    NotDegreeTwo(String, String, i32),
    #[error("generating functions need a quantum presentation")]
    NotQuantum,
    #[error("operator involves `{0}`, which is neither a generator nor a quantum parameter")]
    ForeignVariable(String),
    #[error("order {order} is below {minimum}")]
    OrderTooSmall { order: usize, minimum: usize },
    #[error(transparent)]
    Space(#[from] SpaceError),
}

impl From<QuotientError> for GenfunError {
    fn from(e: QuotientError) -> Self {
        GenfunError::Space(e.into())
    }
}

/// A polynomial in `t`-variables (degree `-2`) and quantum parameters,
/// trustworthy in total `t`-degree up to `reliable_order`.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratingFunction {
    pub body: Poly,
    pub order: usize,
    pub reliable_order: usize,
    pub n_t: usize,
}

fn t_names(r: usize) -> Vec<String> {
    if r == 1 {
        vec!["t".into()]
    } else {
        (1..=r).map(|i| format!("t{i}")).collect()
    }
}

fn t_universe(r: usize, q: &[(String, i32)]) -> Arc<Universe> {
    Universe::new(
        t_names(r)
            .into_iter()
            .map(|n| (n, -2))
            .chain(q.iter().cloned()),
    )
    .expect("fresh names")
}

fn factorial(k: u32) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

fn multi_factorial(m: &Monomial, n_t: usize) -> BigInt {
    m.exps()[..n_t].iter().map(|&e| factorial(e)).product()
}

impl GeneratingFunction {
    pub fn universe(&self) -> &Arc<Universe> {
        self.body.universe()
    }

    fn t_degree(&self, m: &Monomial) -> usize {
        m.exps()[..self.n_t].iter().sum::<u32>() as usize
    }

    /// Terms of total `t`-degree at most `order`.
    pub fn truncate(&self, order: usize) -> Poly {
        self.body.retain(|m| self.t_degree(m) <= order)
    }

    /// Number of nonzero terms within the reliable order.
    pub fn residual_terms(&self) -> usize {
        self.truncate(self.reliable_order).len()
    }

    pub fn vanishes(&self) -> bool {
        self.residual_terms() == 0
    }
}

pub fn check_degree_two(pres: &Presentation) -> Result<(), GenfunError> {
    if !pres.is_quantum() {
        return Err(GenfunError::NotQuantum);
    }
    let u = pres.universe();
    if let Some(i) = pres.generator_indices().find(|&i| u.degree(i) != 2) {
        return Err(GenfunError::NotDegreeTwo(
            pres.label().to_string(),
            u.name(i).to_string(),
            u.degree(i),
        ));
    }
    Ok(())
}

fn q_vars(pres: &Presentation) -> Vec<(String, i32)> {
    let u = pres.universe();
    pres.quantum_indices()
        .map(|i| (u.name(i).to_string(), u.degree(i)))
        .collect()
}

/// `sum_{|j| <= order} t^j / j! * tau(b_1^{j_1} ... b_r^{j_r})`, where
/// `b_i` are the generators and `tau` is the top-class coefficient.
pub fn scalar_generating_function(
    expander: &RingExpander,
    order: usize,
) -> Result<GeneratingFunction, GenfunError> {
    let engine = expander.engine();
    let pres = engine.presentation();
    check_degree_two(pres)?;
    let r = pres.n_generators();
    let qs = q_vars(pres);
    let tu = t_universe(r, &qs);
    let ring = pres.universe();

    // Normal forms of b^j built degree by degree.
    let mut body = Polynomial::zero(&tu);
    let mut layer: Vec<(Vec<u32>, Poly)> = vec![(vec![0; r], Polynomial::one(ring))];
    for total in 0..=order {
        for (exps, nf) in &layer {
            let tau = expander.top_coefficient(nf)?;
            if tau.is_zero() {
                continue;
            }
            let mut t_exps = exps.clone();
            t_exps.extend(std::iter::repeat_n(0, qs.len()));
            let t_mono = Monomial::from_exps(&tu, t_exps);
            let weight = Rational::new(BigInt::one(), multi_factorial(&t_mono, r));
            for (qm, c) in tau.terms() {
                let mut e = vec![0u32; r];
                e.extend_from_slice(&qm.exps()[r..]);
                let m = t_mono.mul(&Monomial::from_exps(&tu, e));
                body.add_term(m, c.clone() * weight.clone());
            }
        }
        if total == order {
            break;
        }
        let mut next: Vec<(Vec<u32>, Poly)> = Vec::new();
        for (exps, nf) in &layer {
            let last = exps.iter().rposition(|&e| e > 0).unwrap_or(0);
            for i in last..r {
                let mut e = exps.clone();
                e[i] += 1;
                let prod = &Polynomial::var_at(ring, i) * nf;
                next.push((e, engine.normal_form(&prod)?));
            }
        }
        layer = next;
    }
    Ok(GeneratingFunction {
        body,
        order,
        reliable_order: order,
        n_t: r,
    })
}

/// Engine and expander for a space with a cap large enough for `order`.
pub fn expander_for_order(space: &Space, order: usize) -> Result<RingExpander, GenfunError> {
    let cap = space.degree_cap().max(2 * order as i64 + 2);
    let engine = Engine::complete(&space.presentation, cap)?;
    Ok(RingExpander::new(engine, space.basis.clone())?)
}

/// `sum_s t^{(n+1)s+n} q^s / ((n+1)s+n)!` up to `t`-degree `order`.
pub fn cpn_v_closed_form(n: u32, order: usize) -> Result<GeneratingFunction, GenfunError> {
    if order < n as usize {
        return Err(GenfunError::OrderTooSmall {
            order,
            minimum: n as usize,
        });
    }
    let tu = t_universe(1, &[("q".into(), 2 * n as i32 + 2)]);
    let mut body = Polynomial::zero(&tu);
    let mut s = 0u32;
    loop {
        let d = (n + 1) * s + n;
        if d as usize > order {
            break;
        }
        let m = Monomial::from_exps(&tu, vec![d, s]);
        body.add_term(m, Rational::new(BigInt::one(), factorial(d)));
        s += 1;
    }
    Ok(GeneratingFunction {
        body,
        order,
        reliable_order: order,
        n_t: 1,
    })
}

/// `R(d/dt_1, ..., d/dt_r, q) V`; the reliable order drops by the
/// generator degree of `R`.
pub fn apply_operator(
    op: &Poly,
    v: &GeneratingFunction,
) -> Result<GeneratingFunction, GenfunError> {
    let r = v.n_t;
    let tu = v.universe();
    let ou = op.universe();
    // Operator variables: the first `r` are generators, the rest must be
    // quantum parameters present in V.
    let mut q_map = Vec::new();
    for i in r..ou.len() {
        let j = tu
            .index_of(ou.name(i))
            .filter(|&j| j >= r)
            .ok_or_else(|| GenfunError::ForeignVariable(ou.name(i).to_string()))?;
        q_map.push((i, j));
    }
    let p_degree = op
        .terms()
        .map(|(m, _)| m.exps()[..r].iter().sum::<u32>() as usize)
        .max()
        .unwrap_or(0);
    let mut out = Polynomial::zero(tu);
    for (m, c) in op.terms() {
        let mut term = v.body.clone();
        for i in 0..r {
            for _ in 0..m.exp(i) {
                term = term.diff(i);
            }
        }
        let mut qe = vec![0u32; tu.len()];
        for &(i, j) in &q_map {
            qe[j] = m.exp(i);
        }
        term = term.mul_term(&Monomial::from_exps(tu, qe), c);
        out = &out + &term;
    }
    let reliable_order = v.reliable_order.saturating_sub(p_degree);
    let body = out.retain(|m| m.exps()[..r].iter().sum::<u32>() as usize <= reliable_order);
    Ok(GeneratingFunction {
        body,
        order: v.order,
        reliable_order,
        n_t: r,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct OperatorResult {
    pub operator: String,
    pub residual_terms: usize,
    pub vanishes: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnnihilationReport {
    pub space: String,
    pub order: usize,
    pub reliable_order: usize,
    pub relations: Vec<OperatorResult>,
    /// A generator, which is not in the ideal: must not annihilate.
    pub non_member: OperatorResult,
    /// `V` has no terms below the complex dimension.
    pub lowest_t_degree: Option<usize>,
    pub pass: bool,
}

/// Build `V` far enough that every relation can be checked to `order`, apply
/// each relation and a generator, and report.
pub fn annihilation_check(space: &Space, order: usize) -> Result<AnnihilationReport, GenfunError> {
    let pres = &space.presentation;
    check_degree_two(pres)?;
    let r = pres.n_generators();
    let p_degree = pres
        .relations()
        .iter()
        .flat_map(|rel| rel.terms().map(|(m, _)| m.exps()[..r].iter().sum::<u32>() as usize))
        .max()
        .unwrap_or(0);
    let build = order + p_degree.max(1);
    let expander = expander_for_order(space, build)?;
    let v = scalar_generating_function(&expander, build)?;
    let check = |op: &Poly, name: String| -> Result<OperatorResult, GenfunError> {
        let mut res = apply_operator(op, &v)?;
        res.reliable_order = res.reliable_order.min(order);
        res.body = res.truncate(order);
        Ok(OperatorResult {
            operator: name,
            residual_terms: res.residual_terms(),
            vanishes: res.vanishes(),
        })
    };
    let relations = pres
        .relations()
        .iter()
        .zip(pres.relation_names())
        .map(|(rel, name)| check(rel, format!("{name} = {rel}")))
        .collect::<Result<Vec<_>, _>>()?;
    let g = Polynomial::var_at(pres.universe(), 0);
    let non_member = check(&g, g.to_string())?;
    let lowest_t_degree = v.body.terms().map(|(m, _)| v.t_degree(m)).min();
    let pass = relations.iter().all(|r| r.vanishes) && !non_member.vanishes;
    Ok(AnnihilationReport {
        space: space.label.clone(),
        order,
        reliable_order: order,
        relations,
        non_member,
        lowest_t_degree,
        pass,
    })
}

/// The zero operator, used as a trivial control.
pub fn zero_operator(pres: &Presentation) -> Poly {
    Polynomial::zero(pres.universe())
}

/// Whether every coefficient of two generating functions agrees within
/// the smaller reliable order.
pub fn agree(a: &GeneratingFunction, b: &GeneratingFunction) -> bool {
    let order = a.reliable_order.min(b.reliable_order);
    match a.truncate(order).rehome(b.universe()) {
        Ok(x) => x == b.truncate(order),
        Err(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse;
    use crate::spaces::{Space, SpaceId};

    #[test]
    fn closed_form_cp1() {
        let v = cpn_v_closed_form(1, 5).unwrap();
        assert_eq!(v.body, parse("t + t^3*q/6 + t^5*q^2/120", v.universe()).unwrap());
        let v = cpn_v_closed_form(2, 2).unwrap();
        assert_eq!(v.body, parse("t^2/2", v.universe()).unwrap());
    }

    #[test]
    fn flag_classical_cubic() {
        let space = Space::build(&SpaceId::Flag3(crate::spaces::FlagChart::P), true).unwrap();
        let ex = expander_for_order(&space, 3).unwrap();
        let v = scalar_generating_function(&ex, 3).unwrap();
        let want = parse("(3*t1^2*t2 + 3*t1*t2^2)/6", v.universe()).unwrap();
        assert_eq!(v.truncate(3), want);
    }

    #[test]
    fn cpn_paths_agree() {
        for n in 1..=3u32 {
            let space = Space::build(&SpaceId::Projective(n), true).unwrap();
            let order = (3 * n + 3) as usize;
            let ex = expander_for_order(&space, order).unwrap();
            let built = scalar_generating_function(&ex, order).unwrap();
            assert!(agree(&built, &cpn_v_closed_form(n, order).unwrap()), "n={n}");
        }
    }

    #[test]
    fn operators_on_cp1() {
        let space = Space::build(&SpaceId::Projective(1), true).unwrap();
        let v = cpn_v_closed_form(1, 9).unwrap();
        let rel = &space.presentation.relations()[0];
        assert!(apply_operator(rel, &v).unwrap().vanishes());
        let p = parse("p", space.presentation.universe()).unwrap();
        let pv = apply_operator(&p, &v).unwrap();
        assert!(!pv.vanishes());
        assert_eq!(pv.body.constant_term(), Rational::one());
        let z = zero_operator(&space.presentation);
        assert!(apply_operator(&z, &v).unwrap().body.is_zero());
    }

    #[test]
    fn grassmannian_refused() {
        let space = Space::build(&SpaceId::Grassmannian { k: 2, n: 4 }, true).unwrap();
        assert!(matches!(
            annihilation_check(&space, 4),
            Err(GenfunError::NotDegreeTwo(..))
        ));
    }
}
