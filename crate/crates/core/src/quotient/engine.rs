use std::collections::BTreeMap;

use crate::algebra::{Monomial, Polynomial};
use crate::Scalar;

use super::{GradedPresentation, QuotientError};

/// Degree-capped Gröbner completion of a homogeneous presentation.
///
/// Every S-pair whose lcm has weighted degree at most `degree_cap` has been
/// reduced to zero, so reduction is confluent for every polynomial whose
/// homogeneous components all have degree `<= degree_cap`.
#[derive(Clone, Debug)]
pub struct NormalFormEngine<C> {
    presentation: GradedPresentation<C>,
    basis: Vec<Polynomial<C>>,
    degree_cap: i64,
}

enum Work {
    Relation(usize),
    Pair(usize, usize),
}

impl<C: Scalar> NormalFormEngine<C> {
    pub fn complete(
        presentation: &GradedPresentation<C>,
        degree_cap: i64,
    ) -> Result<Self, QuotientError> {
        let universe = presentation.universe();
        if let Some(v) = universe.vars().iter().find(|v| v.degree <= 0) {
            return Err(QuotientError::NonPositiveDegree {
                variable: v.name.clone(),
                degree: v.degree,
            });
        }

        let mut queue: BTreeMap<i64, Vec<Work>> = BTreeMap::new();
        for (i, r) in presentation.relations().iter().enumerate() {
            if let Some(d) = r.degree() {
                if d <= degree_cap {
                    queue.entry(d).or_default().push(Work::Relation(i));
                }
            }
        }

        let mut basis: Vec<Polynomial<C>> = Vec::new();
        while let Some((_, items)) = queue.pop_first() {
            for item in items {
                let p = match item {
                    Work::Relation(i) => presentation.relations()[i].clone(),
                    Work::Pair(i, j) => s_polynomial(&basis[i], &basis[j]),
                };
                let r = reduce(&p, &basis);
                if r.is_zero() {
                    continue;
                }
                let r = make_monic(&r);
                let k = basis.len();
                let lead_k = r.leading_term().expect("nonzero").0.clone();
                for (i, g) in basis.iter().enumerate() {
                    let lead_i = g.leading_term().expect("nonzero").0;
                    if lead_i.coprime(&lead_k) {
                        continue;
                    }
                    let l = lead_i.lcm(&lead_k, universe);
                    if l.degree() <= degree_cap {
                        queue.entry(l.degree()).or_default().push(Work::Pair(i, k));
                    }
                }
                basis.push(r);
            }
        }

        Ok(NormalFormEngine {
            presentation: presentation.clone(),
            basis: interreduce(basis),
            degree_cap,
        })
    }

    pub fn presentation(&self) -> &GradedPresentation<C> {
        &self.presentation
    }

    /// The reduced rewriting basis, ordered by leading monomial.
    pub fn rewriting_basis(&self) -> &[Polynomial<C>] {
        &self.basis
    }

    pub fn degree_cap(&self) -> i64 {
        self.degree_cap
    }

    fn check_cap(&self, p: &Polynomial<C>) -> Result<(), QuotientError> {
        if p.universe() != self.presentation.universe() {
            return Err(QuotientError::Algebra(
                crate::algebra::AlgebraError::UniverseMismatch {
                    left: self.presentation.universe().to_string(),
                    right: p.universe().to_string(),
                },
            ));
        }
        match p.degree() {
            Some(d) if d > self.degree_cap => Err(QuotientError::DegreeAboveCap {
                degree: d,
                cap: self.degree_cap,
            }),
            _ => Ok(()),
        }
    }

    pub fn normal_form(&self, p: &Polynomial<C>) -> Result<Polynomial<C>, QuotientError> {
        self.check_cap(p)?;
        Ok(reduce(p, &self.basis))
    }

    pub fn is_member(&self, p: &Polynomial<C>) -> Result<bool, QuotientError> {
        Ok(self.normal_form(p)?.is_zero())
    }

    /// Monomials of weighted degree `degree` not divisible by any leading
    /// monomial of the rewriting basis, in descending term order.
    pub fn standard_monomials(&self, degree: i64) -> Result<Vec<Monomial>, QuotientError> {
        if degree > self.degree_cap {
            return Err(QuotientError::DegreeAboveCap {
                degree,
                cap: self.degree_cap,
            });
        }
        let leads: Vec<&Monomial> = self
            .basis
            .iter()
            .map(|g| g.leading_term().expect("nonzero").0)
            .collect();
        let universe = self.presentation.universe();
        let mut out: Vec<Monomial> = monomials_of_degree(universe, degree, 0..universe.len())
            .into_iter()
            .filter(|m| !leads.iter().any(|l| l.divides(m)))
            .collect();
        out.sort();
        out.reverse();
        Ok(out)
    }
}

/// All monomials of the given weighted degree in the listed variables
/// (which must have positive degree).
pub(crate) fn monomials_of_degree(
    universe: &crate::algebra::Universe,
    degree: i64,
    vars: std::ops::Range<usize>,
) -> Vec<Monomial> {
    fn go(
        universe: &crate::algebra::Universe,
        vars: &[usize],
        remaining: i64,
        exps: &mut Vec<u32>,
        out: &mut Vec<Monomial>,
    ) {
        match vars.split_first() {
            None => {
                if remaining == 0 {
                    out.push(Monomial::from_exps(universe, exps.clone()));
                }
            }
            Some((&v, rest)) => {
                let d = universe.degree(v) as i64;
                debug_assert!(d > 0);
                let mut e = 0;
                while e * d <= remaining {
                    exps[v] = e as u32;
                    go(universe, rest, remaining - e * d, exps, out);
                    e += 1;
                }
                exps[v] = 0;
            }
        }
    }
    if degree < 0 {
        return Vec::new();
    }
    let vars: Vec<usize> = vars.collect();
    let mut out = Vec::new();
    let mut exps = vec![0; universe.len()];
    go(universe, &vars, degree, &mut exps, &mut out);
    out
}

fn make_monic<C: Scalar>(p: &Polynomial<C>) -> Polynomial<C> {
    let (_, c) = p.leading_term().expect("nonzero");
    p.scale(&(C::one() / c.clone()))
}

fn s_polynomial<C: Scalar>(f: &Polynomial<C>, g: &Polynomial<C>) -> Polynomial<C> {
    let universe = f.universe();
    let (lf, cf) = f.leading_term().expect("nonzero");
    let (lg, cg) = g.leading_term().expect("nonzero");
    let l = lf.lcm(lg, universe);
    let mf = lf.quotient_of(&l).expect("lcm divisible");
    let mg = lg.quotient_of(&l).expect("lcm divisible");
    &f.mul_term(&mf, &(C::one() / cf.clone())) - &g.mul_term(&mg, &(C::one() / cg.clone()))
}

/// Full reduction; at every step the lowest-indexed applicable rule is used.
pub(crate) fn reduce<C: Scalar>(p: &Polynomial<C>, basis: &[Polynomial<C>]) -> Polynomial<C> {
    let mut rest = p.clone();
    let mut done = Polynomial::zero(p.universe());
    let leads: Vec<(&Monomial, &C)> = basis
        .iter()
        .map(|g| g.leading_term().expect("nonzero"))
        .collect();
    while let Some((m, c)) = rest.leading_term() {
        let m = m.clone();
        let c = c.clone();
        match leads.iter().position(|(l, _)| l.divides(&m)) {
            Some(i) => {
                let (l, lc) = leads[i];
                let factor = l.quotient_of(&m).expect("divides");
                rest = &rest - &basis[i].mul_term(&factor, &(c / lc.clone()));
            }
            None => {
                done.add_term(m.clone(), c);
                rest = rest.retain(|k| k != &m);
            }
        }
    }
    done
}

fn interreduce<C: Scalar>(mut basis: Vec<Polynomial<C>>) -> Vec<Polynomial<C>> {
    basis.sort_by(|a, b| {
        a.leading_term()
            .expect("nonzero")
            .0
            .cmp(b.leading_term().expect("nonzero").0)
    });
    // drop elements whose leading monomial is a multiple of an earlier one
    let mut minimal: Vec<Polynomial<C>> = Vec::new();
    for g in basis {
        let lg = g.leading_term().expect("nonzero").0;
        if minimal
            .iter()
            .any(|h| h.leading_term().expect("nonzero").0.divides(lg))
        {
            continue;
        }
        minimal.push(g);
    }
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Polynomial<C>> = minimal
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let lead = minimal[i].leading_term().expect("nonzero");
        let lead_poly = Polynomial::term(minimal[i].universe(), lead.0.clone(), lead.1.clone());
        let tail = &minimal[i] - &lead_poly;
        out.push(make_monic(&(&lead_poly + &reduce(&tail, &others))));
    }
    out
}
