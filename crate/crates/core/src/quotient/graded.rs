//! Expansion of ring elements in a lifted cohomology basis with
//! coefficients polynomial in the quantum parameters.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use crate::algebra::{Monomial, Polynomial};
use crate::linalg;
use crate::Scalar;

use super::engine::monomials_of_degree;
use super::{NormalFormEngine, QuotientError};

/// A cohomology class together with the ring element representing it.
#[derive(Clone, Debug, PartialEq)]
pub struct BasisElement<C> {
    pub label: String,
    /// Classical polynomial naming the class (usually a monomial).
    pub classical: Polynomial<C>,
    /// Representative in the (possibly quantum) presentation ring.
    pub lift: Polynomial<C>,
}

impl<C: Scalar> BasisElement<C> {
    pub fn degree(&self) -> i64 {
        self.classical.degree().unwrap_or(0)
    }
}

/// Additive basis of cohomology with its lifts; `top` indexes the
/// generator of the top-degree piece.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedBasis<C> {
    pub elements: Vec<BasisElement<C>>,
    pub top: usize,
}

impl<C: Scalar> GradedBasis<C> {
    pub fn new(elements: Vec<BasisElement<C>>) -> Self {
        let top = elements
            .iter()
            .enumerate()
            .max_by_key(|(i, e)| (e.degree(), std::cmp::Reverse(*i)))
            .map(|(i, _)| i)
            .unwrap_or(0);
        GradedBasis { elements, top }
    }

    /// Classical standard monomials lifted as themselves.
    pub fn standard_monomials(
        classical: &NormalFormEngine<C>,
        ring_universe: &Arc<crate::algebra::Universe>,
        top_degree: i64,
    ) -> Result<Self, QuotientError> {
        let mut elements = Vec::new();
        let mut d = 0;
        while d <= top_degree {
            for m in classical.standard_monomials(d)?.into_iter().rev() {
                let poly = Polynomial::term(classical.presentation().universe(), m, C::one());
                let lift = poly.rehome(ring_universe)?;
                elements.push(BasisElement {
                    label: poly.to_string(),
                    classical: lift.clone(),
                    lift,
                });
            }
            d += 2;
        }
        Ok(Self::new(elements))
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.elements.iter().position(|e| e.label == label)
    }

    /// Ring element representing a class written as a combination of the
    /// classical naming polynomials (each term must name a basis element).
    pub fn lift_class(&self, class: &Polynomial<C>) -> Result<Polynomial<C>, QuotientError> {
        let universe = self
            .elements
            .first()
            .map(|e| e.lift.universe().clone())
            .ok_or_else(|| QuotientError::BasisLift("empty basis".into()))?;
        let class = class.rehome(&universe)?;
        let mut out = Polynomial::zero(&universe);
        for (m, c) in class.terms() {
            let named = Polynomial::term(&universe, m.clone(), C::one());
            let e = self
                .elements
                .iter()
                .find(|e| e.classical == named)
                .ok_or_else(|| {
                    QuotientError::BasisLift(format!(
                        "`{}` does not name a basis class",
                        class.monomial_to_string(m)
                    ))
                })?;
            out = &out + &e.lift.scale(c);
        }
        Ok(out)
    }
}

/// Coefficients (polynomials in the quantum parameters) of an element in a
/// [`GradedBasis`].
#[derive(Clone, Debug, PartialEq)]
pub struct Expansion<C> {
    pub coeffs: Vec<Polynomial<C>>,
}

impl<C: Scalar> Expansion<C> {
    /// `sum coeff_i * classical_i` as a single polynomial.
    pub fn as_polynomial(&self, basis: &GradedBasis<C>) -> Polynomial<C> {
        let mut out = Polynomial::zero(basis.elements[0].lift.universe());
        for (c, e) in self.coeffs.iter().zip(&basis.elements) {
            out = &out + &(c * &e.classical);
        }
        out
    }

    /// Human-readable `label*q-part` rendering in basis order.
    pub fn render(&self, basis: &GradedBasis<C>) -> String {
        let mut parts: Vec<String> = Vec::new();
        for (c, e) in self.coeffs.iter().zip(&basis.elements).rev() {
            if c.is_zero() {
                continue;
            }
            let coeff = c.to_string();
            let piece = if e.label == "1" {
                coeff
            } else if c == &Polynomial::one(c.universe()) {
                e.label.clone()
            } else if c.len() == 1 {
                format!("{}*{}", e.label, coeff)
            } else {
                format!("{}*({})", e.label, coeff)
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
}

struct DegreeSystem<C> {
    /// `(basis index, q-monomial)` per column.
    columns: Vec<(usize, Monomial)>,
    standard: Vec<Monomial>,
    inverse: Vec<Vec<C>>,
}

/// Per-degree linear algebra identifying the quotient's graded pieces with
/// the free span of `basis x q-monomials`. Independence of the lifts is
/// verified degree by degree, never assumed.
pub struct Expander<C> {
    engine: NormalFormEngine<C>,
    basis: GradedBasis<C>,
    systems: Mutex<BTreeMap<i64, Arc<DegreeSystem<C>>>>,
}

impl<C: Scalar> Expander<C> {
    pub fn new(engine: NormalFormEngine<C>, basis: GradedBasis<C>) -> Result<Self, QuotientError> {
        if basis.is_empty() {
            return Err(QuotientError::BasisLift("empty basis".into()));
        }
        if basis.elements.iter().any(|e| !e.lift.is_homogeneous()) {
            return Err(QuotientError::BasisLift("basis lifts must be homogeneous".into()));
        }
        Ok(Expander {
            engine,
            basis,
            systems: Mutex::new(BTreeMap::new()),
        })
    }

    pub fn engine(&self) -> &NormalFormEngine<C> {
        &self.engine
    }

    pub fn basis(&self) -> &GradedBasis<C> {
        &self.basis
    }

    fn system(&self, degree: i64) -> Result<Arc<DegreeSystem<C>>, QuotientError> {
        if let Some(s) = self.systems.lock().expect("poisoned").get(&degree) {
            return Ok(s.clone());
        }
        let pres = self.engine.presentation();
        let universe = pres.universe();
        let mut columns = Vec::new();
        for (i, e) in self.basis.elements.iter().enumerate() {
            let rest = degree - e.lift.degree().unwrap_or(0);
            if rest < 0 {
                continue;
            }
            for m in monomials_of_degree(universe, rest, pres.quantum_indices()) {
                columns.push((i, m));
            }
        }
        let standard = self.engine.standard_monomials(degree)?;
        if standard.len() != columns.len() {
            return Err(QuotientError::BasisLift(format!(
                "degree {degree}: {} standard monomials but {} basis-times-q candidates",
                standard.len(),
                columns.len()
            )));
        }
        let pos: BTreeMap<&Monomial, usize> =
            standard.iter().enumerate().map(|(k, m)| (m, k)).collect();
        let n = standard.len();
        let mut matrix = vec![vec![C::zero(); n]; n];
        for (col, (i, m)) in columns.iter().enumerate() {
            let element = self.basis.elements[*i].lift.mul_term(m, &C::one());
            let nf = self.engine.normal_form(&element)?;
            for (sm, c) in nf.terms() {
                matrix[pos[sm]][col] = c.clone();
            }
        }
        let inverse = linalg::inverse(&matrix).ok_or_else(|| {
            QuotientError::BasisLift(format!("degree {degree}: lifted basis is dependent"))
        })?;
        let sys = Arc::new(DegreeSystem {
            columns,
            standard,
            inverse,
        });
        self.systems
            .lock()
            .expect("poisoned")
            .insert(degree, sys.clone());
        Ok(sys)
    }

    /// Verify the lift independence in every degree up to `max_degree`.
    pub fn verify_degrees(&self, max_degree: i64) -> Result<(), QuotientError> {
        let mut d = 0;
        while d <= max_degree {
            self.system(d)?;
            d += 2;
        }
        Ok(())
    }

    pub fn expand(&self, p: &Polynomial<C>) -> Result<Expansion<C>, QuotientError> {
        let universe = self.engine.presentation().universe().clone();
        let p = p.rehome(&universe)?;
        let mut coeffs = vec![Polynomial::zero(&universe); self.basis.len()];
        for (degree, component) in p.homogeneous_components() {
            let sys = self.system(degree)?;
            let nf = self.engine.normal_form(&component)?;
            let mut vector = vec![C::zero(); sys.standard.len()];
            for (m, c) in nf.terms() {
                let k = sys
                    .standard
                    .iter()
                    .position(|s| s == m)
                    .expect("normal form uses standard monomials");
                vector[k] = c.clone();
            }
            let x = linalg::mat_vec(&sys.inverse, &vector);
            for ((i, m), c) in sys.columns.iter().zip(x) {
                coeffs[*i].add_term(m.clone(), c);
            }
        }
        Ok(Expansion { coeffs })
    }

    /// Quantum product of two basis elements.
    pub fn product(&self, i: usize, j: usize) -> Result<Expansion<C>, QuotientError> {
        let e = &self.basis.elements;
        self.expand(&(&e[i].lift * &e[j].lift))
    }

    /// Coefficient of the top class in the expansion.
    pub fn top_coefficient(&self, p: &Polynomial<C>) -> Result<Polynomial<C>, QuotientError> {
        Ok(self.expand(p)?.coeffs.swap_remove(self.basis.top))
    }
}
