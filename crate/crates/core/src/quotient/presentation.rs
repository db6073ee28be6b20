use std::sync::Arc;

use crate::algebra::{Monomial, Polynomial, Universe};
use crate::Scalar;

use super::QuotientError;

/// Generators (with even degrees), flagged quantum parameters, and
/// homogeneous relations. The universe lists ordinary generators first and
/// quantum parameters last.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedPresentation<C> {
    label: String,
    universe: Arc<Universe>,
    n_generators: usize,
    relations: Vec<Polynomial<C>>,
}

impl<C: Scalar> GradedPresentation<C> {
    pub fn new(
        label: impl Into<String>,
        universe: Arc<Universe>,
        n_generators: usize,
        relations: Vec<Polynomial<C>>,
    ) -> Result<Self, QuotientError> {
        assert!(n_generators <= universe.len());
        for (i, r) in relations.iter().enumerate() {
            if r.universe() != &universe {
                return Err(QuotientError::Algebra(
                    crate::algebra::AlgebraError::UniverseMismatch {
                        left: universe.to_string(),
                        right: r.universe().to_string(),
                    },
                ));
            }
            if let Some((m, d)) = r.inhomogeneous_witness() {
                return Err(QuotientError::NotHomogeneous {
                    relation: i,
                    term: r.monomial_to_string(&m),
                    term_degree: m.degree(),
                    expected: d,
                });
            }
        }
        Ok(GradedPresentation {
            label: label.into(),
            universe,
            n_generators,
            relations,
        })
    }

    /// Build from `(name, degree)` lists, parsing nothing.
    pub fn from_parts<F>(
        label: impl Into<String>,
        generators: &[(&str, i32)],
        quantum: &[(&str, i32)],
        relations: F,
    ) -> Result<Self, QuotientError>
    where
        F: FnOnce(&Arc<Universe>) -> Result<Vec<Polynomial<C>>, QuotientError>,
    {
        let universe = Universe::new(
            generators
                .iter()
                .chain(quantum)
                .map(|&(n, d)| (n.to_string(), d)),
        )?;
        let rels = relations(&universe)?;
        Self::new(label, universe, generators.len(), rels)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn relations(&self) -> &[Polynomial<C>] {
        &self.relations
    }

    /// Display names `R1`, `R2`, ... of the relations.
    pub fn relation_names(&self) -> Vec<String> {
        (1..=self.relations.len()).map(|i| format!("R{i}")).collect()
    }

    pub fn n_generators(&self) -> usize {
        self.n_generators
    }

    pub fn generator_indices(&self) -> std::ops::Range<usize> {
        0..self.n_generators
    }

    pub fn quantum_indices(&self) -> std::ops::Range<usize> {
        self.n_generators..self.universe.len()
    }

    pub fn is_quantum(&self) -> bool {
        self.n_generators < self.universe.len()
    }

    pub fn generator_names(&self) -> Vec<&str> {
        self.generator_indices().map(|i| self.universe.name(i)).collect()
    }

    pub fn quantum_names(&self) -> Vec<&str> {
        self.quantum_indices().map(|i| self.universe.name(i)).collect()
    }

    /// Whether the monomial involves only quantum parameters.
    pub fn is_q_monomial(&self, m: &Monomial) -> bool {
        self.generator_indices().all(|i| m.exp(i) == 0)
    }

    /// The presentation obtained by setting every quantum parameter to zero.
    pub fn classical(&self) -> Result<Self, QuotientError> {
        if !self.is_quantum() {
            return Ok(self.clone());
        }
        let universe = Universe::new(
            self.universe.vars()[..self.n_generators]
                .iter()
                .map(|v| (v.name.clone(), v.degree)),
        )?;
        let rels = self
            .relations
            .iter()
            .map(|r| r.project(&universe))
            .collect();
        Self::new(self.label.clone(), universe, self.n_generators, rels)
    }

    /// Default degree cap: twice the sum of the complex dimension and the
    /// largest quantum-parameter degree.
    pub fn default_cap(&self, complex_dimension: u32) -> i64 {
        let max_q = self
            .quantum_indices()
            .map(|i| self.universe.degree(i) as i64)
            .max()
            .unwrap_or(0);
        2 * (complex_dimension as i64 + max_q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse;

    #[test]
    fn inhomogeneous_relation_rejected() {
        let r = GradedPresentation::<crate::Rational>::from_parts("bad", &[("x", 2)], &[("q", 4)], |u| {
            Ok(vec![parse("x^2 - q + x", u).unwrap()])
        });
        assert!(matches!(r, Err(QuotientError::NotHomogeneous { relation: 0, .. })));
    }

    #[test]
    fn classical_drops_q() {
        let pres = GradedPresentation::<crate::Rational>::from_parts("p2", &[("p", 2)], &[("q", 6)], |u| {
            Ok(vec![parse("p^3 - q", u).unwrap()])
        })
        .unwrap();
        assert_eq!(pres.quantum_names(), vec!["q"]);
        let c = pres.classical().unwrap();
        assert!(!c.is_quantum());
        assert_eq!(c.relations()[0].to_string(), "p^3");
    }
}
