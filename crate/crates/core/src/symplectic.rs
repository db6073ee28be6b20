//! The Poisson bracket of `dλ` on `T*B` in logarithmic coordinates, and the
//! two Lagrangian conditions on a relation ideal:
//!
//! * (L1) the bracket of two relations lies in the ideal;
//! * (L2) the bracket of two relations vanishes identically.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::Polynomial;
use crate::quotient::{ideal_certificate, render_certificate, NormalFormEngine, QuotientError};
use crate::{Presentation, Scalar};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SymplecticError {
    #[error("chart variable `{0}` is not in the polynomial's universe")]
    MissingChartVariable(String),
    #[error("polynomial involves `{0}`, which is not a chart coordinate")]
    OutsideChart(String),
    #[error("invalid chart: {0}")]
    InvalidChart(String),
    #[error("presentation mismatch: {0}")]
    Presentation(String),
    #[error(transparent)]
    Quotient(#[from] QuotientError),
}

/// Pairs `(p_i, q_i)` of coordinate names on `T*B`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymplecticChart {
    pairs: Vec<(String, String)>,
}

impl SymplecticChart {
    pub fn new<S: Into<String>>(pairs: Vec<(S, S)>) -> Result<Self, SymplecticError> {
        let pairs: Vec<(String, String)> =
            pairs.into_iter().map(|(p, q)| (p.into(), q.into())).collect();
        let mut seen = std::collections::BTreeSet::new();
        for (p, q) in &pairs {
            if !seen.insert(p.clone()) || !seen.insert(q.clone()) {
                return Err(SymplecticError::InvalidChart(format!(
                    "coordinate lists must be disjoint and repetition-free (at `{p}`/`{q}`)"
                )));
            }
        }
        Ok(SymplecticChart { pairs })
    }

    pub fn rank(&self) -> usize {
        self.pairs.len()
    }

    pub fn pairs(&self) -> &[(String, String)] {
        &self.pairs
    }

    pub fn p_names(&self) -> Vec<&str> {
        self.pairs.iter().map(|(p, _)| p.as_str()).collect()
    }

    pub fn q_names(&self) -> Vec<&str> {
        self.pairs.iter().map(|(_, q)| q.as_str()).collect()
    }

    fn indices<C: Scalar>(
        &self,
        f: &Polynomial<C>,
    ) -> Result<Vec<(usize, usize)>, SymplecticError> {
        let u = f.universe();
        let idx = self
            .pairs
            .iter()
            .map(|(p, q)| {
                let pi = u
                    .index_of(p)
                    .ok_or_else(|| SymplecticError::MissingChartVariable(p.clone()))?;
                let qi = u
                    .index_of(q)
                    .ok_or_else(|| SymplecticError::MissingChartVariable(q.clone()))?;
                Ok((pi, qi))
            })
            .collect::<Result<Vec<_>, SymplecticError>>()?;
        Ok(idx)
    }
}

/// `{f, g} = -sum_i q_i (df/dp_i dg/dq_i - dg/dp_i df/dq_i)`.
pub fn poisson_bracket<C: Scalar>(
    f: &Polynomial<C>,
    g: &Polynomial<C>,
    chart: &SymplecticChart,
) -> Result<Polynomial<C>, SymplecticError> {
    let idx = chart.indices(f)?;
    let coords: Vec<usize> = idx.iter().flat_map(|&(p, q)| [p, q]).collect();
    for h in [f, g] {
        if let Some(v) = h.support().into_iter().find(|v| !coords.contains(v)) {
            return Err(SymplecticError::OutsideChart(h.universe().name(v).to_string()));
        }
    }
    let mut out = Polynomial::zero(f.universe());
    for &(p, q) in &idx {
        let term = &(&f.diff(p) * &g.diff(q)) - &(&g.diff(p) * &f.diff(q));
        out = &out - &(&Polynomial::var_at(f.universe(), q) * &term);
    }
    Ok(out)
}

/// Bracket of one pair of relations with its ideal-membership verdict.
#[derive(Clone, Debug, Serialize)]
pub struct BracketEntry {
    pub left: String,
    pub right: String,
    pub bracket: String,
    /// Combination of relations equal to the bracket, if one exists.
    pub certificate: Option<String>,
    pub in_ideal: bool,
    pub is_zero: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct LagrangianReport {
    pub space: String,
    pub rank: usize,
    pub pairs: Vec<BracketEntry>,
    #[serde(rename = "L1")]
    pub l1: bool,
    #[serde(rename = "L2")]
    pub l2: bool,
    /// Certificate of the first nonzero bracket, `0` when all vanish.
    pub bracket: String,
    pub refused: Option<String>,
}

fn check_chart(pres: &Presentation, chart: &SymplecticChart) -> Result<(), SymplecticError> {
    if !pres.is_quantum() {
        return Err(SymplecticError::Presentation(
            "Lagrangian checks need a quantum presentation".into(),
        ));
    }
    let u = pres.universe();
    for (p, q) in chart.pairs() {
        let pi = u
            .index_of(p)
            .ok_or_else(|| SymplecticError::MissingChartVariable(p.clone()))?;
        let qi = u
            .index_of(q)
            .ok_or_else(|| SymplecticError::MissingChartVariable(q.clone()))?;
        if !pres.generator_indices().contains(&pi) || !pres.quantum_indices().contains(&qi) {
            return Err(SymplecticError::InvalidChart(format!(
                "`{p}` must be a generator and `{q}` a quantum parameter"
            )));
        }
    }
    if chart.rank() != pres.n_generators() || chart.rank() != pres.quantum_indices().len() {
        return Err(SymplecticError::InvalidChart(
            "chart rank must equal the number of generators and of quantum parameters".into(),
        ));
    }
    Ok(())
}

/// Brackets of every pair of listed relations, tested for (L1) and (L2).
///
/// Membership is decided by normal form. If a bracket's degree exceeds the
/// engine cap, the engine is rebuilt once at the larger cap; a second
/// overflow is reported as a refusal.
pub fn lagrangian_check(
    pres: &Presentation,
    chart: &SymplecticChart,
    engine: &NormalFormEngine<crate::Rational>,
) -> Result<LagrangianReport, SymplecticError> {
    check_chart(pres, chart)?;
    let names = pres.relation_names();
    let rels = pres.relations();
    let mut brackets = Vec::new();
    for i in 0..rels.len() {
        for j in (i + 1)..rels.len() {
            brackets.push((i, j, poisson_bracket(&rels[i], &rels[j], chart)?));
        }
    }
    let needed = brackets
        .iter()
        .filter_map(|(_, _, b)| b.degree())
        .max()
        .unwrap_or(0);
    let raised;
    let engine = if needed > engine.degree_cap() {
        raised = NormalFormEngine::complete(pres, needed)?;
        &raised
    } else {
        engine
    };

    let mut pairs = Vec::new();
    let mut refused = None;
    for (i, j, b) in brackets {
        let in_ideal = match engine.is_member(&b) {
            Ok(v) => v,
            Err(e @ QuotientError::DegreeAboveCap { .. }) => {
                refused = Some(e.to_string());
                false
            }
            Err(e) => return Err(e.into()),
        };
        let certificate = if in_ideal {
            ideal_certificate(&b, rels).map(|c| render_certificate(&c, &names))
        } else {
            None
        };
        pairs.push(BracketEntry {
            left: names[i].clone(),
            right: names[j].clone(),
            bracket: b.to_string(),
            certificate,
            in_ideal,
            is_zero: b.is_zero(),
        });
    }
    let l1 = refused.is_none() && pairs.iter().all(|p| p.in_ideal);
    let l2 = pairs.iter().all(|p| p.is_zero);
    let bracket = pairs
        .iter()
        .find(|p| !p.is_zero)
        .map(|p| p.certificate.clone().unwrap_or_else(|| p.bracket.clone()))
        .unwrap_or_else(|| "0".into());
    Ok(LagrangianReport {
        space: pres.label().to_string(),
        rank: chart.rank(),
        pairs,
        l1,
        l2,
        bracket,
        refused,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Universe;
    use crate::parse;

    #[test]
    fn bracket_of_coordinates() {
        let u = Universe::new([("p1", 2), ("q1", 4)]).unwrap();
        let chart = SymplecticChart::new(vec![("p1", "q1")]).unwrap();
        let p = parse("p1", &u).unwrap();
        let q = parse("q1", &u).unwrap();
        assert_eq!(poisson_bracket(&p, &q, &chart).unwrap(), -q.clone());
        assert_eq!(poisson_bracket(&q, &p, &chart).unwrap(), q);
    }

    #[test]
    fn rejects_foreign_variable() {
        let u = Universe::new([("p1", 2), ("q1", 4), ("z", 2)]).unwrap();
        let chart = SymplecticChart::new(vec![("p1", "q1")]).unwrap();
        let f = parse("p1*z", &u).unwrap();
        let g = parse("q1", &u).unwrap();
        assert!(matches!(
            poisson_bracket(&f, &g, &chart),
            Err(SymplecticError::OutsideChart(v)) if v == "z"
        ));
    }

    #[test]
    fn overlapping_chart_rejected() {
        assert!(SymplecticChart::new(vec![("p", "q"), ("q", "r")]).is_err());
    }
}
