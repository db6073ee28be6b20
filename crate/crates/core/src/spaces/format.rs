//! Declarative text format for presentations.
//!
//! ```text
//! # comment
//! label flag3
//! dimension 3
//! generator p1 2
//! generator p2 2
//! quantum q1 4
//! quantum q2 4
//! relation -p1^2 + p1*p2 - p2^2 + q1 + q2
//! relation p1^2*p2 - p1*p2^2 - p2*q1 + p1*q2
//! basis a^2 = p1^2 - q1 | p1^2
//! chart p1 q1
//! ```
//!
//! A `basis` line gives a label, the lift and, after `|`, the classical
//! polynomial naming the class (defaults to the lift). Without basis lines
//! the classical standard monomials are used, which needs `dimension`.

use std::fmt::Write as _;

use crate::algebra::{parse_polynomial, Universe};
use crate::quotient::{BasisElement, GradedBasis};
use crate::symplectic::SymplecticChart;
use crate::{Basis, Engine, Presentation};

use super::{Family, Space, SpaceDescriptor, SpaceError};

#[derive(Clone, Debug)]
pub struct PresentationFile {
    pub presentation: Presentation,
    pub basis: Option<Basis>,
    pub chart: Option<SymplecticChart>,
    pub dimension: Option<u32>,
}

fn err(line: usize, msg: impl Into<String>) -> SpaceError {
    SpaceError::Format {
        line,
        msg: msg.into(),
    }
}

pub fn read_presentation(text: &str) -> Result<PresentationFile, SpaceError> {
    let mut label = String::from("custom");
    let mut dimension = None;
    let mut generators: Vec<(String, i32)> = Vec::new();
    let mut quantum: Vec<(String, i32)> = Vec::new();
    let mut relations: Vec<(usize, String)> = Vec::new();
    let mut basis: Vec<(usize, String, String, Option<String>)> = Vec::new();
    let mut chart: Vec<(String, String)> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        let var = |rest: &str| -> Result<(String, i32), SpaceError> {
            let mut it = rest.split_whitespace();
            let (Some(name), Some(deg), None) = (it.next(), it.next(), it.next()) else {
                return Err(err(line_no, "expected `<name> <degree>`"));
            };
            let deg = deg
                .parse()
                .map_err(|_| err(line_no, format!("bad degree `{deg}`")))?;
            Ok((name.to_string(), deg))
        };
        match key {
            "label" => label = rest.to_string(),
            "dimension" => {
                dimension = Some(
                    rest.parse()
                        .map_err(|_| err(line_no, format!("bad dimension `{rest}`")))?,
                )
            }
            "generator" => generators.push(var(rest)?),
            "quantum" => quantum.push(var(rest)?),
            "relation" => relations.push((line_no, rest.to_string())),
            "basis" => {
                let (name, body) = rest
                    .split_once('=')
                    .ok_or_else(|| err(line_no, "expected `basis <label> = <lift>`"))?;
                let (lift, classical) = match body.split_once('|') {
                    Some((l, c)) => (l.trim().to_string(), Some(c.trim().to_string())),
                    None => (body.trim().to_string(), None),
                };
                basis.push((line_no, name.trim().to_string(), lift, classical));
            }
            "chart" => {
                let mut it = rest.split_whitespace();
                let (Some(p), Some(q), None) = (it.next(), it.next(), it.next()) else {
                    return Err(err(line_no, "expected `chart <p> <q>`"));
                };
                chart.push((p.to_string(), q.to_string()));
            }
            other => return Err(err(line_no, format!("unknown keyword `{other}`"))),
        }
    }
    if generators.is_empty() {
        return Err(err(0, "no generators declared"));
    }

    let universe = Universe::new(generators.iter().chain(&quantum).cloned())?;
    let rels = relations
        .iter()
        .map(|(l, src)| parse_polynomial(src, &universe).map_err(|e| err(*l, e.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    let presentation = Presentation::new(label, universe.clone(), generators.len(), rels)?;

    let basis = if basis.is_empty() {
        None
    } else {
        let elements = basis
            .into_iter()
            .map(|(l, name, lift, classical)| {
                let lift = parse_polynomial(&lift, &universe).map_err(|e| err(l, e.to_string()))?;
                let classical = match classical {
                    Some(c) => parse_polynomial(&c, &universe).map_err(|e| err(l, e.to_string()))?,
                    None => lift.clone(),
                };
                Ok(BasisElement {
                    label: name,
                    classical,
                    lift,
                })
            })
            .collect::<Result<Vec<_>, SpaceError>>()?;
        Some(GradedBasis::new(elements))
    };
    let chart = if chart.is_empty() {
        None
    } else {
        Some(SymplecticChart::new(chart).map_err(|e| err(0, e.to_string()))?)
    };
    Ok(PresentationFile {
        presentation,
        basis,
        chart,
        dimension,
    })
}

impl PresentationFile {
    pub fn into_space(self) -> Result<Space, SpaceError> {
        let pres = self.presentation;
        let dimension = match (&self.basis, self.dimension) {
            (_, Some(d)) => d,
            (Some(b), None) => (b.elements[b.top].degree() / 2) as u32,
            (None, None) => {
                return Err(err(0, "need `dimension` or `basis` lines"));
            }
        };
        let basis = match self.basis {
            Some(b) => b,
            None => {
                let classical = pres.classical()?;
                let engine = Engine::complete(&classical, 2 * dimension as i64 + 2)?;
                GradedBasis::standard_monomials(&engine, pres.universe(), 2 * dimension as i64)?
            }
        };
        let c1_pairing = pres
            .quantum_indices()
            .map(|i| pres.universe().degree(i) / 2)
            .collect();
        Ok(Space {
            label: pres.label().to_string(),
            descriptor: SpaceDescriptor {
                family: Family::Custom,
                parameters: vec![],
                complex_dimension: dimension,
                c1_pairing,
            },
            presentation: pres,
            basis,
            chart: self.chart,
        })
    }
}

pub fn write_presentation(space: &Space) -> String {
    let pres = &space.presentation;
    let u = pres.universe();
    let mut out = String::new();
    let _ = writeln!(out, "label {}", pres.label());
    let _ = writeln!(out, "dimension {}", space.descriptor.complex_dimension);
    for i in pres.generator_indices() {
        let _ = writeln!(out, "generator {} {}", u.name(i), u.degree(i));
    }
    for i in pres.quantum_indices() {
        let _ = writeln!(out, "quantum {} {}", u.name(i), u.degree(i));
    }
    for r in pres.relations() {
        let _ = writeln!(out, "relation {r}");
    }
    for e in &space.basis.elements {
        if e.classical == e.lift {
            let _ = writeln!(out, "basis {} = {}", e.label, e.lift);
        } else {
            let _ = writeln!(out, "basis {} = {} | {}", e.label, e.lift, e.classical);
        }
    }
    if let Some(chart) = &space.chart {
        for (p, q) in chart.pairs() {
            let _ = writeln!(out, "chart {p} {q}");
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::SpaceId;

    #[test]
    fn round_trip_all_builtins() {
        for id in ["cpn:2", "gr:2:4", "flag3", "flag3:x", "hirzebruch:0", "hirzebruch:1"] {
            let id: SpaceId = id.parse().unwrap();
            for quantum in [false, true] {
                let space = Space::build(&id, quantum).unwrap();
                let text = write_presentation(&space);
                let back = read_presentation(&text).unwrap().into_space().unwrap();
                assert_eq!(back.presentation, space.presentation, "{id}");
                assert_eq!(back.basis, space.basis, "{id}");
                assert_eq!(back.chart, space.chart, "{id}");
            }
        }
    }

    #[test]
    fn default_basis_is_standard_monomials() {
        let text = "generator p 2\nquantum q 8\nrelation p^4 - q\ndimension 3\n";
        let space = read_presentation(text).unwrap().into_space().unwrap();
        let labels: Vec<&str> = space.basis.elements.iter().map(|e| e.label.as_str()).collect();
        assert_eq!(labels, ["1", "p", "p^2", "p^3"]);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let text = "generator p 2\nrelation p^2 +\n";
        assert!(matches!(read_presentation(text), Err(SpaceError::Format { line: 2, .. })));
        let text = "generator p 2\nrealtion p\n";
        assert!(matches!(read_presentation(text), Err(SpaceError::Format { line: 2, .. })));
        let text = "generator p 2\ngenerator q 4\nrelation p + q\n";
        assert!(matches!(read_presentation(text), Err(SpaceError::Quotient(_))));
    }
}
