//! Presentations of the example rings.
//!
//! Projective spaces, Grassmannians, the flag manifold `F_{1,2}(C^3)` and
//! the Hirzebruch surfaces, each with an additive basis and its lifts to the
//! quantum ring.

mod fixtures;
mod format;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{Polynomial, TruncatedSeries, Universe};
use crate::quotient::{BasisElement, Expansion, GradedBasis, QuotientError};
use crate::schubert::{self, YoungDiagram};
use crate::symplectic::SymplecticChart;
use crate::{parse, Basis, Engine, Poly, Presentation, RingExpander};

pub use fixtures::{product_fixtures, ProductFixture};
pub use format::{read_presentation, write_presentation, PresentationFile};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpaceError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error(
        "unknown space `{0}`; expected one of cpn:<n>, gr:<k>:<n>, flag3, flag3:x, hirzebruch:<k>"
    )]
    UnknownSpace(String),
    #[error(
        "no quantum presentation for the Hirzebruch surface of degree {0}: it is not convex, \
         so the ring is only heuristic"
    )]
    NonConvex(u32),
    #[error("presentation file line {line}: {msg}")]
    Format { line: usize, msg: String },
    #[error(transparent)]
    Quotient(#[from] QuotientError),
}

impl From<crate::algebra::AlgebraError> for SpaceError {
    fn from(e: crate::algebra::AlgebraError) -> Self {
        SpaceError::Quotient(e.into())
    }
}

impl From<crate::Error> for SpaceError {
    fn from(e: crate::Error) -> Self {
        match e {
            crate::Error::Algebra(a) => a.into(),
            crate::Error::Quotient(q) => q.into(),
            crate::Error::Space(s) => s,
            other => SpaceError::InvalidParameters(other.to_string()),
        }
    }
}

/// Chart used for the flag manifold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum FlagChart {
    /// `x_1, x_2` with `x_3 = -x_1 - x_2` eliminated.
    X,
    /// `p_1 = x_1`, `p_2 = x_1 + x_2`.
    P,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SpaceId {
    Projective(u32),
    Grassmannian { k: u32, n: u32 },
    Flag3(FlagChart),
    Hirzebruch(u32),
}

impl fmt::Display for SpaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceId::Projective(n) => write!(f, "cpn:{n}"),
            SpaceId::Grassmannian { k, n } => write!(f, "gr:{k}:{n}"),
            SpaceId::Flag3(FlagChart::P) => write!(f, "flag3"),
            SpaceId::Flag3(FlagChart::X) => write!(f, "flag3:x"),
            SpaceId::Hirzebruch(k) => write!(f, "hirzebruch:{k}"),
        }
    }
}

impl FromStr for SpaceId {
    type Err = SpaceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let unknown = || SpaceError::UnknownSpace(s.to_string());
        let parts: Vec<&str> = s.trim().split(':').collect();
        let num = |t: &str| t.parse::<u32>().map_err(|_| unknown());
        match parts.as_slice() {
            ["cpn", n] => Ok(SpaceId::Projective(num(n)?)),
            ["gr", k, n] => Ok(SpaceId::Grassmannian {
                k: num(k)?,
                n: num(n)?,
            }),
            ["flag3"] | ["flag3", "p"] => Ok(SpaceId::Flag3(FlagChart::P)),
            ["flag3", "x"] => Ok(SpaceId::Flag3(FlagChart::X)),
            ["hirzebruch", k] => Ok(SpaceId::Hirzebruch(num(k)?)),
            _ => Err(unknown()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Projective,
    Grassmannian,
    Flag3,
    Hirzebruch,
    /// Loaded from a presentation file.
    Custom,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpaceDescriptor {
    pub family: Family,
    pub parameters: Vec<u32>,
    pub complex_dimension: u32,
    /// `<c_1 TM, D_i>` for the curve class dual to each quantum parameter.
    pub c1_pairing: Vec<i32>,
}

impl SpaceDescriptor {
    pub fn of(id: &SpaceId) -> Result<Self, SpaceError> {
        validate(id)?;
        Ok(match *id {
            SpaceId::Projective(n) => SpaceDescriptor {
                family: Family::Projective,
                parameters: vec![n],
                complex_dimension: n,
                c1_pairing: vec![n as i32 + 1],
            },
            SpaceId::Grassmannian { k, n } => SpaceDescriptor {
                family: Family::Grassmannian,
                parameters: vec![k, n],
                complex_dimension: k * (n - k),
                c1_pairing: vec![n as i32],
            },
            SpaceId::Flag3(_) => SpaceDescriptor {
                family: Family::Flag3,
                parameters: vec![],
                complex_dimension: 3,
                c1_pairing: vec![2, 2],
            },
            SpaceId::Hirzebruch(k) => SpaceDescriptor {
                family: Family::Hirzebruch,
                parameters: vec![k],
                complex_dimension: 2,
                c1_pairing: vec![2, 2 - k as i32],
            },
        })
    }
}

fn validate(id: &SpaceId) -> Result<(), SpaceError> {
    match *id {
        SpaceId::Projective(n) if n < 1 => Err(SpaceError::InvalidParameters(
            "projective space needs n >= 1".into(),
        )),
        SpaceId::Grassmannian { k, n } if k < 1 || k + 1 > n => Err(
            SpaceError::InvalidParameters(format!("Grassmannian needs 1 <= k <= n-1, got k={k}, n={n}")),
        ),
        _ => Ok(()),
    }
}

/// `p^{n+1}` or `p^{n+1} - q`, with `|p| = 2` and `|q| = 2n+2`.
pub fn cpn_presentation(n: u32, quantum: bool) -> Result<Presentation, SpaceError> {
    validate(&SpaceId::Projective(n))?;
    let qdeg = 2 * n as i32 + 2;
    let quantum_vars: &[(&str, i32)] = if quantum { &[("q", qdeg)] } else { &[] };
    let label = SpaceId::Projective(n).to_string();
    let pres = Presentation::from_parts(label, &[("p", 2)], quantum_vars, |u| {
        let p = Polynomial::var_at(u, 0);
        let mut r = p.pow(n + 1);
        if quantum {
            r = &r - &Polynomial::var_at(u, 1);
        }
        Ok(vec![r])
    })?;
    Ok(pres)
}

/// `s_1, ..., s_n` as polynomials in `c_1, ..., c_k`, from `C(t) S(t) = 1`.
pub fn grassmannian_s_classes(
    universe: &Arc<Universe>,
    k: u32,
    n: u32,
) -> Result<Vec<Poly>, SpaceError> {
    let names: Vec<String> = (1..=k).map(|i| format!("c{i}")).collect();
    let names: Vec<&str> = names.iter().map(String::as_str).collect();
    let c = TruncatedSeries::unit_from_vars(universe, &names, n as usize)?;
    let s = c.invert()?;
    Ok(s.coeffs()[1..].to_vec())
}

/// Generators `c_1..c_k` with `|c_i| = 2i`, relations `f_{n-k+1}, ..., f_n`
/// read off the series inverse of `1 + c_1 t + ... + c_k t^k`. The quantum
/// relation replaces `f_n` by `f_n + (-1)^{n-k} q` with `|q| = 2n`.
pub fn grassmannian_presentation(k: u32, n: u32, quantum: bool) -> Result<Presentation, SpaceError> {
    let id = SpaceId::Grassmannian { k, n };
    validate(&id)?;
    let gens: Vec<(String, i32)> = (1..=k).map(|i| (format!("c{i}"), 2 * i as i32)).collect();
    let gens: Vec<(&str, i32)> = gens.iter().map(|(s, d)| (s.as_str(), *d)).collect();
    let quantum_vars: &[(&str, i32)] = if quantum { &[("q", 2 * n as i32)] } else { &[] };
    let pres = Presentation::from_parts(id.to_string(), &gens, quantum_vars, |u| {
        let s = grassmannian_s_classes(u, k, n).map_err(|e| match e {
            SpaceError::Quotient(q) => q,
            other => QuotientError::Invalid(other.to_string()),
        })?;
        let mut rels: Vec<Poly> = s[(n - k) as usize..].to_vec();
        if quantum {
            let q = Polynomial::var_at(u, k as usize);
            let last = rels.last_mut().expect("k >= 1");
            *last = if (n - k) % 2 == 0 { &*last + &q } else { &*last - &q };
        }
        Ok(rels)
    })?;
    Ok(pres)
}

const FLAG_X_R1: &str = "x1*x2 + x2*x3 + x3*x1 + q1 + q2";
const FLAG_X_R2: &str = "x1*x2*x3 + x3*q1 + x1*q2";

/// The flag relations before eliminating `x_3`, in the universe
/// `x1, x2, x3, q1, q2`.
pub fn flag3_borel_relations(quantum: bool) -> Result<(Arc<Universe>, Vec<Poly>), SpaceError> {
    let u = Universe::new([("x1", 2), ("x2", 2), ("x3", 2), ("q1", 4), ("q2", 4)])?;
    let q_free = Universe::new([("x1", 2), ("x2", 2), ("x3", 2)])?;
    let mut rels = Vec::new();
    for src in [FLAG_X_R1, FLAG_X_R2] {
        let r = parse(src, &u)?;
        rels.push(if quantum { r } else { r.project(&q_free) });
    }
    Ok((if quantum { u } else { q_free }, rels))
}

pub fn flag3_presentation(quantum: bool, chart: FlagChart) -> Result<Presentation, SpaceError> {
    let (_, rels) = flag3_borel_relations(true)?;
    let (gens, images): ([(&str, i32); 2], [&str; 3]) = match chart {
        FlagChart::X => ([("x1", 2), ("x2", 2)], ["x1", "x2", "-x1 - x2"]),
        FlagChart::P => ([("p1", 2), ("p2", 2)], ["p1", "p2 - p1", "-p2"]),
    };
    let quantum_vars: &[(&str, i32)] = if quantum { &[("q1", 4), ("q2", 4)] } else { &[] };
    let label = SpaceId::Flag3(chart).to_string();
    let pres = Presentation::from_parts(label, &gens, quantum_vars, |u| {
        let full = u.extended(
            if quantum { vec![] } else { vec![("q1", 4), ("q2", 4)] },
        )?;
        let mut imgs = images
            .iter()
            .map(|s| crate::algebra::parse_polynomial(s, &full))
            .collect::<Result<Vec<_>, _>>()?;
        imgs.push(Polynomial::var(&full, "q1")?);
        imgs.push(Polynomial::var(&full, "q2")?);
        Ok(rels
            .iter()
            .map(|r| r.substitute(&imgs, &full).project(u))
            .collect())
    })?;
    Ok(pres)
}

/// Generators `x_1, x_4` (`x_2 = x_4 - k x_1`, `z = x_1 x_4`); `|q_1| = 4`
/// and `|q_2| = 2(2-k)`. Only `k` in `{0, 1}` has a quantum presentation.
pub fn hirzebruch_presentation(k: u32, quantum: bool) -> Result<Presentation, SpaceError> {
    if quantum && k >= 2 {
        return Err(SpaceError::NonConvex(k));
    }
    let quantum_vars: Vec<(&str, i32)> = if quantum {
        vec![("q1", 4), ("q2", 2 * (2 - k as i32))]
    } else {
        vec![]
    };
    let label = SpaceId::Hirzebruch(k).to_string();
    let pres = Presentation::from_parts(label, &[("x1", 2), ("x4", 2)], &quantum_vars, |u| {
        let srcs: [String; 2] = match (quantum, k) {
            (false, k) => ["x1^2".into(), format!("x4^2 - {k}*x1*x4")],
            (true, 0) => ["x1^2 - q2".into(), "x4^2 - q1".into()],
            (true, _) => ["x1^2 - (x4 - x1)*q2".into(), "x4^2 - x1*x4 - q1".into()],
        };
        srcs.iter()
            .map(|s| crate::algebra::parse_polynomial(s, u).map_err(QuotientError::from))
            .collect()
    })?;
    Ok(pres)
}

/// `<X_i | X_j | X_k>_s` on `CP^n`.
pub fn cpn_gw_triple(n: u32, i: u32, j: u32, k: u32, s: u32) -> u32 {
    if i > n || j > n || k > n {
        return 0;
    }
    let sum = i + j + k;
    match s {
        0 => (sum == n) as u32,
        1 => (sum == 2 * n + 1) as u32,
        _ => 0,
    }
}

/// A ring together with the additive basis used to read off products.
#[derive(Clone, Debug)]
pub struct Space {
    pub label: String,
    pub descriptor: SpaceDescriptor,
    pub presentation: Presentation,
    pub basis: Basis,
    pub chart: Option<SymplecticChart>,
}

fn element(label: &str, classical: &str, lift: &str, u: &Arc<Universe>) -> Result<BasisElement<crate::Rational>, SpaceError> {
    Ok(BasisElement {
        label: label.into(),
        classical: parse(classical, u)?,
        lift: parse(lift, u)?,
    })
}

impl Space {
    pub fn build(id: &SpaceId, quantum: bool) -> Result<Self, SpaceError> {
        let descriptor = SpaceDescriptor::of(id)?;
        let (presentation, basis, chart) = match *id {
            SpaceId::Projective(n) => {
                let pres = cpn_presentation(n, quantum)?;
                let u = pres.universe().clone();
                let els = (0..=n)
                    .map(|i| {
                        let m = match i {
                            0 => "1".to_string(),
                            1 => "p".to_string(),
                            _ => format!("p^{i}"),
                        };
                        element(&m, &m, &m, &u)
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let chart = quantum.then(|| SymplecticChart::new(vec![("p", "q")]));
                (pres, GradedBasis::new(els), chart.transpose().ok().flatten())
            }
            SpaceId::Grassmannian { k, n } => {
                let pres = grassmannian_presentation(k, n, quantum)?;
                let u = pres.universe().clone();
                let s = grassmannian_s_classes(&u, k, n)?;
                let els = schubert::enumerate_diagrams(k, n)
                    .into_iter()
                    .map(|d| {
                        let lift = schubert::giambelli_in(&d, &s);
                        BasisElement {
                            label: d.to_string(),
                            classical: lift.clone(),
                            lift,
                        }
                    })
                    .collect();
                let chart = (quantum && k == 1).then(|| SymplecticChart::new(vec![("c1", "q")]));
                (pres, GradedBasis::new(els), chart.transpose().ok().flatten())
            }
            SpaceId::Flag3(chart_kind) => {
                let pres = flag3_presentation(quantum, chart_kind)?;
                let u = pres.universe().clone();
                let (a, b) = match chart_kind {
                    FlagChart::P => ("p1", "p2"),
                    FlagChart::X => ("x1", "(x1 + x2)"),
                };
                let quantum_lift = |base: String, corr: &str| {
                    if quantum {
                        format!("{base} - {corr}")
                    } else {
                        base
                    }
                };
                let rows = [
                    ("1", "1".to_string(), "1".to_string()),
                    ("a", a.to_string(), a.to_string()),
                    ("b", b.to_string(), b.to_string()),
                    ("a^2", format!("{a}^2"), quantum_lift(format!("{a}^2"), "q1")),
                    ("b^2", format!("{b}^2"), quantum_lift(format!("{b}^2"), "q2")),
                    (
                        "a^2b",
                        format!("{a}^2*{b}"),
                        quantum_lift(format!("{a}^2*{b}"), &format!("q1*{b}")),
                    ),
                ];
                let els = rows
                    .iter()
                    .map(|(l, c, lift)| element(l, c, lift, &u))
                    .collect::<Result<Vec<_>, _>>()?;
                let chart = (quantum && chart_kind == FlagChart::P)
                    .then(|| SymplecticChart::new(vec![("p1", "q1"), ("p2", "q2")]));
                (pres, GradedBasis::new(els), chart.transpose().ok().flatten())
            }
            SpaceId::Hirzebruch(k) => {
                let pres = hirzebruch_presentation(k, quantum)?;
                let u = pres.universe().clone();
                let els = [("1", "1"), ("x1", "x1"), ("x4", "x4"), ("z", "x1*x4")]
                    .iter()
                    .map(|(l, m)| element(l, m, m, &u))
                    .collect::<Result<Vec<_>, _>>()?;
                let chart = quantum.then(|| SymplecticChart::new(vec![("x4", "q1"), ("x1", "q2")]));
                (pres, GradedBasis::new(els), chart.transpose().ok().flatten())
            }
        };
        Ok(Space {
            label: id.to_string(),
            descriptor,
            presentation,
            basis,
            chart,
        })
    }

    pub fn parse_and_build(id: &str, quantum: bool) -> Result<Self, SpaceError> {
        Self::build(&id.parse()?, quantum)
    }

    /// Degree cap large enough for every product of two basis elements.
    pub fn degree_cap(&self) -> i64 {
        let dim = self.descriptor.complex_dimension;
        self.presentation.default_cap(dim).max(4 * dim as i64)
    }

    pub fn engine(&self) -> Result<Engine, SpaceError> {
        Ok(Engine::complete(&self.presentation, self.degree_cap())?)
    }

    pub fn expander(&self) -> Result<RingExpander, SpaceError> {
        let ex = RingExpander::new(self.engine()?, self.basis.clone())?;
        Ok(ex)
    }

    /// The top-degree basis label.
    pub fn top_label(&self) -> &str {
        &self.basis.elements[self.basis.top].label
    }

    /// Betti numbers of the classical ring, from the normal-form engine.
    pub fn graded_dimensions(&self) -> Result<Vec<usize>, SpaceError> {
        let classical = self.presentation.classical()?;
        let dim = self.descriptor.complex_dimension as i64;
        let engine = Engine::complete(&classical, 2 * dim + 2)?;
        (0..=dim)
            .map(|d| Ok(engine.standard_monomials(2 * d)?.len()))
            .collect()
    }
}

/// Quantum products of all pairs of basis elements, `i <= j`.
#[derive(Clone, Debug)]
pub struct ProductTable {
    pub labels: Vec<String>,
    pub entries: Vec<(usize, usize, Expansion<crate::Rational>)>,
}

impl ProductTable {
    pub fn get(&self, i: usize, j: usize) -> Option<&Expansion<crate::Rational>> {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        self.entries
            .iter()
            .find(|(a, b, _)| *a == i && *b == j)
            .map(|(_, _, e)| e)
    }
}

pub fn quantum_product_table(expander: &RingExpander) -> Result<ProductTable, SpaceError> {
    let basis = expander.basis();
    let mut entries = Vec::new();
    for i in 0..basis.len() {
        for j in i..basis.len() {
            entries.push((i, j, expander.product(i, j)?));
        }
    }
    Ok(ProductTable {
        labels: basis.elements.iter().map(|e| e.label.clone()).collect(),
        entries,
    })
}

/// A Young diagram read back from a Grassmannian basis label.
pub fn diagram_of_label(label: &str, k: u32, n: u32) -> Result<YoungDiagram, SpaceError> {
    YoungDiagram::parse(label, k, n).map_err(|e| SpaceError::InvalidParameters(e.to_string()))
}
