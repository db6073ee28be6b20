//! Young diagrams in a `k x (n-k)` box, the Giambelli determinant, and
//! Schubert products computed through the Borel presentation.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{Polynomial, Universe};
use crate::spaces::{Space, SpaceError, SpaceId};
use crate::{Poly, Rational, RingExpander};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SchubertError {
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("diagrams live in different Grassmannians: {0} and {1}")]
    ContextMismatch(String, String),
    #[error("basis conversion failed: {0}")]
    Space(#[from] SpaceError),
}

/// Partition `lambda_1 >= ... >= lambda_k >= 0` with `lambda_1 <= n - k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct YoungDiagram {
    rows: Vec<u32>,
    k: u32,
    n: u32,
}

impl YoungDiagram {
    pub fn new(rows: Vec<u32>, k: u32, n: u32) -> Result<Self, SchubertError> {
        if k < 1 || k >= n {
            return Err(SchubertError::InvalidDiagram(format!(
                "need 1 <= k <= n-1, got k={k}, n={n}"
            )));
        }
        if rows.len() > k as usize {
            return Err(SchubertError::InvalidDiagram(format!(
                "{} rows but k = {k}",
                rows.len()
            )));
        }
        let mut rows = rows;
        rows.resize(k as usize, 0);
        if rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(SchubertError::InvalidDiagram(format!(
                "rows {rows:?} are not non-increasing"
            )));
        }
        if rows[0] > n - k {
            return Err(SchubertError::InvalidDiagram(format!(
                "row length {} exceeds n-k = {}",
                rows[0],
                n - k
            )));
        }
        Ok(YoungDiagram { rows, k, n })
    }

    /// `[2,1]`; missing trailing rows are zero.
    pub fn parse(src: &str, k: u32, n: u32) -> Result<Self, SchubertError> {
        let body = src
            .trim()
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| SchubertError::InvalidDiagram(format!("expected `[l1,l2,...]`, got `{src}`")))?;
        let rows = if body.trim().is_empty() {
            vec![]
        } else {
            body.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<u32>()
                        .map_err(|_| SchubertError::InvalidDiagram(format!("bad row `{t}`")))
                })
                .collect::<Result<Vec<_>, _>>()?
        };
        Self::new(rows, k, n)
    }

    pub fn empty(k: u32, n: u32) -> Result<Self, SchubertError> {
        Self::new(vec![], k, n)
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    pub fn context(&self) -> (u32, u32) {
        (self.k, self.n)
    }

    pub fn codegree(&self) -> u32 {
        self.rows.iter().sum()
    }
}

impl Serialize for YoungDiagram {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Display for YoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.rows.iter().map(u32::to_string).collect();
        write!(f, "[{}]", rows.join(","))
    }
}

/// All diagrams in the box, by codegree and then lexicographically.
pub fn enumerate_diagrams(k: u32, n: u32) -> Vec<YoungDiagram> {
    if k < 1 || k >= n {
        return vec![];
    }
    fn go(k: usize, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == k {
            out.push(prefix.clone());
            return;
        }
        for v in 0..=max {
            prefix.push(v);
            go(k, v, prefix, out);
            prefix.pop();
        }
    }
    let mut all = Vec::new();
    go(k as usize, n - k, &mut Vec::new(), &mut all);
    all.sort_by(|a, b| {
        let (sa, sb): (u32, u32) = (a.iter().sum(), b.iter().sum());
        sa.cmp(&sb).then_with(|| a.cmp(b))
    });
    all.into_iter()
        .map(|rows| YoungDiagram { rows, k, n })
        .collect()
}

/// `s_1, ..., s_{n-k}` with `|s_j| = 2j`.
pub fn special_class_universe(k: u32, n: u32) -> Arc<Universe> {
    Universe::new((1..=n - k).map(|j| (format!("s{j}"), 2 * j as i32))).expect("fresh names")
}

fn determinant(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let universe = m[0][0].universe().clone();
    let mut out = Polynomial::zero(&universe);
    for col in 0..n {
        if m[0][col].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Poly>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(j, _)| *j != col)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][col] * &determinant(&minor);
        out = if col % 2 == 0 { &out + &term } else { &out - &term };
    }
    out
}

/// `det(s_{lambda_i + j - i})` with `s` given as polynomials in some ring:
/// `s[j-1]` is `s_j`. Entries outside `0..=n-k` are zero.
pub fn giambelli_in(lambda: &YoungDiagram, s: &[Poly]) -> Poly {
    let universe = s[0].universe().clone();
    let k = lambda.k as i64;
    let top = (lambda.n - lambda.k) as i64;
    let entry = |m: i64| -> Poly {
        match m {
            0 => Polynomial::one(&universe),
            m if m < 0 || m > top => Polynomial::zero(&universe),
            m => s[m as usize - 1].clone(),
        }
    };
    let matrix: Vec<Vec<Poly>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| entry(lambda.rows[i as usize] as i64 + j - i))
                .collect()
        })
        .collect();
    determinant(&matrix)
}

/// The Schur polynomial of `lambda` in the special classes.
pub fn giambelli(lambda: &YoungDiagram) -> Poly {
    let u = special_class_universe(lambda.k, lambda.n);
    let s: Vec<Poly> = (0..u.len()).map(|i| Polynomial::var_at(&u, i)).collect();
    giambelli_in(lambda, &s)
}

/// `c_j = (-1)^j x(1^j)`.
pub fn chern_as_schubert(j: u32, k: u32, n: u32) -> Result<(i32, YoungDiagram), SchubertError> {
    if j < 1 || j > k {
        return Err(SchubertError::InvalidDiagram(format!("need 1 <= j <= k, got j={j}")));
    }
    let sign = if j % 2 == 0 { 1 } else { -1 };
    Ok((sign, YoungDiagram::new(vec![1; j as usize], k, n)?))
}

/// One term `coeff * q^q_power * diagram`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SchubertTerm {
    pub diagram: YoungDiagram,
    pub q_power: u32,
    #[serde(serialize_with = "ser_rational")]
    pub coeff: Rational,
}

fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

pub fn render_terms(terms: &[SchubertTerm]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, t) in terms.iter().enumerate() {
        let neg = t.coeff < Rational::zero();
        let abs = if neg { -t.coeff.clone() } else { t.coeff.clone() };
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mut factors = Vec::new();
        if !abs.is_one() {
            factors.push(abs.to_string());
        }
        match t.q_power {
            0 => {}
            1 => factors.push("q".into()),
            d => factors.push(format!("q^{d}")),
        }
        factors.push(t.diagram.to_string());
        out.push_str(&factors.join("*"));
    }
    out
}

/// Quantum (or classical) cohomology of `Gr_k(C^n)` in the Schubert basis.
pub struct SchubertRing {
    k: u32,
    n: u32,
    diagrams: Vec<YoungDiagram>,
    expander: RingExpander,
}

impl SchubertRing {
    pub fn new(k: u32, n: u32, quantum: bool) -> Result<Self, SchubertError> {
        let space = Space::build(&SpaceId::Grassmannian { k, n }, quantum)?;
        Ok(SchubertRing {
            k,
            n,
            diagrams: enumerate_diagrams(k, n),
            expander: space.expander()?,
        })
    }

    pub fn diagrams(&self) -> &[YoungDiagram] {
        &self.diagrams
    }

    pub fn expander(&self) -> &RingExpander {
        &self.expander
    }

    fn index(&self, d: &YoungDiagram) -> Result<usize, SchubertError> {
        if d.context() != (self.k, self.n) {
            return Err(SchubertError::ContextMismatch(
                format!("gr:{}:{}", d.k, d.n),
                format!("gr:{}:{}", self.k, self.n),
            ));
        }
        Ok(self.diagrams.iter().position(|x| x == d).expect("enumerated"))
    }

    /// Expand any ring element in the Schubert basis.
    pub fn expand(&self, p: &Poly) -> Result<Vec<SchubertTerm>, SchubertError> {
        let exp = self.expander.expand(p).map_err(SpaceError::from)?;
        let mut terms = Vec::new();
        for (d, c) in self.diagrams.iter().zip(exp.coeffs) {
            for (m, coeff) in c.terms() {
                let q_power = m.exps().get(self.k as usize).copied().unwrap_or(0);
                terms.push(SchubertTerm {
                    diagram: d.clone(),
                    q_power,
                    coeff: coeff.clone(),
                });
            }
        }
        terms.sort_by(|a, b| {
            b.q_power.cmp(&a.q_power).then_with(|| {
                let i = self.diagrams.iter().position(|x| *x == a.diagram);
                let j = self.diagrams.iter().position(|x| *x == b.diagram);
                j.cmp(&i)
            })
        });
        Ok(terms)
    }

    pub fn product(
        &self,
        lambda: &YoungDiagram,
        mu: &YoungDiagram,
    ) -> Result<Vec<SchubertTerm>, SchubertError> {
        let (i, j) = (self.index(lambda)?, self.index(mu)?);
        let e = &self.expander.basis().elements;
        self.expand(&(&e[i].lift * &e[j].lift))
    }

    /// Lift of a diagram into the `c`-variable ring.
    pub fn class(&self, d: &YoungDiagram) -> Result<Poly, SchubertError> {
        Ok(self.expander.basis().elements[self.index(d)?].lift.clone())
    }
}

/// Product of two Schubert classes, re-expanded in the Schubert basis.
pub fn schubert_product(
    lambda: &YoungDiagram,
    mu: &YoungDiagram,
    quantum: bool,
) -> Result<Vec<SchubertTerm>, SchubertError> {
    if lambda.context() != mu.context() {
        return Err(SchubertError::ContextMismatch(
            lambda.to_string(),
            mu.to_string(),
        ));
    }
    let (k, n) = lambda.context();
    SchubertRing::new(k, n, quantum)?.product(lambda, mu)
}

/// Whether every structure constant is a non-negative integer.
pub fn is_positive(terms: &[SchubertTerm]) -> bool {
    terms
        .iter()
        .all(|t| t.coeff.is_integer() && t.coeff.to_integer().to_i64().is_some_and(|c| c >= 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse;

    fn d(rows: &[u32], k: u32, n: u32) -> YoungDiagram {
        YoungDiagram::new(rows.to_vec(), k, n).unwrap()
    }

    #[test]
    fn enumerate_gr24() {
        let ds: Vec<String> = enumerate_diagrams(2, 4).iter().map(|d| d.to_string()).collect();
        assert_eq!(ds, ["[0,0]", "[1,0]", "[1,1]", "[2,0]", "[2,1]", "[2,2]"]);
        let mut counts = [0; 5];
        for d in enumerate_diagrams(2, 4) {
            counts[d.codegree() as usize] += 1;
        }
        assert_eq!(counts, [1, 1, 2, 1, 1]);
        assert_eq!(enumerate_diagrams(1, 5).len(), 5);
    }

    #[test]
    fn giambelli_examples() {
        let u = special_class_universe(2, 4);
        assert_eq!(giambelli(&d(&[1, 1], 2, 4)), parse("s1^2 - s2", &u).unwrap());
        assert_eq!(giambelli(&d(&[2], 2, 4)), parse("s2", &u).unwrap());
        assert_eq!(giambelli(&d(&[], 2, 4)), parse("1", &u).unwrap());
        assert_eq!(giambelli(&d(&[2, 1], 2, 4)), parse("s1*s2", &u).unwrap());
        assert_eq!(giambelli(&d(&[2, 2], 2, 4)), parse("s2^2", &u).unwrap());
    }

    #[test]
    fn diagram_syntax() {
        assert_eq!(YoungDiagram::parse("[2,1]", 2, 4).unwrap(), d(&[2, 1], 2, 4));
        assert_eq!(YoungDiagram::parse("[1]", 2, 4).unwrap(), d(&[1, 0], 2, 4));
        assert!(YoungDiagram::parse("[1,2]", 2, 4).is_err());
        assert!(YoungDiagram::parse("[3]", 2, 4).is_err());
        assert!(YoungDiagram::parse("2,1", 2, 4).is_err());
    }

    #[test]
    fn chern_classes() {
        assert_eq!(chern_as_schubert(1, 2, 4).unwrap(), (-1, d(&[1], 2, 4)));
        assert_eq!(chern_as_schubert(2, 2, 4).unwrap(), (1, d(&[1, 1], 2, 4)));
        assert!(chern_as_schubert(3, 2, 4).is_err());
    }

    #[test]
    fn products_gr24() {
        let classical = SchubertRing::new(2, 4, false).unwrap();
        let p = classical.product(&d(&[1], 2, 4), &d(&[1], 2, 4)).unwrap();
        assert_eq!(render_terms(&p), "[2,0] + [1,1]");
        let quantum = SchubertRing::new(2, 4, true).unwrap();
        let p = quantum.product(&d(&[2, 2], 2, 4), &d(&[1], 2, 4)).unwrap();
        assert_eq!(render_terms(&p), "q*[1,0]");
        let unit = d(&[], 2, 4);
        for l in enumerate_diagrams(2, 4) {
            let p = quantum.product(&l, &unit).unwrap();
            assert_eq!(render_terms(&p), l.to_string());
        }
    }
}
