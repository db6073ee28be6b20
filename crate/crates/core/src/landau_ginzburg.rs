//! Landau-Ginzburg potentials of Grassmannians and the residue sum over
//! critical points of the quantum potential.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{Polynomial, TruncatedSeries};
use crate::spaces::{grassmannian_presentation, grassmannian_s_classes, Space, SpaceError, SpaceId};
use crate::{Poly, Rational};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LgError {
    #[error("need 1 <= k <= n-1, got k={k}, n={n}")]
    Range { k: u32, n: u32 },
    #[error("operation needs a {0} potential")]
    WrongKind(&'static str),
    #[error("q must be nonzero")]
    ZeroQ,
    #[error("found {found} critical points, expected {expected}")]
    RootCount { found: usize, expected: usize },
    #[error("degenerate critical point at {point:?}: |h| = {hessian:e}")]
    Degenerate { point: Vec<[f64; 2]>, hessian: f64 },
    #[error("T must be homogeneous of degree {expected}, got {got}")]
    WrongDegree { expected: i64, got: String },
    #[error("residue sum {sum:?} is not within {tol:e} of an integer")]
    NotIntegral { sum: [f64; 2], tol: f64 },
    #[error(transparent)]
    Space(#[from] SpaceError),
}

impl From<crate::algebra::AlgebraError> for LgError {
    fn from(e: crate::algebra::AlgebraError) -> Self {
        LgError::Space(e.into())
    }
}

impl From<crate::quotient::QuotientError> for LgError {
    fn from(e: crate::quotient::QuotientError) -> Self {
        LgError::Space(e.into())
    }
}

/// `P = w_{n+1}` in `c_1..c_k`, plus `(-1)^{n-k} c_1 q` when quantum.
#[derive(Clone, Debug, PartialEq)]
pub struct Potential {
    pub body: Poly,
    pub k: u32,
    pub n: u32,
    pub quantum: bool,
}

pub fn potential(k: u32, n: u32, quantum: bool) -> Result<Potential, LgError> {
    if k < 1 || k >= n {
        return Err(LgError::Range { k, n });
    }
    let pres = grassmannian_presentation(k, n, quantum)?;
    let u = pres.universe();
    let names: Vec<String> = (1..=k).map(|i| format!("c{i}")).collect();
    let names: Vec<&str> = names.iter().map(String::as_str).collect();
    let w = TruncatedSeries::unit_from_vars(u, &names, n as usize + 1)?.log()?;
    let mut body = w.coeff(n as usize + 1).clone();
    if quantum {
        let c1q = &Polynomial::var_at(u, 0) * &Polynomial::var_at(u, k as usize);
        body = if (n - k) % 2 == 0 { &body + &c1q } else { &body - &c1q };
    }
    Ok(Potential { body, k, n, quantum })
}

impl Potential {
    /// `(dP/dc_1, ..., dP/dc_k)`.
    pub fn gradient(&self) -> Vec<Poly> {
        (0..self.k as usize).map(|i| self.body.diff(i)).collect()
    }

    pub fn hessian(&self) -> Vec<Vec<Poly>> {
        let g = self.gradient();
        g.iter()
            .map(|gi| (0..self.k as usize).map(|j| gi.diff(j)).collect())
            .collect()
    }
}

/// Whether `dP/dc_i = s_{n+1-i}` for every `i`, with `s` from the series
/// inverse. Only meaningful for classical potentials.
pub fn check_gradient(pot: &Potential) -> Result<bool, LgError> {
    if pot.quantum {
        return Err(LgError::WrongKind("classical"));
    }
    let s = grassmannian_s_classes(pot.body.universe(), pot.k, pot.n + 1)?;
    Ok(pot
        .gradient()
        .iter()
        .enumerate()
        .all(|(i, g)| *g == s[(pot.n - i as u32) as usize - 1]))
}

/// Whether the gradient components are exactly the presentation's relations
/// (as a set), classical or quantum.
pub fn gradient_matches_relations(pot: &Potential) -> Result<bool, LgError> {
    let pres = grassmannian_presentation(pot.k, pot.n, pot.quantum)?;
    let mut grad = pot.gradient();
    let mut rels = pres.relations().to_vec();
    let key = |p: &Poly| p.to_string();
    grad.sort_by_key(key);
    rels.sort_by_key(key);
    Ok(grad == rels)
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct LgConfig {
    pub residual_tol: f64,
    pub merge_tol: f64,
    pub starts: usize,
    pub max_iter: usize,
    pub seed: u64,
}

impl Default for LgConfig {
    fn default() -> Self {
        LgConfig {
            residual_tol: 1e-10,
            merge_tol: 1e-7,
            starts: 512,
            max_iter: 200,
            seed: 0x5eed,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CriticalPoint {
    #[serde(serialize_with = "ser_complex_vec")]
    pub coordinates: Vec<Complex64>,
    pub residual: f64,
    #[serde(serialize_with = "ser_complex")]
    pub hessian_det: Complex64,
}

fn ser_complex<S: serde::Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
    [z.re, z.im].serialize(s)
}

fn ser_complex_vec<S: serde::Serializer>(v: &[Complex64], s: S) -> Result<S::Ok, S::Error> {
    v.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>().serialize(s)
}

struct NumericSystem {
    gradient: Vec<Poly>,
    hessian: Vec<Vec<Poly>>,
    q: Complex64,
}

impl NumericSystem {
    fn point(&self, c: &[Complex64]) -> Vec<Complex64> {
        let mut p = c.to_vec();
        p.push(self.q);
        p
    }

    fn residual(&self, c: &[Complex64]) -> (DVector<Complex64>, f64) {
        let pt = self.point(c);
        let g = DVector::from_iterator(c.len(), self.gradient.iter().map(|g| g.eval_complex(&pt)));
        let r = g.iter().map(|z| z.norm()).fold(0.0, f64::max);
        (g, r)
    }

    fn jacobian(&self, c: &[Complex64]) -> DMatrix<Complex64> {
        let pt = self.point(c);
        let k = c.len();
        DMatrix::from_fn(k, k, |i, j| self.hessian[i][j].eval_complex(&pt))
    }

    fn newton(&self, start: Vec<Complex64>, cfg: &LgConfig) -> Option<(Vec<Complex64>, f64)> {
        let mut c = start;
        for _ in 0..cfg.max_iter {
            let (g, r) = self.residual(&c);
            if !r.is_finite() {
                return None;
            }
            if r < cfg.residual_tol * 1e-3 {
                break;
            }
            let step = self.jacobian(&c).lu().solve(&(-g))?;
            for (ci, d) in c.iter_mut().zip(step.iter()) {
                *ci += d;
            }
        }
        let (_, r) = self.residual(&c);
        (r < cfg.residual_tol).then_some((c, r))
    }
}

/// Critical points of the quantum potential at `q`, by multistart Newton.
pub fn critical_points(
    pot: &Potential,
    q: Complex64,
    cfg: &LgConfig,
) -> Result<Vec<CriticalPoint>, LgError> {
    if !pot.quantum {
        return Err(LgError::WrongKind("quantum"));
    }
    if q.norm() == 0.0 {
        return Err(LgError::ZeroQ);
    }
    let sys = NumericSystem {
        gradient: pot.gradient(),
        hessian: pot.hessian(),
        q,
    };
    let k = pot.k as usize;
    let scale: Vec<f64> = (1..=k)
        .map(|i| 2.0 * q.norm().powf(i as f64 / pot.n as f64))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let starts: Vec<Vec<Complex64>> = (0..cfg.starts)
        .map(|_| {
            scale
                .iter()
                .map(|&s| Complex64::new(rng.random_range(-s..s), rng.random_range(-s..s)))
                .collect()
        })
        .collect();
    let found: Vec<Option<(Vec<Complex64>, f64)>> =
        starts.into_par_iter().map(|s| sys.newton(s, cfg)).collect();

    let mut roots: Vec<(Vec<Complex64>, f64)> = Vec::new();
    for (c, r) in found.into_iter().flatten() {
        let dup = roots.iter().any(|(x, _)| {
            x.iter().zip(&c).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max) < cfg.merge_tol
        });
        if !dup {
            roots.push((c, r));
        }
    }
    roots.sort_by(|(a, _), (b, _)| {
        let key = |v: &[Complex64]| v.iter().flat_map(|z| [z.re, z.im]).collect::<Vec<f64>>();
        key(a)
            .partial_cmp(&key(b))
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    Ok(roots
        .into_iter()
        .map(|(c, residual)| {
            let hessian_det = sys.jacobian(&c).determinant();
            CriticalPoint {
                coordinates: c,
                residual,
                hessian_det,
            }
        })
        .collect())
}

/// `det(d^2 P / dc_i dc_j)` at a point, with `q` appended for quantum
/// potentials.
pub fn hessian_det(pot: &Potential, c: &[Complex64], q: Complex64) -> Complex64 {
    let mut pt = c.to_vec();
    if pot.quantum {
        pt.push(q);
    }
    let k = pot.k as usize;
    let h = pot.hessian();
    DMatrix::from_fn(k, k, |i, j| h[i][j].eval_complex(&pt)).determinant()
}

fn binomial(n: u32, k: u32) -> usize {
    (0..k).fold(1usize, |acc, i| acc * (n - i) as usize / (i + 1) as usize)
}

#[derive(Clone, Debug, Serialize)]
pub struct ResidueReport {
    pub space: String,
    #[serde(rename = "T")]
    pub t: String,
    pub q: [f64; 2],
    pub roots: Vec<CriticalPoint>,
    pub hessians: Vec<[f64; 2]>,
    pub sum: [f64; 2],
    pub rounded: i64,
    /// Top-class coefficient of `T` in the classical quotient.
    pub oracle: i64,
    #[serde(rename = "match")]
    pub matches: bool,
}

/// Intersection number of a top-degree class, read off as the coefficient
/// of the point class after classical reduction.
pub fn intersection_number(k: u32, n: u32, t: &Poly) -> Result<Rational, LgError> {
    let space = Space::build(&SpaceId::Grassmannian { k, n }, false)?;
    let expander = space.expander()?;
    let c = expander.top_coefficient(t)?;
    Ok(c.constant_term())
}

/// `sum_x T(x) / h(x)` over the critical points of the quantum potential,
/// compared in absolute value with the classical intersection number.
pub fn vafa_intriligator(
    k: u32,
    n: u32,
    t: &Poly,
    q: Complex64,
    tol: f64,
    cfg: &LgConfig,
) -> Result<ResidueReport, LgError> {
    let pot = potential(k, n, true)?;
    let expected_degree = 2 * (k * (n - k)) as i64;
    match t.homogeneous_degree() {
        Some(Some(d)) if d == expected_degree => {}
        _ => {
            return Err(LgError::WrongDegree {
                expected: expected_degree,
                got: t.to_string(),
            })
        }
    }
    let roots = critical_points(&pot, q, cfg)?;
    let expected = binomial(n, k);
    if roots.len() != expected {
        return Err(LgError::RootCount {
            found: roots.len(),
            expected,
        });
    }
    let tq = t.rehome(pot.body.universe())?;
    let mut sum = Complex64::new(0.0, 0.0);
    for r in &roots {
        let h = r.hessian_det;
        if h.norm() < 1e-12 {
            return Err(LgError::Degenerate {
                point: r.coordinates.iter().map(|z| [z.re, z.im]).collect(),
                hessian: h.norm(),
            });
        }
        let mut pt = r.coordinates.clone();
        pt.push(q);
        sum += tq.eval_complex(&pt) / h;
    }
    let rounded = sum.re.round();
    if (sum.re - rounded).abs() > tol || sum.im.abs() > tol {
        return Err(LgError::NotIntegral {
            sum: [sum.re, sum.im],
            tol,
        });
    }
    let classical = Space::build(&SpaceId::Grassmannian { k, n }, false)?;
    let oracle = intersection_number(k, n, &t.rehome(classical.presentation.universe())?)?;
    let oracle = oracle.to_integer().to_i64().unwrap_or(i64::MAX);
    let rounded = rounded as i64;
    Ok(ResidueReport {
        space: format!("gr:{k}:{n}"),
        t: t.to_string(),
        q: [q.re, q.im],
        hessians: roots.iter().map(|r| [r.hessian_det.re, r.hessian_det.im]).collect(),
        roots,
        sum: [sum.re, sum.im],
        rounded,
        oracle,
        matches: rounded.abs() == oracle.abs(),
    })
}

/// All monomials in `c_1..c_k` of the top degree `2k(n-k)`.
pub fn top_degree_monomials(k: u32, n: u32) -> Result<Vec<Poly>, LgError> {
    let pres = grassmannian_presentation(k, n, false)?;
    let u = pres.universe().clone();
    let top = 2 * (k * (n - k)) as i64;
    Ok(crate::quotient::monomials_of_degree(&u, top, 0..u.len())
        .into_iter()
        .map(|m| Polynomial::term(&u, m, Rational::from_integer(1.into())))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse;

    #[test]
    fn potential_gr24() {
        let pot = potential(2, 4, false).unwrap();
        let want = parse("(c1^5 - 5*c1^3*c2 + 5*c1*c2^2)/5", pot.body.universe()).unwrap();
        assert_eq!(pot.body, want);
        assert!(check_gradient(&pot).unwrap());
        assert!(gradient_matches_relations(&pot).unwrap());
        let q = potential(2, 4, true).unwrap();
        let diff = &q.body - &pot.body.rehome(q.body.universe()).unwrap();
        assert_eq!(diff, parse("c1*q", q.body.universe()).unwrap());
        assert!(gradient_matches_relations(&q).unwrap());
    }

    #[test]
    fn potential_lines() {
        for n in 1..6u32 {
            let pot = potential(1, n + 1, false).unwrap();
            let sign = if (n + 1) % 2 == 0 { "" } else { "-" };
            let want = parse(&format!("{sign}c1^{}/{}", n + 2, n + 2), pot.body.universe()).unwrap();
            assert_eq!(pot.body, want);
        }
    }

    #[test]
    fn perturbed_potential_fails() {
        let mut pot = potential(1, 3, false).unwrap();
        assert!(check_gradient(&pot).unwrap());
        pot.body = &pot.body + &parse("c1^2", pot.body.universe()).unwrap();
        assert!(!check_gradient(&pot).unwrap());
    }

    #[test]
    fn root_counts() {
        let cfg = LgConfig::default();
        let one = Complex64::new(1.0, 0.0);
        for (k, n, count) in [(1, 2, 2), (1, 3, 3), (2, 4, 6), (2, 5, 10)] {
            let pot = potential(k, n, true).unwrap();
            let roots = critical_points(&pot, one, &cfg).unwrap();
            assert_eq!(roots.len(), count, "gr:{k}:{n}");
            assert!(roots.iter().all(|r| r.residual < cfg.residual_tol));
        }
    }

    #[test]
    fn cp1_hessian() {
        let pot = potential(1, 2, true).unwrap();
        let q = Complex64::new(4.0, 0.0);
        for r in critical_points(&pot, q, &LgConfig::default()).unwrap() {
            let c = r.coordinates[0];
            assert!((c * c - q).norm() < 1e-9);
            assert!((r.hessian_det.norm() - 2.0 * c.norm()).abs() < 1e-9);
        }
    }

    #[test]
    fn gr24_c1_fourth() {
        let pres = grassmannian_presentation(2, 4, false).unwrap();
        let t = parse("c1^4", pres.universe()).unwrap();
        let cfg = LgConfig::default();
        let rep = vafa_intriligator(2, 4, &t, Complex64::new(1.0, 0.0), 1e-6, &cfg).unwrap();
        assert_eq!(rep.oracle.abs(), 2);
        assert_eq!(rep.rounded.abs(), 2);
        assert!(rep.matches);
    }

    #[test]
    fn wrong_degree_rejected() {
        let pres = grassmannian_presentation(2, 4, false).unwrap();
        let t = parse("c1^3", pres.universe()).unwrap();
        let r = vafa_intriligator(2, 4, &t, Complex64::new(1.0, 0.0), 1e-6, &LgConfig::default());
        assert!(matches!(r, Err(LgError::WrongDegree { .. })));
    }
}
