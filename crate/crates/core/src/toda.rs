//! The open Toda lattice on three sites.
//!
//! State `(a1, a2, b1, b2, b3)` with `a_i > 0` and `b1 + b2 + b3 = 0`:
//!
//! ```text
//! a1' = a1 (b1 - b2)    b1' = -a1
//! a2' = a2 (b2 - b3)    b2' = a1 - a2
//!                       b3' = a2
//! ```
//!
//! which is the Lax equation `X' = [X, Y]`.

use std::sync::Arc;

use nalgebra::{Matrix3, SymmetricEigen};
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{Polynomial, Universe};
use crate::spaces::flag3_borel_relations;
use crate::{parse, Poly};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TodaError {
    #[error("invalid state: {0}")]
    InvalidState(String),
    #[error("time step must be positive and finite, got {0}")]
    InvalidStep(f64),
    #[error("a{index} became non-positive at step {step}; the time step is too large")]
    NonPositive { step: usize, index: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TodaState {
    pub a: [f64; 2],
    pub b: [f64; 3],
}

const TRACE_TOL: f64 = 1e-12;

impl TodaState {
    pub fn new(a: [f64; 2], b: [f64; 3]) -> Result<Self, TodaError> {
        if a.iter().chain(&b).any(|x| !x.is_finite()) {
            return Err(TodaError::InvalidState("coordinates must be finite".into()));
        }
        if a.iter().any(|&x| x <= 0.0) {
            return Err(TodaError::InvalidState(format!("a = {a:?} must be positive")));
        }
        let trace = b.iter().sum::<f64>();
        if trace.abs() > TRACE_TOL {
            return Err(TodaError::InvalidState(format!(
                "b1 + b2 + b3 = {trace:e}, must vanish"
            )));
        }
        Ok(TodaState { a, b })
    }

    pub fn trace(&self) -> f64 {
        self.b.iter().sum()
    }

    fn axpy(&self, h: f64, d: &TodaState) -> TodaState {
        TodaState {
            a: [self.a[0] + h * d.a[0], self.a[1] + h * d.a[1]],
            b: [
                self.b[0] + h * d.b[0],
                self.b[1] + h * d.b[1],
                self.b[2] + h * d.b[2],
            ],
        }
    }

    /// Eigenvalues of `X`, ascending. `X` is conjugate to the symmetric
    /// tridiagonal matrix with off-diagonal entries `sqrt(a_i)`.
    pub fn spectrum(&self) -> [f64; 3] {
        let (s1, s2) = (self.a[0].sqrt(), self.a[1].sqrt());
        let j = Matrix3::new(
            self.b[0], s1, 0.0, //
            s1, self.b[1], s2, //
            0.0, s2, self.b[2],
        );
        let mut ev: Vec<f64> = SymmetricEigen::new(j).eigenvalues.iter().copied().collect();
        ev.sort_by(|x, y| x.total_cmp(y));
        [ev[0], ev[1], ev[2]]
    }
}

pub fn toda_vector_field(s: &TodaState) -> TodaState {
    let [a1, a2] = s.a;
    let [b1, b2, b3] = s.b;
    TodaState {
        a: [a1 * (b1 - b2), a2 * (b2 - b3)],
        b: [-a1, a1 - a2, a2],
    }
}

/// `(g, h)`: the `lambda^1` and `lambda^0` coefficients of `det(X + lambda I)`.
pub fn conserved_quantities(s: &TodaState) -> (f64, f64) {
    let [a1, a2] = s.a;
    let [b1, b2, b3] = s.b;
    (
        b1 * b2 + b2 * b3 + b3 * b1 - a1 - a2,
        b1 * b2 * b3 - b3 * a1 - b1 * a2,
    )
}

#[derive(Clone, Debug, Serialize)]
pub struct Trajectory {
    pub dt: f64,
    pub steps: usize,
    pub states: Vec<TodaState>,
}

fn rk4(s: &TodaState, dt: f64) -> TodaState {
    let k1 = toda_vector_field(s);
    let k2 = toda_vector_field(&s.axpy(dt / 2.0, &k1));
    let k3 = toda_vector_field(&s.axpy(dt / 2.0, &k2));
    let k4 = toda_vector_field(&s.axpy(dt, &k3));
    let mut out = *s;
    for i in 0..2 {
        out.a[i] += dt / 6.0 * (k1.a[i] + 2.0 * k2.a[i] + 2.0 * k3.a[i] + k4.a[i]);
    }
    for i in 0..3 {
        out.b[i] += dt / 6.0 * (k1.b[i] + 2.0 * k2.b[i] + 2.0 * k3.b[i] + k4.b[i]);
    }
    out
}

/// Fixed-step RK4 from `s0` to `t_end`; every state is kept.
pub fn toda_integrate(s0: &TodaState, t_end: f64, dt: f64) -> Result<Trajectory, TodaError> {
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(TodaError::InvalidStep(dt));
    }
    let steps = (t_end / dt).round().max(0.0) as usize;
    let mut states = Vec::with_capacity(steps + 1);
    states.push(*s0);
    let mut s = *s0;
    for step in 1..=steps {
        s = rk4(&s, dt);
        if let Some(i) = s.a.iter().position(|&x| x <= 0.0 || !x.is_finite()) {
            return Err(TodaError::NonPositive { step, index: i + 1 });
        }
        states.push(s);
    }
    Ok(Trajectory { dt, steps, states })
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct Drift {
    pub g: f64,
    pub h: f64,
    pub trace: f64,
    pub spectrum: f64,
}

impl Drift {
    pub fn conserved(&self) -> f64 {
        self.g.max(self.h)
    }
}

impl Trajectory {
    pub fn drift(&self) -> Drift {
        let s0 = &self.states[0];
        let (g0, h0) = conserved_quantities(s0);
        let ev0 = s0.spectrum();
        let mut d = Drift {
            g: 0.0,
            h: 0.0,
            trace: 0.0,
            spectrum: 0.0,
        };
        for s in &self.states {
            let (g, h) = conserved_quantities(s);
            d.g = d.g.max((g - g0).abs());
            d.h = d.h.max((h - h0).abs());
            d.trace = d.trace.max(s.trace().abs());
            let ev = s.spectrum();
            for i in 0..3 {
                d.spectrum = d.spectrum.max((ev[i] - ev0[i]).abs());
            }
        }
        d
    }

    pub fn last(&self) -> &TodaState {
        self.states.last().expect("at least the initial state")
    }
}

/// Ratio of conserved-quantity drift at `dt` and `dt / 2`; close to 16 for
/// a fourth-order method once the step is well above round-off.
pub fn convergence_ratio(s0: &TodaState, t_end: f64, dt: f64) -> Result<f64, TodaError> {
    let coarse = toda_integrate(s0, t_end, dt)?.drift().conserved();
    let fine = toda_integrate(s0, t_end, dt / 2.0)?.drift().conserved();
    Ok(coarse / fine)
}

/// Symbolic side: `a1, a2, b1, b2, b3` and the spectral parameter.
pub struct LaxPair {
    pub universe: Arc<Universe>,
    pub x: [[Poly; 3]; 3],
    pub y: [[Poly; 3]; 3],
}

fn matrix3(u: &Arc<Universe>, src: [[&str; 3]; 3]) -> [[Poly; 3]; 3] {
    src.map(|row| row.map(|e| parse(e, u).expect("static entry")))
}

fn mat_mul(x: &[[Poly; 3]; 3], y: &[[Poly; 3]; 3]) -> [[Poly; 3]; 3] {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            (0..3).fold(Polynomial::zero(x[0][0].universe()), |acc, k| {
                &acc + &(&x[i][k] * &y[k][j])
            })
        })
    })
}

impl LaxPair {
    pub fn new() -> Self {
        let universe = Universe::new([
            ("a1", 4),
            ("a2", 4),
            ("b1", 2),
            ("b2", 2),
            ("b3", 2),
            ("lambda", 2),
        ])
        .expect("fresh names");
        let x = matrix3(&universe, [["b1", "a1", "0"], ["1", "b2", "a2"], ["0", "1", "b3"]]);
        let y = matrix3(&universe, [["0", "a1", "0"], ["0", "0", "a2"], ["0", "0", "0"]]);
        LaxPair { universe, x, y }
    }

    pub fn commutator(&self) -> [[Poly; 3]; 3] {
        let xy = mat_mul(&self.x, &self.y);
        let yx = mat_mul(&self.y, &self.x);
        std::array::from_fn(|i| std::array::from_fn(|j| &xy[i][j] - &yx[i][j]))
    }

    /// The vector field as polynomials, in the same matrix positions as `X`.
    pub fn vector_field(&self) -> [[Poly; 3]; 3] {
        matrix3(
            &self.universe,
            [
                ["-a1", "a1*b1 - a1*b2", "0"],
                ["0", "a1 - a2", "a2*b2 - a2*b3"],
                ["0", "0", "a2"],
            ],
        )
    }

    /// `det(X + lambda I)`.
    pub fn characteristic(&self) -> Poly {
        let lambda = parse("lambda", &self.universe).expect("variable");
        let m: [[Poly; 3]; 3] = std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                if i == j {
                    &self.x[i][j] + &lambda
                } else {
                    self.x[i][j].clone()
                }
            })
        });
        let minor = |a: usize, b: usize, c: usize, d: usize| &(&m[1][a] * &m[2][b]) - &(&m[1][c] * &m[2][d]);
        &(&(&m[0][0] * &minor(1, 2, 2, 1)) - &(&m[0][1] * &minor(0, 2, 2, 0)))
            + &(&m[0][2] * &minor(0, 1, 1, 0))
    }

    /// Coefficient of `lambda^power` in the characteristic polynomial.
    pub fn characteristic_coefficient(&self, power: u32) -> Poly {
        let li = self.universe.len() - 1;
        self.characteristic()
            .retain(|m| m.exp(li) == power)
            .substitute(
                &(0..self.universe.len())
                    .map(|i| {
                        if i == li {
                            Polynomial::one(&self.universe)
                        } else {
                            Polynomial::var_at(&self.universe, i)
                        }
                    })
                    .collect::<Vec<_>>(),
                &self.universe,
            )
    }

    pub fn g(&self) -> Poly {
        parse("b1*b2 + b2*b3 + b3*b1 - a1 - a2", &self.universe).expect("static")
    }

    pub fn h(&self) -> Poly {
        parse("b1*b2*b3 - b3*a1 - b1*a2", &self.universe).expect("static")
    }
}

impl Default for LaxPair {
    fn default() -> Self {
        Self::new()
    }
}

/// Outcome of matching `(g, h)` with the flag relations under
/// `b_i -> x_i`, `a_i -> sign_i q_i`.
#[derive(Clone, Debug, Serialize)]
pub struct FlagIdentification {
    /// Every sign assignment that matches, as `(a1 sign, a2 sign)`.
    pub matching_signs: Vec<[i8; 2]>,
    pub substitution: Vec<(String, String)>,
    pub g_image: String,
    pub h_image: String,
    pub matches: bool,
}

/// Image of `(g, h)` under `b_i -> x_i`, `a_i -> sign_i q_i`.
pub fn substitute_toda(signs: [i8; 2]) -> (Poly, Poly) {
    let lax = LaxPair::new();
    let (target, _) = flag3_borel_relations(true).expect("static presentation");
    let img = |s: &str| parse(s, &target).expect("static");
    let sign = |s: i8| if s < 0 { "-" } else { "" };
    let images = vec![
        img(&format!("{}q1", sign(signs[0]))),
        img(&format!("{}q2", sign(signs[1]))),
        img("x1"),
        img("x2"),
        img("x3"),
        img("0"),
    ];
    (
        lax.g().substitute(&images, &target),
        lax.h().substitute(&images, &target),
    )
}

/// Search the four sign assignments and record the unique match.
pub fn toda_matches_flag_relations() -> FlagIdentification {
    let (_, rels) = flag3_borel_relations(true).expect("static presentation");
    let mut matching = Vec::new();
    for s1 in [1i8, -1] {
        for s2 in [1i8, -1] {
            let (g, h) = substitute_toda([s1, s2]);
            if g == rels[0] && h == rels[1] {
                matching.push([s1, s2]);
            }
        }
    }
    let chosen = matching.first().copied().unwrap_or([-1, -1]);
    let (g, h) = substitute_toda(chosen);
    let sign = |s: i8| if s < 0 { "-" } else { "" };
    FlagIdentification {
        substitution: vec![
            ("b1".into(), "x1".into()),
            ("b2".into(), "x2".into()),
            ("b3".into(), "x3".into()),
            ("a1".into(), format!("{}q1", sign(chosen[0]))),
            ("a2".into(), format!("{}q2", sign(chosen[1]))),
        ],
        g_image: g.to_string(),
        h_image: h.to_string(),
        matches: matching.len() == 1,
        matching_signs: matching,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn start() -> TodaState {
        TodaState::new([1.0, 1.0], [0.5, 0.0, -0.5]).unwrap()
    }

    #[test]
    fn vector_field_examples() {
        let s = TodaState::new([1.0, 1.0], [0.0, 0.0, 0.0]).unwrap();
        let d = toda_vector_field(&s);
        assert_eq!(d.a, [0.0, 0.0]);
        assert_eq!(d.b, [-1.0, 0.0, 1.0]);
        assert_eq!(d.b.iter().sum::<f64>(), 0.0);
    }

    #[test]
    fn conserved_example() {
        let s = TodaState::new([1.0, 1.0], [0.0, 0.0, 0.0]).unwrap();
        assert_eq!(conserved_quantities(&s), (-2.0, 0.0));
    }

    #[test]
    fn invalid_states() {
        assert!(TodaState::new([0.0, 1.0], [0.0; 3]).is_err());
        assert!(TodaState::new([1.0, 1.0], [1.0, 0.0, 0.0]).is_err());
        assert!(toda_integrate(&start(), 1.0, 0.0).is_err());
    }

    #[test]
    fn lax_form() {
        let lax = LaxPair::new();
        let c = lax.commutator();
        let v = lax.vector_field();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(c[i][j], v[i][j], "entry ({i},{j})");
            }
        }
        assert_eq!(lax.characteristic_coefficient(1), lax.g());
        assert_eq!(lax.characteristic_coefficient(0), lax.h());
        assert_eq!(
            lax.characteristic_coefficient(2),
            parse("b1 + b2 + b3", &lax.universe).unwrap()
        );
        assert_eq!(lax.characteristic_coefficient(3), Polynomial::one(&lax.universe));
    }

    #[test]
    fn flag_identification() {
        let id = toda_matches_flag_relations();
        assert!(id.matches);
        assert_eq!(id.matching_signs, vec![[-1, -1]]);
        let (_, rels) = flag3_borel_relations(true).unwrap();
        let (g, _) = substitute_toda([1, 1]);
        assert_ne!(g, rels[0]);
    }

    #[test]
    fn conservation_budget() {
        let traj = toda_integrate(&start(), 10.0, 1e-3).unwrap();
        let d = traj.drift();
        assert!(d.conserved() < 1e-8, "{d:?}");
        assert!(d.trace < 1e-12, "{d:?}");
        assert!(d.spectrum < 1e-8, "{d:?}");
    }

    #[test]
    fn fourth_order() {
        let r = convergence_ratio(&start(), 10.0, 0.1).unwrap();
        assert!((12.0..20.0).contains(&r), "ratio {r}");
    }

    #[test]
    fn oversized_step_aborts() {
        let s = TodaState::new([1.0, 1.0], [5.0, 0.0, -5.0]).unwrap();
        assert!(matches!(
            toda_integrate(&s, 10.0, 2.0),
            Err(TodaError::NonPositive { .. })
        ));
    }
}
