use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use proptest::prelude::*;

use qcoh::algebra::{Monomial, Polynomial, TruncatedSeries, Universe};
use qcoh::genfun::{apply_operator, expander_for_order, scalar_generating_function};
use qcoh::quotient::spectrum_check;
use qcoh::schubert::enumerate_diagrams;
use qcoh::spaces::{Space, SpaceId};
use qcoh::symplectic::{poisson_bracket, SymplecticChart};
use qcoh::{Engine, Poly, Rational};

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn poly_in(u: Arc<Universe>, max_exp: u32, max_terms: usize) -> impl Strategy<Value = Poly> {
    let n = u.len();
    prop::collection::vec(
        (prop::collection::vec(0..=max_exp, n), -5i64..=5, 1i64..=3),
        0..=max_terms,
    )
    .prop_map(move |terms| {
        Polynomial::from_terms(
            &u,
            terms
                .into_iter()
                .map(|(e, a, b)| (Monomial::from_exps(&u, e), rat(a, b))),
        )
    })
}

/// Homogeneous polynomial of the given degree in `p1, p2, q1, q2` with
/// weights 2, 2, 4, 4.
fn homogeneous_in(u: Arc<Universe>, degree: i64, max_terms: usize) -> impl Strategy<Value = Poly> {
    let half = (degree / 2) as u32;
    prop::collection::vec((0..=half, 0..=half, 0..=half, -4i64..=4), 1..=max_terms).prop_map(
        move |terms| {
            let keep = terms.into_iter().filter_map(|(c, d, a, coeff)| {
                let q = 2 * (c / 2) + 2 * (d / 2);
                let rest = half.checked_sub(q)?;
                let a = a.min(rest);
                let exps = vec![a, rest - a, c / 2, d / 2];
                Some((Monomial::from_exps(&u, exps), rat(coeff, 1)))
            });
            Polynomial::from_terms(&u, keep)
        },
    )
}

fn xyq() -> Arc<Universe> {
    Universe::new([("x", 2), ("y", 2), ("q", 4)]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in poly_in(xyq(), 3, 4), b in poly_in(xyq(), 3, 4), c in poly_in(xyq(), 3, 4)) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &Polynomial::one(a.universe()), a.clone());
    }

    #[test]
    fn display_parses_back(a in poly_in(xyq(), 4, 6)) {
        let back = qcoh::parse(&a.to_string(), a.universe()).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn derivative_leibniz(a in poly_in(xyq(), 3, 4), b in poly_in(xyq(), 3, 4), v in 0usize..3) {
        let lhs = (&a * &b).diff(v);
        let rhs = &(&a.diff(v) * &b) + &(&a * &b.diff(v));
        prop_assert_eq!(lhs, rhs);
    }

    /// Second-order Taylor expansion in a formal step `h` matches the
    /// symbolic derivative: (p(x + h) - p(x - h)) / 2 has `h`-linear part dp/dx.
    #[test]
    fn central_difference(a in poly_in(xyq(), 4, 5), v in 0usize..3) {
        let u = a.universe();
        let names: Vec<(String, i32)> = u.vars().iter().map(|x| (x.name.clone(), x.degree)).collect();
        let hu = Universe::new(names.into_iter().chain([("h".to_string(), u.degree(v))])).unwrap();
        let lift = a.rehome(&hu).unwrap();
        let h = Polynomial::var(&hu, "h").unwrap();
        let shifted = |sign: i64| {
            let images: Vec<Poly> = (0..u.len())
                .map(|i| {
                    let x = Polynomial::var_at(&hu, i);
                    if i == v { &x + &h.scale(&rat(sign, 1)) } else { x }
                })
                .chain([h.clone()])
                .collect();
            lift.substitute(&images, &hu)
        };
        let diff = (&shifted(1) - &shifted(-1)).scale(&rat(1, 2));
        let hi = hu.len() - 1;
        let linear = diff.retain(|m| m.exp(hi) == 1).diff(hi);
        prop_assert_eq!(linear, a.diff(v).rehome(&hu).unwrap());
    }
}

fn chern_universe() -> Arc<Universe> {
    Universe::new([("c1", 2), ("c2", 4), ("c3", 6)]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn series_inverse_round_trip(order in 1usize..7, k in 1usize..=3) {
        let u = chern_universe();
        let names = ["c1", "c2", "c3"];
        let c = TruncatedSeries::<Rational>::unit_from_vars(&u, &names[..k], order).unwrap();
        let s = c.invert().unwrap();
        prop_assert!(c.try_mul(&s).unwrap().is_one());
        prop_assert_eq!(s.invert().unwrap(), c);
    }

    /// d(log c)/dc_i = c^{-1} t^i.
    #[test]
    fn log_derivative(order in 2usize..8, i in 1usize..=3) {
        let u = chern_universe();
        let c = TruncatedSeries::<Rational>::unit_from_vars(&u, &["c1", "c2", "c3"], order).unwrap();
        let lhs = c.log().unwrap().diff(i - 1);
        let rhs = c.invert().unwrap().shift(i);
        prop_assert_eq!(lhs, rhs);
    }
}

fn flag_engine() -> (Space, Engine) {
    let s = Space::build(&SpaceId::Flag3(qcoh::spaces::FlagChart::P), true).unwrap();
    let e = Engine::complete(&s.presentation, 16).unwrap();
    (s, e)
}

fn flag_universe() -> Arc<Universe> {
    flag_engine().0.presentation.universe().clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn reduction_is_idempotent_and_multiplicative(
        a in homogeneous_in(flag_universe(), 6, 5),
        b in homogeneous_in(flag_universe(), 8, 5),
    ) {
        let (_, e) = flag_engine();
        let na = e.normal_form(&a).unwrap();
        let nb = e.normal_form(&b).unwrap();
        prop_assert_eq!(e.normal_form(&na).unwrap(), na.clone());
        prop_assert_eq!(e.normal_form(&(&a * &b)).unwrap(), e.normal_form(&(&na * &nb)).unwrap());
        prop_assert_eq!(e.normal_form(&(&a + &a)).unwrap(), &na + &na);
        prop_assert!(e.is_member(&(&a - &na)).unwrap());
    }

    #[test]
    fn reduction_preserves_degree(a in homogeneous_in(flag_universe(), 10, 6)) {
        let (_, e) = flag_engine();
        let n = e.normal_form(&a).unwrap();
        prop_assert!(n.is_zero() || n.homogeneous_degree() == Some(Some(10)));
    }
}

fn chart_universe() -> Arc<Universe> {
    Universe::new([("p1", 2), ("p2", 2), ("q1", 4), ("q2", 4)]).unwrap()
}

fn chart() -> SymplecticChart {
    SymplecticChart::new(vec![("p1", "q1"), ("p2", "q2")]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn bracket_identities(
        f in poly_in(chart_universe(), 2, 3),
        g in poly_in(chart_universe(), 2, 3),
        h in poly_in(chart_universe(), 2, 3),
    ) {
        let ch = chart();
        let br = |a: &Poly, b: &Poly| poisson_bracket(a, b, &ch).unwrap();
        prop_assert_eq!(br(&f, &g), -br(&g, &f));
        let jacobi = &(&br(&f, &br(&g, &h)) + &br(&g, &br(&h, &f))) + &br(&h, &br(&f, &g));
        prop_assert!(jacobi.is_zero());
        prop_assert_eq!(br(&f, &(&g * &h)), &(&br(&f, &g) * &h) + &(&g * &br(&f, &h)));
    }
}

fn cpn_v(n: u32, order: usize) -> (Space, qcoh::genfun::GeneratingFunction) {
    let s = Space::build(&SpaceId::Projective(n), true).unwrap();
    let ex = expander_for_order(&s, order).unwrap();
    let v = scalar_generating_function(&ex, order).unwrap();
    (s, v)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn operators_act_linearly(n in 1u32..=2, a in -3i64..=3, i in 0u32..4, j in 0u32..4) {
        let (s, v) = cpn_v(n, 10);
        let u = s.presentation.universe();
        let op1 = qcoh::parse(&format!("p^{i}"), u).unwrap();
        let op2 = qcoh::parse(&format!("p^{j}*q"), u).unwrap();
        let combo = &op1.scale(&rat(a, 1)) + &op2;
        let left = apply_operator(&combo, &v).unwrap();
        let r1 = apply_operator(&op1, &v).unwrap();
        let r2 = apply_operator(&op2, &v).unwrap();
        let cut = left.reliable_order.min(r1.reliable_order).min(r2.reliable_order);
        let rhs = &r1.truncate(cut).scale(&rat(a, 1)) + &r2.truncate(cut);
        prop_assert_eq!(left.truncate(cut), rhs);
    }

    #[test]
    fn operators_compose(n in 1u32..=2, i in 0u32..3, j in 0u32..3) {
        let (s, v) = cpn_v(n, 10);
        let u = s.presentation.universe();
        let op1 = qcoh::parse(&format!("p^{i}"), u).unwrap();
        let op2 = qcoh::parse(&format!("p^{j} + q"), u).unwrap();
        let once = apply_operator(&(&op1 * &op2), &v).unwrap();
        let twice = apply_operator(&op1, &apply_operator(&op2, &v).unwrap()).unwrap();
        let cut = once.reliable_order.min(twice.reliable_order);
        prop_assert_eq!(once.truncate(cut), twice.truncate(cut));
    }

    /// Scaling q by s^(n+1) scales the joint spectrum of p by s.
    #[test]
    fn spectrum_scales_with_q(n in 1u32..=3, r in 0.5f64..2.0, th in 0.0f64..6.28, s in 0.5f64..2.0) {
        let space = Space::build(&SpaceId::Projective(n), true).unwrap();
        let ex = space.expander().unwrap();
        let q = Complex64::from_polar(r, th);
        let scaled = q * s.powi(n as i32 + 1);
        let ev = |q: Complex64| -> Vec<Complex64> {
            spectrum_check(&ex, &[q], 1e-8).unwrap().eigen_tuples.iter().map(|t| Complex64::new(t[0][0], t[0][1])).collect()
        };
        let base = ev(q);
        let big = ev(scaled);
        for z in &base {
            let target = z * s;
            prop_assert!(big.iter().any(|w| (w - target).norm() < 1e-8 * (1.0 + target.norm())));
        }
    }
}

fn binomial(n: u32, k: u32) -> usize {
    (0..k).fold(1usize, |acc, i| acc * (n - i) as usize / (i + 1) as usize)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn grassmannian_betti_sum(n in 2u32..=6, k in 1u32..=5) {
        prop_assume!(k < n);
        let s = Space::build(&SpaceId::Grassmannian { k, n }, false).unwrap();
        let dims = s.graded_dimensions().unwrap();
        prop_assert_eq!(dims.iter().sum::<usize>(), binomial(n, k));
        prop_assert_eq!(enumerate_diagrams(k, n).len(), binomial(n, k));
        let rev: Vec<usize> = dims.iter().rev().cloned().collect();
        prop_assert_eq!(rev, dims);
    }

    #[test]
    fn projective_betti(n in 1u32..=6) {
        let s = Space::build(&SpaceId::Projective(n), false).unwrap();
        prop_assert_eq!(s.graded_dimensions().unwrap(), vec![1; n as usize + 1]);
    }
}

#[test]
fn fixed_betti_counts() {
    for (id, total) in [("flag3", 6), ("hirzebruch:0", 4), ("hirzebruch:1", 4), ("hirzebruch:2", 4)] {
        let s = Space::parse_and_build(id, false).unwrap();
        assert_eq!(s.graded_dimensions().unwrap().iter().sum::<usize>(), total, "{id}");
    }
}
