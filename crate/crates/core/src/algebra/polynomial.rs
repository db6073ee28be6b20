use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::{AlgebraError, Monomial, Universe};
use crate::Scalar;

/// Sparse polynomial with coefficients in `C` over a fixed [`Universe`].
///
/// Terms are keyed by [`Monomial`], so iteration is in ascending term order.
/// Zero coefficients are never stored.
#[derive(Clone, Debug)]
pub struct Polynomial<C> {
    universe: Arc<Universe>,
    terms: BTreeMap<Monomial, C>,
}

impl<C: PartialEq> PartialEq for Polynomial<C> {
    fn eq(&self, other: &Self) -> bool {
        same_universe(&self.universe, &other.universe) && self.terms == other.terms
    }
}

fn same_universe(a: &Arc<Universe>, b: &Arc<Universe>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl<C: Scalar> Polynomial<C> {
    pub fn zero(universe: &Arc<Universe>) -> Self {
        Polynomial {
            universe: universe.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(universe: &Arc<Universe>) -> Self {
        Self::constant(universe, C::one())
    }

    pub fn constant(universe: &Arc<Universe>, c: C) -> Self {
        Self::term(universe, Monomial::one(universe.len()), c)
    }

    pub fn term(universe: &Arc<Universe>, m: Monomial, c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial {
            universe: universe.clone(),
            terms,
        }
    }

    pub fn var(universe: &Arc<Universe>, name: &str) -> Result<Self, AlgebraError> {
        let i = universe.require(name)?;
        Ok(Self::var_at(universe, i))
    }

    pub fn var_at(universe: &Arc<Universe>, i: usize) -> Self {
        Self::term(universe, Monomial::var(universe, i, 1), C::one())
    }

    pub fn from_terms<I>(universe: &Arc<Universe>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, C)>,
    {
        let mut p = Self::zero(universe);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending term order (the canonical printing order).
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> {
        self.terms.iter().rev()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &C)> {
        self.terms.last_key_value()
    }

    pub fn coefficient(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn constant_term(&self) -> C {
        self.coefficient(&Monomial::one(self.universe.len()))
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn check_universe(&self, other: &Self) -> Result<(), AlgebraError> {
        if same_universe(&self.universe, &other.universe) {
            Ok(())
        } else {
            Err(AlgebraError::UniverseMismatch {
                left: self.universe.to_string(),
                right: other.universe.to_string(),
            })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_universe(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_universe(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_universe(other)?;
        let mut out = Self::zero(&self.universe);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(&self.universe);
        }
        Polynomial {
            universe: self.universe.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, x)| (m.clone(), x.clone() * c.clone()))
                .collect(),
        }
    }

    /// Multiply by a single term `c * m`.
    pub fn mul_term(&self, m: &Monomial, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(&self.universe);
        }
        Polynomial {
            universe: self.universe.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, x)| (k.mul(m), x.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one(&self.universe);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Formal partial derivative with respect to the variable at `index`.
    pub fn diff(&self, index: usize) -> Self {
        let mut out = Self::zero(&self.universe);
        for (m, c) in &self.terms {
            if let Some((e, lowered)) = m.lowered(&self.universe, index) {
                out.add_term(lowered, c.clone() * C::from_i64(e as i64));
            }
        }
        out
    }

    pub fn diff_by_name(&self, name: &str) -> Result<Self, AlgebraError> {
        Ok(self.diff(self.universe.require(name)?))
    }

    /// Largest weighted degree of a term, `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().map(Monomial::degree).min()
    }

    /// Degree in a single variable.
    pub fn degree_in(&self, index: usize) -> u32 {
        self.terms.keys().map(|m| m.exp(index)).max().unwrap_or(0)
    }

    /// Weighted degree if every term shares it. Zero is homogeneous of any
    /// degree and reports `Some(None)`.
    pub fn homogeneous_degree(&self) -> Option<Option<i64>> {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => Some(None),
            Some(d) => degs.all(|x| x == d).then_some(Some(d)),
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous_degree().is_some()
    }

    /// First term whose weighted degree differs from the leading one.
    pub fn inhomogeneous_witness(&self) -> Option<(Monomial, i64)> {
        let (lead, _) = self.leading_term()?;
        let d = lead.degree();
        self.terms
            .keys()
            .find(|m| m.degree() != d)
            .map(|m| (m.clone(), d))
    }

    pub fn homogeneous_components(&self) -> BTreeMap<i64, Self> {
        let mut out: BTreeMap<i64, Self> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.degree())
                .or_insert_with(|| Self::zero(&self.universe))
                .terms
                .insert(m.clone(), c.clone());
        }
        out
    }

    pub fn map_coeffs<D: Scalar>(&self, f: impl Fn(&C) -> D) -> Polynomial<D> {
        let mut out = Polynomial::zero(&self.universe);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    /// Evaluate at a point given by one value per universe variable.
    pub fn eval<T>(&self, point: &[T]) -> T
    where
        T: Scalar,
        C: Into<T>,
    {
        self.eval_with(point, |c| c.clone().into())
    }

    pub fn eval_with<T: Scalar>(&self, point: &[T], coeff: impl Fn(&C) -> T) -> T {
        assert_eq!(point.len(), self.universe.len(), "evaluation point arity");
        let mut acc = T::zero();
        for (m, c) in &self.terms {
            let mut t = coeff(c);
            for (x, &e) in point.iter().zip(m.exps()) {
                for _ in 0..e {
                    t = t * x.clone();
                }
            }
            acc = acc + t;
        }
        acc
    }

    pub fn eval_complex(&self, point: &[Complex64]) -> Complex64 {
        self.eval_with(point, Scalar::to_complex)
    }

    /// Substitute polynomial images for every variable. `images[i]` replaces
    /// variable `i`; the result lives in the images' universe.
    pub fn substitute(&self, images: &[Polynomial<C>], target: &Arc<Universe>) -> Self {
        assert_eq!(images.len(), self.universe.len(), "substitution arity");
        let mut powers: Vec<Vec<Polynomial<C>>> = images
            .iter()
            .map(|p| vec![Polynomial::one(target), p.clone()])
            .collect();
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &powers[i][1];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e as usize];
            }
            out = &out + &t;
        }
        out
    }

    /// Substitute by variable name; variables not in `map` are carried over
    /// by name into `target` (and must exist there).
    pub fn substitute_named(
        &self,
        map: &[(&str, Polynomial<C>)],
        target: &Arc<Universe>,
    ) -> Result<Self, AlgebraError> {
        let mut images = Vec::with_capacity(self.universe.len());
        for v in self.universe.vars() {
            match map.iter().find(|(n, _)| *n == v.name) {
                Some((_, p)) => images.push(p.clone()),
                None => images.push(Polynomial::var(target, &v.name)?),
            }
        }
        Ok(self.substitute(&images, target))
    }

    /// Re-home the polynomial in another universe, matching variables by name.
    pub fn rehome(&self, target: &Arc<Universe>) -> Result<Self, AlgebraError> {
        if same_universe(&self.universe, target) {
            return Ok(self.clone());
        }
        let index: Vec<usize> = self
            .universe
            .vars()
            .iter()
            .map(|v| target.require(&v.name))
            .collect::<Result<_, _>>()?;
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut exps = vec![0; target.len()];
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    exps[index[i]] = e;
                }
            }
            out.add_term(Monomial::from_exps(target, exps), c.clone());
        }
        Ok(out)
    }

    /// Like [`rehome`](Self::rehome) but variables absent from `target` are
    /// sent to zero.
    pub fn project(&self, target: &Arc<Universe>) -> Self {
        let mut out = Polynomial::zero(target);
        'terms: for (m, c) in &self.terms {
            let mut exps = vec![0; target.len()];
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match target.index_of(self.universe.name(i)) {
                    Some(j) => exps[j] = e,
                    None => continue 'terms,
                }
            }
            out.add_term(Monomial::from_exps(target, exps), c.clone());
        }
        out
    }

    /// Indices of variables that occur in some term.
    pub fn support(&self) -> Vec<usize> {
        (0..self.universe.len())
            .filter(|&i| self.terms.keys().any(|m| m.exp(i) > 0))
            .collect()
    }

    /// Drop every term whose exponents fail `keep`.
    pub fn retain(&self, keep: impl Fn(&Monomial) -> bool) -> Self {
        Polynomial {
            universe: self.universe.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn monomial_to_string(&self, m: &Monomial) -> String {
        monomial_string(&self.universe, m)
    }
}

pub(crate) fn monomial_string(universe: &Universe, m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exps().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(universe.name(i).to_string()),
            _ => parts.push(format!("{}^{}", universe.name(i), e)),
        }
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

impl<C: Scalar> fmt::Display for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c.clone() } else { c.clone() };
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", monomial_string(&self.universe, m))?;
            } else {
                write!(f, "{abs}*{}", monomial_string(&self.universe, m))?;
            }
        }
        Ok(())
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $try:ident) => {
        impl<C: Scalar> $tr<&Polynomial<C>> for &Polynomial<C> {
            type Output = Polynomial<C>;

            /// Panics when the operands live in different universes; use the
            /// `try_*` method for a recoverable error.
            fn $method(self, rhs: &Polynomial<C>) -> Polynomial<C> {
                self.$try(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }

        impl<C: Scalar> $tr<Polynomial<C>> for Polynomial<C> {
            type Output = Polynomial<C>;

            fn $method(self, rhs: Polynomial<C>) -> Polynomial<C> {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl<C: Scalar> Neg for &Polynomial<C> {
    type Output = Polynomial<C>;

    fn neg(self) -> Polynomial<C> {
        self.scale(&-C::one())
    }
}

impl<C: Scalar> Neg for Polynomial<C> {
    type Output = Polynomial<C>;

    fn neg(self) -> Polynomial<C> {
        -&self
    }
}

/// One term of the JSON rendering.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exponents: BTreeMap<String, u32>,
    pub numerator: String,
    pub denominator: String,
}

/// JSON rendering of an exact polynomial: terms in canonical (descending)
/// order, big integers as decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PolyJson(pub Vec<TermJson>);

impl Polynomial<BigRational> {
    pub fn to_json(&self) -> PolyJson {
        PolyJson(
            self.terms()
                .map(|(m, c)| TermJson {
                    exponents: m
                        .exps()
                        .iter()
                        .enumerate()
                        .filter(|(_, &e)| e > 0)
                        .map(|(i, &e)| (self.universe.name(i).to_string(), e))
                        .collect(),
                    numerator: c.numer().to_string(),
                    denominator: c.denom().to_string(),
                })
                .collect(),
        )
    }

    pub fn from_json(universe: &Arc<Universe>, json: &PolyJson) -> Result<Self, AlgebraError> {
        let mut p = Polynomial::zero(universe);
        for t in &json.0 {
            let mut exps = vec![0; universe.len()];
            for (name, &e) in &t.exponents {
                exps[universe.require(name)?] = e;
            }
            let parse = |s: &str| {
                s.parse::<BigInt>().map_err(|_| AlgebraError::Parse {
                    pos: 0,
                    msg: format!("bad integer `{s}`"),
                })
            };
            let den = parse(&t.denominator)?;
            if den == BigInt::from(0) {
                return Err(AlgebraError::Parse {
                    pos: 0,
                    msg: "zero denominator".into(),
                });
            }
            p.add_term(
                Monomial::from_exps(universe, exps),
                BigRational::new(parse(&t.numerator)?, den),
            );
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_polynomial;

    fn u() -> Arc<Universe> {
        Universe::new([("x", 2), ("y", 2), ("q", 4)]).unwrap()
    }

    #[test]
    fn canonical_rendering() {
        let u = u();
        let p = parse_polynomial("y - x^2 + 3*x*y - 1/2*q", &u).unwrap();
        assert_eq!(p.to_string(), "-x^2 + 3*x*y - 1/2*q + y");
        assert_eq!(Polynomial::<crate::Rational>::zero(&u).to_string(), "0");
    }

    #[test]
    fn arithmetic_cancels() {
        let u = u();
        let x = Polynomial::<crate::Rational>::var(&u, "x").unwrap();
        let y = Polynomial::var(&u, "y").unwrap();
        let lhs = &(&x + &y) * &(&x - &y);
        let rhs = &x.pow(2) - &y.pow(2);
        assert_eq!(lhs, rhs);
        assert!((&lhs - &rhs).is_zero());
    }

    #[test]
    fn derivative_and_degree() {
        let u = u();
        let p = parse_polynomial("x^3*y + q*x", &u).unwrap();
        assert_eq!(p.diff(0), parse_polynomial("3*x^2*y + q", &u).unwrap());
        assert_eq!(p.degree(), Some(8));
        assert!(!p.is_homogeneous());
        assert_eq!(p.homogeneous_components().len(), 2);
    }

    #[test]
    fn substitution() {
        let u = u();
        let p = parse_polynomial("x^2 - y", &u).unwrap();
        let images = vec![
            parse_polynomial("x + y", &u).unwrap(),
            parse_polynomial("q", &u).unwrap(),
            parse_polynomial("q", &u).unwrap(),
        ];
        let s = p.substitute(&images, &u);
        assert_eq!(s, parse_polynomial("x^2 + 2*x*y + y^2 - q", &u).unwrap());
    }

    #[test]
    fn universe_mismatch_is_an_error() {
        let a = parse_polynomial("x", &u()).unwrap();
        let other = Universe::new([("x", 2)]).unwrap();
        let b = parse_polynomial("x", &other).unwrap();
        assert!(a.try_add(&b).is_err());
        assert_eq!(b.rehome(&a.universe().clone()).unwrap(), a);
    }

    #[test]
    fn json_round_trip() {
        let u = u();
        let p = parse_polynomial("2/3*x*y - q + 5", &u).unwrap();
        assert_eq!(Polynomial::from_json(&u, &p.to_json()).unwrap(), p);
    }

    #[test]
    fn float_evaluation() {
        let u = u();
        let p = parse_polynomial("x^2 - 2*y", &u).unwrap();
        let f: Polynomial<f64> = p.map_coeffs(|c| c.to_complex().re);
        assert_eq!(f.eval(&[3.0, 1.0, 0.0]), 7.0);
    }
}
