use std::sync::Arc;

use super::{AlgebraError, Polynomial, Universe};
use crate::Scalar;

/// `a_0 + a_1 t + ... + a_order t^order` with polynomial coefficients.
/// Everything beyond `order` is discarded by every operation.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries<C> {
    coeffs: Vec<Polynomial<C>>,
}

impl<C: Scalar> TruncatedSeries<C> {
    /// Pads with zeros or truncates so that exactly `order + 1` coefficients
    /// are kept.
    pub fn new(
        universe: &Arc<Universe>,
        mut coeffs: Vec<Polynomial<C>>,
        order: usize,
    ) -> Result<Self, AlgebraError> {
        coeffs.truncate(order + 1);
        while coeffs.len() < order + 1 {
            coeffs.push(Polynomial::zero(universe));
        }
        if let Some(bad) = coeffs.iter().find(|c| c.universe() != universe) {
            return Err(AlgebraError::UniverseMismatch {
                left: universe.to_string(),
                right: bad.universe().to_string(),
            });
        }
        Ok(TruncatedSeries { coeffs })
    }

    pub fn one(universe: &Arc<Universe>, order: usize) -> Self {
        Self::new(universe, vec![Polynomial::one(universe)], order).expect("same universe")
    }

    /// `1 + x_1 t + x_2 t^2 + ...` for the named variables.
    pub fn unit_from_vars(
        universe: &Arc<Universe>,
        names: &[&str],
        order: usize,
    ) -> Result<Self, AlgebraError> {
        let mut coeffs = vec![Polynomial::one(universe)];
        for n in names {
            coeffs.push(Polynomial::var(universe, n)?);
        }
        Self::new(universe, coeffs, order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn universe(&self) -> &Arc<Universe> {
        self.coeffs[0].universe()
    }

    pub fn coeff(&self, m: usize) -> &Polynomial<C> {
        &self.coeffs[m]
    }

    pub fn coeffs(&self) -> &[Polynomial<C>] {
        &self.coeffs
    }

    fn check_order(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.order() != other.order() {
            return Err(AlgebraError::OrderMismatch(self.order(), other.order()));
        }
        Ok(())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_order(other)?;
        let n = self.order();
        let mut out = vec![Polynomial::zero(self.universe()); n + 1];
        for i in 0..=n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(n - i) {
                if other.coeffs[j].is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].try_add(&self.coeffs[i].try_mul(&other.coeffs[j])?)?;
            }
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.try_add(b))
            .collect::<Result<_, _>>()?;
        Ok(TruncatedSeries { coeffs })
    }

    /// Multiply by `t^shift`, dropping what falls beyond the order.
    pub fn shift(&self, shift: usize) -> Self {
        let n = self.order();
        let zero = Polynomial::zero(self.universe());
        let coeffs = (0..=n)
            .map(|m| {
                if m >= shift {
                    self.coeffs[m - shift].clone()
                } else {
                    zero.clone()
                }
            })
            .collect();
        TruncatedSeries { coeffs }
    }

    /// Coefficient-wise partial derivative in a universe variable.
    pub fn diff(&self, index: usize) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| c.diff(index)).collect(),
        }
    }

    fn require_unit(&self) -> Result<(), AlgebraError> {
        if self.coeffs[0] != Polynomial::one(self.universe()) {
            return Err(AlgebraError::ConstantTermNotOne);
        }
        Ok(())
    }

    /// Multiplicative inverse via `s_m = -sum_{i=1}^{m} c_i s_{m-i}`.
    pub fn invert(&self) -> Result<Self, AlgebraError> {
        self.require_unit()?;
        let n = self.order();
        let mut s: Vec<Polynomial<C>> = Vec::with_capacity(n + 1);
        s.push(Polynomial::one(self.universe()));
        for m in 1..=n {
            let mut acc = Polynomial::zero(self.universe());
            for i in 1..=m {
                if self.coeffs[i].is_zero() || s[m - i].is_zero() {
                    continue;
                }
                acc = &acc - &(&self.coeffs[i] * &s[m - i]);
            }
            s.push(acc);
        }
        Ok(TruncatedSeries { coeffs: s })
    }

    /// Formal logarithm from `w' = c'/c`, i.e.
    /// `m w_m = m c_m - sum_{i=1}^{m-1} i w_i c_{m-i}`.
    pub fn log(&self) -> Result<Self, AlgebraError> {
        self.require_unit()?;
        let n = self.order();
        let mut w: Vec<Polynomial<C>> = vec![Polynomial::zero(self.universe())];
        for m in 1..=n {
            let mut acc = self.coeffs[m].scale(&C::from_i64(m as i64));
            for i in 1..m {
                if w[i].is_zero() || self.coeffs[m - i].is_zero() {
                    continue;
                }
                acc = &acc - &(&w[i] * &self.coeffs[m - i]).scale(&C::from_i64(i as i64));
            }
            w.push(acc.scale(&(C::one() / C::from_i64(m as i64))));
        }
        Ok(TruncatedSeries { coeffs: w })
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == Polynomial::one(self.universe())
            && self.coeffs[1..].iter().all(Polynomial::is_zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_polynomial;
    use crate::Rational;

    fn gr24() -> (Arc<Universe>, TruncatedSeries<Rational>) {
        let u = Universe::new([("c1", 2), ("c2", 4)]).unwrap();
        let c = TruncatedSeries::unit_from_vars(&u, &["c1", "c2"], 5).unwrap();
        (u, c)
    }

    #[test]
    fn inverse_of_chern_series() {
        let (u, c) = gr24();
        let s = c.invert().unwrap();
        let p = |t: &str| parse_polynomial(t, &u).unwrap();
        assert_eq!(s.coeff(1), &p("-c1"));
        assert_eq!(s.coeff(2), &p("c1^2 - c2"));
        assert_eq!(s.coeff(3), &p("-c1^3 + 2*c1*c2"));
        assert_eq!(s.coeff(4), &p("c1^4 - 3*c1^2*c2 + c2^2"));
        assert!(c.try_mul(&s).unwrap().is_one());
    }

    #[test]
    fn log_is_mercator() {
        let u = Universe::new([("u", 2)]).unwrap();
        let c = TruncatedSeries::<Rational>::unit_from_vars(&u, &["u"], 4).unwrap();
        let w = c.log().unwrap();
        let p = |t: &str| parse_polynomial(t, &u).unwrap();
        assert_eq!(w.coeff(1), &p("u"));
        assert_eq!(w.coeff(2), &p("-1/2*u^2"));
        assert_eq!(w.coeff(3), &p("1/3*u^3"));
        assert_eq!(w.coeff(4), &p("-1/4*u^4"));
    }

    #[test]
    fn non_unit_rejected() {
        let u = Universe::new([("u", 2)]).unwrap();
        let s = TruncatedSeries::<Rational>::new(&u, vec![Polynomial::zero(&u)], 2).unwrap();
        assert_eq!(s.invert(), Err(AlgebraError::ConstantTermNotOne));
        assert!(s.log().is_err());
    }
}
