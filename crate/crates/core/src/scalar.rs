//! Coefficient fields.
//!
//! Every symbolic structure in the crate is generic over a [`Scalar`]: exact
//! rationals for the algebra, `f64`/`f32` and complex doubles where a
//! polynomial is pushed through a numeric routine.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Num, Signed, ToPrimitive};

/// A commutative field usable as a polynomial coefficient.
pub trait Scalar:
    Clone + PartialEq + Debug + Display + Num + std::ops::Neg<Output = Self> + Send + Sync + 'static
{
    /// `true` when the value would print with a leading minus sign.
    fn is_negative(&self) -> bool;

    fn from_i64(v: i64) -> Self;

    /// Lossy projection into complex doubles for numeric evaluation.
    fn to_complex(&self) -> Complex64;

    /// Whether arithmetic is exact. Reduction routines rely on exact
    /// cancellation to decide that a coefficient is zero.
    fn is_exact() -> bool {
        false
    }
}

impl Scalar for BigRational {
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn to_complex(&self) -> Complex64 {
        Complex64::new(self.to_f64().unwrap_or(f64::NAN), 0.0)
    }

    fn is_exact() -> bool {
        true
    }
}

macro_rules! float_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            fn is_negative(&self) -> bool {
                *self < 0.0
            }

            fn from_i64(v: i64) -> Self {
                v as $t
            }

            fn to_complex(&self) -> Complex64 {
                Complex64::new(*self as f64, 0.0)
            }
        }
    };
}

float_scalar!(f32);
float_scalar!(f64);

impl Scalar for Complex64 {
    fn is_negative(&self) -> bool {
        self.im == 0.0 && self.re < 0.0
    }

    fn from_i64(v: i64) -> Self {
        Complex64::new(v as f64, 0.0)
    }

    fn to_complex(&self) -> Complex64 {
        *self
    }
}

/// Rational from a numerator/denominator pair.
pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Nearest integer to a rational, ties away from zero.
pub fn round_rational(r: &BigRational) -> BigInt {
    r.round().to_integer()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_rounding() {
        assert_eq!(round_rational(&ratio(7, 2)), BigInt::from(4));
        assert_eq!(round_rational(&ratio(-7, 2)), BigInt::from(-4));
        assert_eq!(round_rational(&ratio(5, 3)), BigInt::from(2));
    }

    #[test]
    fn signs_and_projection() {
        assert!(Scalar::is_negative(&ratio(-1, 3)));
        assert!(!Scalar::is_negative(&0.0f64));
        assert_eq!(ratio(3, 4).to_complex(), Complex64::new(0.75, 0.0));
        assert!(BigRational::is_exact());
        assert!(!f64::is_exact());
        assert_eq!(<Complex64 as Scalar>::from_i64(-2), Complex64::new(-2.0, 0.0));
    }
}
