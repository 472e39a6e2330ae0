use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::{Float, Integer, Rational};

/// Exact rational number, always kept in lowest terms with a positive
/// denominator.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct RationalNumber(Rational);

impl RationalNumber {
    pub fn zero() -> Self {
        RationalNumber(Rational::new())
    }

    pub fn one() -> Self {
        RationalNumber(Rational::from(1))
    }

    pub fn new(numer: impl Into<Integer>, denom: impl Into<Integer>) -> Self {
        let denom = denom.into();
        assert!(denom != 0, "zero denominator");
        RationalNumber(Rational::from((numer.into(), denom)))
    }

    pub fn from_integer(n: impl Into<Integer>) -> Self {
        RationalNumber(Rational::from(n.into()))
    }

    pub fn numer(&self) -> &Integer {
        self.0.numer()
    }

    pub fn denom(&self) -> &Integer {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.cmp0() == std::cmp::Ordering::Equal
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        RationalNumber(self.0.clone().recip())
    }

    pub fn div_int(&self, d: i64) -> Self {
        assert!(d != 0, "division by zero");
        RationalNumber(Rational::from(&self.0 / d))
    }

    pub fn mul_int(&self, m: i64) -> Self {
        RationalNumber(Rational::from(&self.0 * m))
    }

    pub fn to_float(&self, bits: u32) -> Float {
        Float::with_val(bits, &self.0)
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }

    pub fn as_rug(&self) -> &Rational {
        &self.0
    }
}

impl From<Rational> for RationalNumber {
    fn from(r: Rational) -> Self {
        RationalNumber(r)
    }
}

impl From<i64> for RationalNumber {
    fn from(n: i64) -> Self {
        RationalNumber(Rational::from(n))
    }
}

impl fmt::Display for RationalNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Add for RationalNumber {
    type Output = RationalNumber;
    fn add(self, rhs: RationalNumber) -> RationalNumber {
        RationalNumber(self.0 + rhs.0)
    }
}

impl<'a> Add<&'a RationalNumber> for &'a RationalNumber {
    type Output = RationalNumber;
    fn add(self, rhs: &'a RationalNumber) -> RationalNumber {
        RationalNumber(Rational::from(&self.0 + &rhs.0))
    }
}

impl Sub for RationalNumber {
    type Output = RationalNumber;
    fn sub(self, rhs: RationalNumber) -> RationalNumber {
        RationalNumber(self.0 - rhs.0)
    }
}

impl<'a> Sub<&'a RationalNumber> for &'a RationalNumber {
    type Output = RationalNumber;
    fn sub(self, rhs: &'a RationalNumber) -> RationalNumber {
        RationalNumber(Rational::from(&self.0 - &rhs.0))
    }
}

impl Mul for RationalNumber {
    type Output = RationalNumber;
    fn mul(self, rhs: RationalNumber) -> RationalNumber {
        RationalNumber(self.0 * rhs.0)
    }
}

impl<'a> Mul<&'a RationalNumber> for &'a RationalNumber {
    type Output = RationalNumber;
    fn mul(self, rhs: &'a RationalNumber) -> RationalNumber {
        RationalNumber(Rational::from(&self.0 * &rhs.0))
    }
}

impl Neg for RationalNumber {
    type Output = RationalNumber;
    fn neg(self) -> RationalNumber {
        RationalNumber(-self.0)
    }
}

impl std::iter::Sum for RationalNumber {
    fn sum<I: Iterator<Item = RationalNumber>>(iter: I) -> Self {
        iter.fold(RationalNumber::zero(), |acc, x| acc + x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stays_reduced() {
        let r = RationalNumber::new(6, -4);
        assert_eq!(*r.numer(), -3);
        assert_eq!(*r.denom(), 2);
        let s = &r + &RationalNumber::new(1, 2);
        assert_eq!(s, RationalNumber::from(-1));
    }
}
