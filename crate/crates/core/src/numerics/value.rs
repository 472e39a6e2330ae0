use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::Float;
use serde::ser::{Serialize, SerializeStruct, Serializer};

use super::precision::PrecisionConfig;

/// An extended-precision real paired with a nonnegative estimate of its
/// absolute error.
///
/// Errors add across sums and propagate to first order (plus the second-order
/// cross term) across products.
#[derive(Clone, Debug, PartialEq)]
pub struct ValueWithError {
    value: Float,
    err: f64,
}

impl ValueWithError {
    pub fn new(value: Float, err: f64) -> Self {
        assert!(
            err.is_finite() && err >= 0.0,
            "invalid error estimate {err}"
        );
        ValueWithError { value, err }
    }

    pub fn exact(value: Float) -> Self {
        ValueWithError { value, err: 0.0 }
    }

    pub fn zero(cfg: &PrecisionConfig) -> Self {
        ValueWithError::exact(Float::with_val(cfg.bits(), 0))
    }

    pub fn one(cfg: &PrecisionConfig) -> Self {
        ValueWithError::exact(Float::with_val(cfg.bits(), 1))
    }

    pub fn from_i64(v: i64, cfg: &PrecisionConfig) -> Self {
        ValueWithError::exact(Float::with_val(cfg.bits(), v))
    }

    pub fn value(&self) -> &Float {
        &self.value
    }

    pub fn err(&self) -> f64 {
        self.err
    }

    pub fn to_f64(&self) -> f64 {
        self.value.to_f64()
    }

    pub fn abs_f64(&self) -> f64 {
        self.value.to_f64().abs()
    }

    pub fn into_parts(self) -> (Float, f64) {
        (self.value, self.err)
    }

    /// Widen the error estimate by `extra`.
    pub fn with_extra_err(mut self, extra: f64) -> Self {
        assert!(extra.is_finite() && extra >= 0.0);
        self.err += extra;
        self
    }

    pub fn scale(&self, k: i64) -> Self {
        let value = Float::with_val(self.value.prec(), &self.value * k);
        ValueWithError::new(value, self.err * (k as f64).abs())
    }

    /// Multiply by the exact value `num / den`.
    pub fn scale_ratio(&self, num: i64, den: i64) -> Self {
        assert!(den != 0);
        let mut value = Float::with_val(self.value.prec(), &self.value * num);
        value /= den;
        ValueWithError::new(value, self.err * (num as f64 / den as f64).abs())
    }

    /// Multiply by an exact float factor.
    pub fn scale_float(&self, factor: &Float) -> Self {
        let value = Float::with_val(self.value.prec(), &self.value * factor);
        ValueWithError::new(value, self.err * factor.to_f64().abs())
    }

    /// `|self - other|` as f64.
    pub fn distance(&self, other: &ValueWithError) -> f64 {
        let prec = self.value.prec().max(other.value.prec());
        Float::with_val(prec, &self.value - &other.value)
            .abs()
            .to_f64()
    }

    /// Decimal rendering with `digits` significant digits.
    pub fn value_string(&self, digits: u32) -> String {
        decimal_string(&self.value, digits)
    }

    pub fn err_string(&self) -> String {
        format!("{:.3e}", self.err)
    }
}

/// Plain positional notation for moderate exponents, scientific otherwise.
pub fn decimal_string(x: &Float, digits: u32) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let (negative, mantissa, exp) = x.to_sign_string_exp(10, Some(digits.max(1) as usize));
    let exp = exp.unwrap_or(0);
    let sign = if negative { "-" } else { "" };
    let mantissa = mantissa.trim_end_matches('0');
    let mantissa = if mantissa.is_empty() { "0" } else { mantissa };
    let len = mantissa.len() as i32;
    if (-6..=0).contains(&exp) {
        format!("{sign}0.{}{mantissa}", "0".repeat((-exp) as usize))
    } else if exp > 0 && exp <= 21 {
        if len <= exp {
            format!("{sign}{mantissa}{}", "0".repeat((exp - len) as usize))
        } else {
            let (int, frac) = mantissa.split_at(exp as usize);
            format!("{sign}{int}.{frac}")
        }
    } else {
        let (lead, rest) = mantissa.split_at(1);
        let rest = if rest.is_empty() {
            String::new()
        } else {
            format!(".{rest}")
        };
        format!("{sign}{lead}{rest}e{}", exp - 1)
    }
}

impl fmt::Display for ValueWithError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(20);
        write!(
            f,
            "{} ± {}",
            self.value_string(digits as u32),
            self.err_string()
        )
    }
}

impl Serialize for ValueWithError {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let digits = decimal_digits_for(self.value.prec());
        let mut st = serializer.serialize_struct("ValueWithError", 2)?;
        st.serialize_field("value", &self.value_string(digits))?;
        st.serialize_field("err", &self.err_string())?;
        st.end()
    }
}

/// Decimal digits carried by a float of `bits` precision, guard bits excluded.
pub(crate) fn decimal_digits_for(bits: u32) -> u32 {
    let usable = bits.saturating_sub(super::precision::GUARD_BITS).max(53);
    (f64::from(usable) / std::f64::consts::LOG2_10).floor() as u32
}

fn prec_of(a: &ValueWithError, b: &ValueWithError) -> u32 {
    a.value.prec().max(b.value.prec())
}

impl<'a> Add<&'a ValueWithError> for &'a ValueWithError {
    type Output = ValueWithError;
    fn add(self, rhs: &'a ValueWithError) -> ValueWithError {
        let value = Float::with_val(prec_of(self, rhs), &self.value + &rhs.value);
        ValueWithError::new(value, self.err + rhs.err)
    }
}

impl Add for ValueWithError {
    type Output = ValueWithError;
    fn add(self, rhs: ValueWithError) -> ValueWithError {
        &self + &rhs
    }
}

impl<'a> Sub<&'a ValueWithError> for &'a ValueWithError {
    type Output = ValueWithError;
    fn sub(self, rhs: &'a ValueWithError) -> ValueWithError {
        let value = Float::with_val(prec_of(self, rhs), &self.value - &rhs.value);
        ValueWithError::new(value, self.err + rhs.err)
    }
}

impl Sub for ValueWithError {
    type Output = ValueWithError;
    fn sub(self, rhs: ValueWithError) -> ValueWithError {
        &self - &rhs
    }
}

impl<'a> Mul<&'a ValueWithError> for &'a ValueWithError {
    type Output = ValueWithError;
    fn mul(self, rhs: &'a ValueWithError) -> ValueWithError {
        let value = Float::with_val(prec_of(self, rhs), &self.value * &rhs.value);
        let err = self.abs_f64() * rhs.err + rhs.abs_f64() * self.err + self.err * rhs.err;
        ValueWithError::new(value, err)
    }
}

impl Mul for ValueWithError {
    type Output = ValueWithError;
    fn mul(self, rhs: ValueWithError) -> ValueWithError {
        &self * &rhs
    }
}

impl Neg for ValueWithError {
    type Output = ValueWithError;
    fn neg(self) -> ValueWithError {
        ValueWithError::new(-self.value, self.err)
    }
}

/// Sum of an iterator of values with additive errors; `cfg` fixes the
/// precision of the empty sum.
pub fn sum_values<I>(items: I, cfg: &PrecisionConfig) -> ValueWithError
where
    I: IntoIterator<Item = ValueWithError>,
{
    items
        .into_iter()
        .fold(ValueWithError::zero(cfg), |acc, x| &acc + &x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: f64, e: f64) -> ValueWithError {
        ValueWithError::new(Float::with_val(128, x), e)
    }

    #[test]
    fn errors_compose() {
        let a = v(2.0, 0.1);
        let b = v(3.0, 0.2);
        assert!(((&a + &b).err() - 0.3).abs() < 1e-15);
        assert!(((&a - &b).err() - 0.3).abs() < 1e-15);
        let p = &a * &b;
        assert_eq!(p.to_f64(), 6.0);
        assert!((p.err() - (2.0 * 0.2 + 3.0 * 0.1 + 0.02)).abs() < 1e-15);
        assert!((a.scale(-3).err() - 0.3).abs() < 1e-15);
    }

    #[test]
    #[should_panic]
    fn rejects_negative_error() {
        let _ = v(1.0, -1.0);
    }

    #[test]
    fn serializes_as_decimal_strings() {
        let cfg = PrecisionConfig::default();
        let x = ValueWithError::new(Float::with_val(cfg.bits(), 1) / 3u32, 1.5e-31);
        let json = serde_json::to_value(&x).unwrap();
        let value = json["value"].as_str().unwrap();
        assert!(value.starts_with("0.33333333333333333333333333333"));
        assert_eq!(json["err"].as_str().unwrap(), "1.500e-31");
    }

    #[test]
    fn decimal_rendering() {
        let f = |x: f64| decimal_string(&Float::with_val(64, x), 6);
        assert_eq!(f(0.0), "0");
        assert_eq!(f(1.5), "1.5");
        assert_eq!(f(-0.125), "-0.125");
        assert_eq!(f(1234.5), "1234.5");
        assert_eq!(f(100.0), "100");
        assert_eq!(f(0.001), "0.001");
        assert_eq!(f(1e-30), "1e-30");
        assert_eq!(f(2.5e40), "2.5e40");
    }
}
