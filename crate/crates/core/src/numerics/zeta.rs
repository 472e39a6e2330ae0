use rug::ops::PowAssign;
use rug::Float;

use super::combinatorics::{bernoulli, factorial};
use super::precision::PrecisionConfig;
use super::value::ValueWithError;
use crate::error::{Error, Result};

/// Riemann zeta at an integer `s >= 2` by Euler-Maclaurin summation.
///
/// The direct part runs to `M - 1` with `M` a few more than the requested
/// digits; Bernoulli corrections are added until the next one drops below the
/// working ulp. The reported error is that first omitted correction plus the
/// nominal rounding level.
pub fn riemann_zeta(s: i64, cfg: &PrecisionConfig) -> Result<ValueWithError> {
    if s < 2 {
        return Err(Error::Domain(format!("riemann_zeta needs s >= 2, got {s}")));
    }
    let s = s as u32;
    let bits = cfg.bits();
    let m = u64::from(cfg.digits) + 10;

    let mut sum = Float::with_val(bits, 0);
    for k in 1..m {
        let mut t = Float::with_val(bits, k);
        t.pow_assign(s);
        sum += t.recip();
    }
    let mf = Float::with_val(bits, m);
    let mut m_pow = mf.clone();
    m_pow.pow_assign(s); // M^s
    let m_inv_s = Float::with_val(bits, m_pow.recip_ref()); // M^-s
    sum += Float::with_val(bits, &m_inv_s * &mf) / (s - 1);
    sum += Float::with_val(bits, &m_inv_s / 2u32);

    let threshold = Float::with_val(bits, Float::i_exp(1, -(bits as i32)));
    let m_sq_inv = Float::with_val(bits, &mf * &mf).recip();
    // (s)_{2j-1} M^{-s-2j+1}, updated by two factors per step
    let mut rising_pow = Float::with_val(bits, &m_inv_s * s) / &mf;
    let mut j = 1usize;
    let omitted = loop {
        let b = bernoulli(2 * j).to_float(bits);
        let fact = Float::with_val(bits, factorial(2 * j as u32));
        let term = Float::with_val(bits, &b * &rising_pow) / fact;
        if Float::with_val(bits, term.abs_ref()) < threshold || j > 4 * m as usize {
            break term.to_f64().abs();
        }
        sum += &term;
        let a = u64::from(s) + 2 * j as u64 - 1;
        rising_pow *= a * (a + 1);
        rising_pow *= &m_sq_inv;
        j += 1;
    };
    let err = omitted + cfg.nominal_eps() * sum.to_f64().abs();
    Ok(ValueWithError::new(sum, err))
}
