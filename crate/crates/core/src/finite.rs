//! Truncated multiple zeta sums, generalized harmonic numbers and the
//! modified Bell polynomials that connect them.

use rug::ops::{Pow, PowAssign};
use rug::{Assign, Float, Integer, Rational};
use serde::{Deserialize, Serialize};

use crate::indices::MultiIndex;
use crate::numerics::{PrecisionConfig, RationalNumber, ValueWithError};

/// Largest truncation evaluated in exact rationals by [`finite_value`].
pub const EXACT_LIMIT: u64 = 1_000;

/// Strict (`<`) or non-strict (`<=`) ordering of summation variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SumKind {
    Zeta,
    ZetaStar,
}

/// Running values of `zeta_n` (or `zeta*_n`) on every prefix of a fixed index,
/// advanced one step of `n` at a time.
#[derive(Clone, Debug)]
pub struct PrefixState {
    index: MultiIndex,
    kind: SumKind,
    n: u64,
    values: Vec<RationalNumber>,
}

impl PrefixState {
    pub fn new(index: MultiIndex, kind: SumKind) -> Self {
        let mut values = vec![RationalNumber::zero(); index.depth() + 1];
        values[0] = RationalNumber::one();
        PrefixState {
            index,
            kind,
            n: 0,
            values,
        }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// `values()[j]` is the truncated sum over the first `j` entries.
    pub fn values(&self) -> &[RationalNumber] {
        &self.values
    }

    pub fn value(&self) -> &RationalNumber {
        self.values.last().expect("prefix 0 always present")
    }

    pub fn advance(&mut self) {
        self.n += 1;
        let k = Integer::from(self.n);
        let parts = self.index.parts().to_vec();
        let term = |j: usize, prev: &RationalNumber| -> RationalNumber {
            let den = Integer::from((&k).pow(parts[j - 1]));
            RationalNumber::from(Rational::from(prev.as_rug() / &den))
        };
        match self.kind {
            SumKind::Zeta => {
                for j in (1..self.values.len()).rev() {
                    let t = term(j, &self.values[j - 1]);
                    self.values[j] = &self.values[j] + &t;
                }
            }
            SumKind::ZetaStar => {
                for j in 1..self.values.len() {
                    let t = term(j, &self.values[j - 1]);
                    self.values[j] = &self.values[j] + &t;
                }
            }
        }
    }
}

/// `H_n^(s) = sum_{j=1}^{n} j^{-s}`.
pub fn gen_harmonic(n: u64, s: u32) -> RationalNumber {
    assert!(s >= 1, "harmonic order must be positive");
    finite_mzv(&MultiIndex::repeated(s, 1), n)
}

fn finite_exact(idx: &MultiIndex, n: u64, kind: SumKind) -> RationalNumber {
    if idx.is_empty() {
        return RationalNumber::one();
    }
    if kind == SumKind::Zeta && idx.depth() as u64 > n {
        return RationalNumber::zero();
    }
    let mut state = PrefixState::new(idx.clone(), kind);
    for _ in 0..n {
        state.advance();
    }
    state.value().clone()
}

/// `zeta_n(idx)`: sum over `1 <= k_1 < ... < k_r <= n`.
pub fn finite_mzv(idx: &MultiIndex, n: u64) -> RationalNumber {
    finite_exact(idx, n, SumKind::Zeta)
}

/// `zeta*_n(idx)`: sum over `1 <= k_1 <= ... <= k_r <= n`.
pub fn finite_mzsv(idx: &MultiIndex, n: u64) -> RationalNumber {
    finite_exact(idx, n, SumKind::ZetaStar)
}

/// Truncated sum in working-precision floating point, for large `n`.
pub fn finite_sum_float(
    idx: &MultiIndex,
    n: u64,
    kind: SumKind,
    cfg: &PrecisionConfig,
) -> ValueWithError {
    let bits = cfg.bits();
    let r = idx.depth();
    let mut values: Vec<Float> = (0..=r).map(|_| Float::with_val(bits, 0)).collect();
    values[0] = Float::with_val(bits, 1);
    let mut t = Float::with_val(bits, 0);
    for k in 1..=n {
        let inv = Float::with_val(bits, k).recip();
        let order: Box<dyn Iterator<Item = usize>> = match kind {
            SumKind::Zeta => Box::new((1..=r).rev()),
            SumKind::ZetaStar => Box::new(1..=r),
        };
        for j in order {
            t.assign(&inv);
            t.pow_assign(idx.parts()[j - 1]);
            t *= &values[j - 1];
            values[j] += &t;
        }
    }
    let value = values.pop().expect("nonempty");
    let err = cfg.nominal_eps()
        * value.to_f64().abs()
        * (1.0 + (n as f64) * 2f64.powi(-(crate::numerics::GUARD_BITS as i32)));
    ValueWithError::new(value, err)
}

/// A truncated sum, exact when cheap.
#[derive(Clone, Debug)]
pub enum FiniteValue {
    Exact(RationalNumber),
    Approx(ValueWithError),
}

impl FiniteValue {
    pub fn to_value(&self, cfg: &PrecisionConfig) -> ValueWithError {
        match self {
            FiniteValue::Exact(r) => {
                let v = r.to_float(cfg.bits());
                let err = cfg.nominal_eps() * v.to_f64().abs();
                ValueWithError::new(v, err)
            }
            FiniteValue::Approx(v) => v.clone(),
        }
    }
}

/// Exact rationals up to [`EXACT_LIMIT`], floats beyond.
pub fn finite_value(idx: &MultiIndex, n: u64, kind: SumKind, cfg: &PrecisionConfig) -> FiniteValue {
    if n <= EXACT_LIMIT {
        FiniteValue::Exact(finite_exact(idx, n, kind))
    } else {
        FiniteValue::Approx(finite_sum_float(idx, n, kind, cfg))
    }
}

/// Scalars the Bell recurrence can run over.
pub trait BellScalar: Clone {
    fn zero_like(&self) -> Self;
    fn add_product(&mut self, a: &Self, b: &Self);
    fn div_u64(&mut self, d: u64);
}

impl BellScalar for RationalNumber {
    fn zero_like(&self) -> Self {
        RationalNumber::zero()
    }
    fn add_product(&mut self, a: &Self, b: &Self) {
        *self = &*self + &(a * b);
    }
    fn div_u64(&mut self, d: u64) {
        *self = self.div_int(d as i64);
    }
}

impl BellScalar for Float {
    fn zero_like(&self) -> Self {
        Float::with_val(self.prec(), 0)
    }
    fn add_product(&mut self, a: &Self, b: &Self) {
        *self += Float::with_val(self.prec(), a * b);
    }
    fn div_u64(&mut self, d: u64) {
        *self /= d;
    }
}

/// `P_0, ..., P_m` from `m P_m = sum_{k=1}^{m} x_k P_{m-k}`, `P_0 = one`.
pub fn bell_sequence<T: BellScalar>(m: usize, xs: &[T], one: T) -> Vec<T> {
    assert!(xs.len() >= m, "need at least m arguments");
    let mut out = Vec::with_capacity(m + 1);
    out.push(one);
    for j in 1..=m {
        let mut acc = out[0].zero_like();
        for k in 1..=j {
            acc.add_product(&xs[k - 1], &out[j - k]);
        }
        acc.div_u64(j as u64);
        out.push(acc);
    }
    out
}

/// Modified Bell polynomial `P_m(x_1, ..., x_m)`, defined by
/// `exp(sum_k x_k z^k / k) = sum_m P_m z^m`.
pub fn bell_poly(m: usize, xs: &[RationalNumber]) -> RationalNumber {
    bell_sequence(m, xs, RationalNumber::one())
        .pop()
        .expect("nonempty")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> RationalNumber {
        RationalNumber::new(n, d)
    }

    fn idx(parts: &[u32]) -> MultiIndex {
        MultiIndex::new(parts.to_vec()).unwrap()
    }

    /// Direct enumeration over all tuples in [1, n]^r.
    fn brute(idx: &MultiIndex, n: u64, kind: SumKind) -> RationalNumber {
        fn rec(parts: &[u32], lo: u64, n: u64, kind: SumKind) -> RationalNumber {
            if parts.is_empty() {
                return RationalNumber::one();
            }
            let mut acc = RationalNumber::zero();
            for k in lo..=n {
                let next = if kind == SumKind::Zeta { k + 1 } else { k };
                let term = RationalNumber::new(1, Integer::from(k).pow(parts[0]));
                acc = acc + &term * &rec(&parts[1..], next, n, kind);
            }
            acc
        }
        rec(idx.parts(), 1, n, kind)
    }

    #[test]
    fn harmonic_examples() {
        assert_eq!(gen_harmonic(3, 1), q(11, 6));
        assert_eq!(gen_harmonic(0, 2), RationalNumber::zero());
        assert_eq!(gen_harmonic(4, 2), q(205, 144));
    }

    #[test]
    fn finite_examples() {
        assert_eq!(finite_mzv(&idx(&[1, 2]), 3), q(5, 12));
        assert_eq!(finite_mzv(&MultiIndex::empty(), 5), RationalNumber::one());
        assert_eq!(finite_mzv(&idx(&[1, 1]), 2), q(1, 2));
        // (1,1),(1,2),(2,2): 1 + 1/2 + 1/4
        assert_eq!(finite_mzsv(&idx(&[1, 1]), 2), q(7, 4));
        assert_eq!(brute(&idx(&[1, 1]), 2, SumKind::ZetaStar), q(7, 4));
        assert_eq!(finite_mzsv(&idx(&[2]), 2), q(5, 4));
        assert_eq!(finite_mzsv(&MultiIndex::empty(), 0), RationalNumber::one());
        assert_eq!(finite_mzsv(&idx(&[3]), 0), RationalNumber::zero());
    }

    #[test]
    fn dp_matches_enumeration() {
        for parts in [
            &[1u32, 2][..],
            &[2, 1, 3],
            &[1, 1, 1],
            &[3, 1],
            &[2, 2, 2, 1],
        ] {
            let i = idx(parts);
            for n in 0..7 {
                assert_eq!(finite_mzv(&i, n), brute(&i, n, SumKind::Zeta));
                assert_eq!(finite_mzsv(&i, n), brute(&i, n, SumKind::ZetaStar));
            }
        }
    }

    #[test]
    fn ones_vanish_beyond_n() {
        for n in 0..6u64 {
            for m in (n as usize + 1)..8 {
                assert!(finite_mzv(&MultiIndex::repeated(1, m), n).is_zero());
            }
        }
    }

    #[test]
    fn star_dominates_strict() {
        for parts in [&[1u32, 2][..], &[2, 2], &[1, 1, 3], &[3, 1, 2]] {
            let i = idx(parts);
            for n in 0..15 {
                assert!(finite_mzsv(&i, n) >= finite_mzv(&i, n));
            }
        }
    }

    #[test]
    fn bell_low_orders() {
        let x1 = q(3, 7);
        let x2 = q(-5, 2);
        let x3 = q(11, 3);
        assert_eq!(bell_poly(0, &[]), RationalNumber::one());
        let xs = vec![x1.clone(), x2.clone(), x3.clone()];
        let p2 = (&(&x1 * &x1) + &x2).div_int(2);
        assert_eq!(bell_poly(2, &xs), p2);
        let p3 = (&(&(&x1 * &x1) * &x1) + &(&(&x1 * &x2).mul_int(3) + &x3.mul_int(2))).div_int(6);
        assert_eq!(bell_poly(3, &xs), p3);
    }

    #[test]
    fn ones_match_bell_polynomials() {
        for n in 0..=12u64 {
            for m in 0..=4usize {
                let strict_args: Vec<RationalNumber> = (1..=m)
                    .map(|s| {
                        let h = gen_harmonic(n, s as u32);
                        if s % 2 == 1 {
                            h
                        } else {
                            -h
                        }
                    })
                    .collect();
                let star_args: Vec<RationalNumber> =
                    (1..=m).map(|s| gen_harmonic(n, s as u32)).collect();
                let ones = MultiIndex::repeated(1, m);
                assert_eq!(finite_mzv(&ones, n), bell_poly(m, &strict_args));
                assert_eq!(finite_mzsv(&ones, n), bell_poly(m, &star_args));
            }
        }
    }

    #[test]
    fn float_route_tracks_exact() {
        let cfg = PrecisionConfig::default();
        let i = idx(&[1, 2, 1, 3]);
        let exact = finite_mzsv(&i, 200).to_float(cfg.bits());
        let approx = finite_sum_float(&i, 200, SumKind::ZetaStar, &cfg);
        let diff = Float::with_val(cfg.bits(), approx.value() - &exact)
            .abs()
            .to_f64();
        assert!(diff <= approx.err());
        match finite_value(&i, 2000, SumKind::Zeta, &cfg) {
            FiniteValue::Approx(_) => {}
            FiniteValue::Exact(_) => panic!("expected float route above the exact limit"),
        }
    }

    #[test]
    fn prefix_state_is_monotone() {
        let mut st = PrefixState::new(idx(&[1, 2, 2]), SumKind::Zeta);
        let mut last = st.values().to_vec();
        for _ in 0..10 {
            st.advance();
            for (a, b) in st.values().iter().zip(&last) {
                assert!(a >= b);
            }
            last = st.values().to_vec();
        }
        assert_eq!(st.n(), 10);
    }
}
