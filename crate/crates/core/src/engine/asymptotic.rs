//! Truncated asymptotic expansions in `1/n` and `ln n`, and the
//! Euler-Maclaurin partial-sum operator acting on them.
//!
//! An [`Expansion`] stands for `sum_{i <= order} sum_l c[i][l] (ln n)^l n^-i`.
//! Nested sums whose summands have such expansions again have expansions of
//! this shape, which is what lets the engine replace the infinite tail of a
//! truncated series by a closed asymptotic formula.

use rug::{Assign, Float, Integer};

use crate::finite::BellScalar;
use crate::numerics::{bernoulli, factorial};

#[derive(Clone, Debug)]
pub(crate) struct Expansion {
    bits: u32,
    /// `coeffs[i][l]`; rows may have different lengths.
    coeffs: Vec<Vec<Float>>,
}

impl Expansion {
    pub(crate) fn zero(order: usize, bits: u32) -> Self {
        Expansion {
            bits,
            coeffs: vec![Vec::new(); order + 1],
        }
    }

    pub(crate) fn constant(c: Float, order: usize, bits: u32) -> Self {
        let mut e = Expansion::zero(order, bits);
        e.coeffs[0].push(Float::with_val(bits, c));
        e
    }

    /// `n^-a`.
    pub(crate) fn power(a: u32, order: usize, bits: u32) -> Self {
        let mut e = Expansion::zero(order, bits);
        if (a as usize) <= order {
            e.coeffs[a as usize].push(Float::with_val(bits, 1));
        }
        e
    }

    pub(crate) fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    fn slot(&mut self, i: usize, l: usize) -> &mut Float {
        let row = &mut self.coeffs[i];
        while row.len() <= l {
            row.push(Float::with_val(self.bits, 0));
        }
        &mut row[l]
    }

    fn add_at(&mut self, i: usize, l: usize, v: &Float) {
        if i <= self.order() {
            *self.slot(i, l) += v;
        }
    }

    #[cfg(test)]
    /// True when a term that does not decay (`i = 0`, `l >= 1`) is present.
    pub(crate) fn grows(&self) -> bool {
        self.coeffs[0].iter().skip(1).any(|c| !c.is_zero())
    }

    /// Constant term `c[0][0]`.
    pub(crate) fn constant_term(&self) -> Float {
        self.coeffs[0]
            .first()
            .cloned()
            .unwrap_or_else(|| Float::with_val(self.bits, 0))
    }

    pub(crate) fn add_constant(&mut self, c: &Float) {
        *self.slot(0, 0) += c;
    }

    pub(crate) fn add(&self, other: &Expansion) -> Expansion {
        let mut out = self.clone();
        for (i, row) in other.coeffs.iter().enumerate() {
            for (l, c) in row.iter().enumerate() {
                out.add_at(i, l, c);
            }
        }
        out
    }

    pub(crate) fn sub(&self, other: &Expansion) -> Expansion {
        self.add(&other.scaled(-1))
    }

    pub(crate) fn scaled(&self, k: i64) -> Expansion {
        let mut out = self.clone();
        for row in &mut out.coeffs {
            for c in row {
                *c *= k;
            }
        }
        out
    }

    pub(crate) fn mul(&self, other: &Expansion) -> Expansion {
        let order = self.order().min(other.order());
        let mut out = Expansion::zero(order, self.bits);
        let mut t = Float::with_val(self.bits, 0);
        for (i1, row1) in self.coeffs.iter().enumerate() {
            if i1 > order {
                break;
            }
            for (i2, row2) in other.coeffs.iter().enumerate() {
                if i1 + i2 > order {
                    break;
                }
                for (l1, a) in row1.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    for (l2, b) in row2.iter().enumerate() {
                        if b.is_zero() {
                            continue;
                        }
                        t.assign(a * b);
                        out.add_at(i1 + i2, l1 + l2, &t);
                    }
                }
            }
        }
        out
    }

    /// Multiply by `n^-a`.
    pub(crate) fn times_power(&self, a: u32) -> Expansion {
        let mut out = Expansion::zero(self.order(), self.bits);
        for (i, row) in self.coeffs.iter().enumerate() {
            let j = i + a as usize;
            if j > out.order() {
                break;
            }
            out.coeffs[j] = row.clone();
        }
        out
    }

    /// Re-expand `E(n - 1)` in powers of `1/n` and `ln n`.
    ///
    /// Uses `ln(n-1) = ln n + ln(1 - u)` and `(n-1)^-i = n^-i (1-u)^-i` with
    /// `u = 1/n`.
    pub(crate) fn shift_back(&self) -> Expansion {
        let order = self.order();
        let bits = self.bits;
        let max_l = self.coeffs.iter().map(Vec::len).max().unwrap_or(0);
        // ln(1 - u) = -sum u^j / j and its powers
        let mut lam = vec![Float::with_val(bits, 0); order + 1];
        for (j, c) in lam.iter_mut().enumerate().skip(1) {
            c.assign(-1);
            *c /= j as u32;
        }
        let mut lam_pows: Vec<Vec<Float>> = Vec::with_capacity(max_l);
        let mut cur = vec![Float::with_val(bits, 0); order + 1];
        cur[0].assign(1);
        for _ in 0..max_l {
            lam_pows.push(cur.clone());
            let mut next = vec![Float::with_val(bits, 0); order + 1];
            for (a, x) in cur.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (b, y) in lam.iter().enumerate().skip(1) {
                    if a + b > order {
                        break;
                    }
                    next[a + b] += Float::with_val(bits, x * y);
                }
            }
            cur = next;
        }

        let mut out = Expansion::zero(order, bits);
        let mut t = Float::with_val(bits, 0);
        for (i, row) in self.coeffs.iter().enumerate() {
            for (l, c) in row.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (tpow, lam_t) in lam_pows.iter().enumerate().take(l + 1) {
                    let choose = Integer::from(Integer::binomial_u(l as u32, tpow as u32));
                    for (a, lc) in lam_t.iter().enumerate() {
                        if lc.is_zero() || i + a > order {
                            continue;
                        }
                        let max_b = order - i - a;
                        let b_range = if i == 0 { 0..=0 } else { 0..=max_b };
                        for b in b_range {
                            // C(i + b - 1, b)
                            let rising = if i == 0 {
                                Integer::from(1)
                            } else {
                                Integer::from(Integer::binomial_u((i + b - 1) as u32, b as u32))
                            };
                            t.assign(c * lc);
                            t *= &choose;
                            t *= &rising;
                            out.add_at(i + a + b, l - tpow, &t);
                        }
                    }
                }
            }
        }
        out
    }

    /// d/dn, using `d(L^l n^-i) = (l L^{l-1} - i L^l) n^{-i-1}`.
    pub(crate) fn derivative(&self) -> Expansion {
        let order = self.order();
        let mut out = Expansion::zero(order, self.bits);
        let mut t = Float::with_val(self.bits, 0);
        for (i, row) in self.coeffs.iter().enumerate() {
            if i + 1 > order {
                break;
            }
            for (l, c) in row.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                if l > 0 {
                    t.assign(c * l as u32);
                    out.add_at(i + 1, l - 1, &t);
                }
                if i > 0 {
                    t.assign(c * i as u32);
                    t = -t;
                    out.add_at(i + 1, l, &t);
                }
            }
        }
        out
    }

    /// An antiderivative without constant term. Requires all `i = 0`
    /// coefficients to vanish.
    pub(crate) fn antiderivative(&self) -> Expansion {
        assert!(
            self.coeffs[0].iter().all(|c| c.is_zero()),
            "cannot integrate a non-decaying expansion"
        );
        let order = self.order();
        let bits = self.bits;
        let mut out = Expansion::zero(order, bits);
        let mut t = Float::with_val(bits, 0);
        for (i, row) in self.coeffs.iter().enumerate().skip(1) {
            for (l, c) in row.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                if i == 1 {
                    t.assign(c / (l as u32 + 1));
                    out.add_at(0, l + 1, &t);
                    continue;
                }
                // n^{1-i} sum_j (-1)^j l!/(l-j)! L^{l-j} / (1-i)^{j+1}
                let shift = 1 - i as i64;
                let mut falling = Integer::from(1);
                let mut den = Integer::from(shift);
                for j in 0..=l {
                    t.assign(c * &falling);
                    t /= &den;
                    if j % 2 == 1 {
                        t = -t;
                    }
                    out.add_at(i - 1, l - j, &t);
                    falling *= (l - j) as u64;
                    den *= shift;
                }
            }
        }
        out
    }

    /// `F` with `sum_{k <= n} f(k) = C + F(n)` (Euler-Maclaurin), where `f`
    /// is `self`.
    pub(crate) fn partial_sum(&self) -> Expansion {
        let bits = self.bits;
        let mut out = self.antiderivative();
        let mut half = self.clone();
        for row in &mut half.coeffs {
            for c in row {
                *c /= 2u32;
            }
        }
        out = out.add(&half);
        let mut d = self.derivative();
        let mut m = 1usize;
        while !d.is_zero() {
            let b = bernoulli(2 * m).to_float(bits);
            let mut coef = b;
            coef /= Float::with_val(bits, factorial(2 * m as u32));
            let mut term = d.clone();
            for row in &mut term.coeffs {
                for c in row {
                    *c *= &coef;
                }
            }
            out = out.add(&term);
            d = d.derivative().derivative();
            m += 1;
        }
        out
    }

    fn is_zero(&self) -> bool {
        self.coeffs
            .iter()
            .all(|row| row.iter().all(|c| c.is_zero()))
    }

    pub(crate) fn eval(&self, n: u64) -> Float {
        let bits = self.bits;
        let nf = Float::with_val(bits, n);
        let log = Float::with_val(bits, nf.ln_ref());
        let u = nf.recip();
        let mut acc = Float::with_val(bits, 0);
        for row in self.coeffs.iter().rev() {
            let mut inner = Float::with_val(bits, 0);
            for c in row.iter().rev() {
                inner *= &log;
                inner += c;
            }
            acc *= &u;
            acc += &inner;
        }
        acc
    }
}

impl BellScalar for Expansion {
    fn zero_like(&self) -> Self {
        Expansion::zero(self.order(), self.bits)
    }
    fn add_product(&mut self, a: &Self, b: &Self) {
        *self = self.add(&a.mul(b));
    }
    fn div_u64(&mut self, d: u64) {
        for row in &mut self.coeffs {
            for c in row {
                *c /= d;
            }
        }
    }
}

/// Expansion order sufficient for `digits` correct digits at truncation `n`.
pub(crate) fn order_for(digits: u32, n: u64) -> usize {
    let scale = (n.max(2) as f64).log10();
    let k = ((f64::from(digits) + 12.0) / scale).ceil() as usize + 2;
    k.clamp(4, 80)
}
