//! The generating-function route for `zeta*(r+2, {2}^m)`:
//! `sum_k k^-(r+2) c_m(k)` with `c_m(k) = [x^2m] prod_{n >= k} (1 - x^2/n^2)^-1`.

use rug::ops::PowAssign;
use rug::{Assign, Float};

use super::asymptotic::{order_for, Expansion};
use crate::finite::bell_sequence;
use crate::numerics::{PrecisionConfig, ValueWithError};

/// `[y^0..y^m]` of `prod_{n > cut} (1 - y/n^2)^-1`, from the tail power sums
/// `sum_{n > cut} n^-2j` via the modified Bell polynomials.
fn tail_product(m: usize, cut: u64, order: usize, bits: u32) -> Vec<Float> {
    let sums: Vec<Float> = (1..=m)
        .map(|j| {
            let f = Expansion::power(2 * j as u32, order, bits);
            -f.partial_sum().eval(cut)
        })
        .collect();
    bell_sequence(m, &sums, Float::with_val(bits, 1))
}

/// Asymptotic expansion in `k` of `c_m(k)`, for `k` beyond the cutoff.
fn coefficient_expansion(m: usize, order: usize, bits: u32) -> Expansion {
    // sum_{n >= k} n^-2j = f(k) - F(k)
    let sums: Vec<Expansion> = (1..=m)
        .map(|j| {
            let f = Expansion::power(2 * j as u32, order, bits);
            f.sub(&f.partial_sum())
        })
        .collect();
    bell_sequence(
        m,
        &sums,
        Expansion::constant(Float::with_val(bits, 1), order, bits),
    )
    .pop()
    .expect("nonempty")
}

/// Coefficients of `prod_{n=k}^{cut} (1 - y/n^2)^-1` up to `y^m`.
fn finite_product(k: u64, m: usize, cut: u64, bits: u32) -> Vec<Float> {
    let mut poly = vec![Float::with_val(bits, 0); m + 1];
    poly[0].assign(1);
    let mut q = Float::with_val(bits, 0);
    let mut t = Float::with_val(bits, 0);
    for n in (k..=cut).rev() {
        q.assign(n);
        q.square_mut();
        q.recip_mut();
        for i in 1..=m {
            let (lo, hi) = poly.split_at_mut(i);
            t.assign(&lo[i - 1] * &q);
            hi[0] += &t;
        }
    }
    poly
}

fn convolve_top(a: &[Float], b: &[Float], m: usize, bits: u32) -> Float {
    let mut acc = Float::with_val(bits, 0);
    for i in 0..=m {
        acc += Float::with_val(bits, &a[i] * &b[m - i]);
    }
    acc
}

fn tail_coeff_at(k: u64, m: usize, cut: u64, cfg: &PrecisionConfig) -> Float {
    let bits = cfg.bits();
    let order = order_for(cfg.digits, cut);
    let head = finite_product(k, m, cut, bits);
    let tail = tail_product(m, cut, order, bits);
    convolve_top(&head, &tail, m, bits)
}

/// `c_m(k) = sum_{k <= n_1 <= ... <= n_m} prod n_i^-2`, the coefficient of
/// `x^2m` in `prod_{n >= k} (1 - x^2/n^2)^-1`.
pub fn homogeneous_tail_coeff(k: u64, m: usize, cfg: &PrecisionConfig) -> ValueWithError {
    assert!(k >= 1, "k must be positive");
    let bits = cfg.bits();
    if m == 0 {
        return ValueWithError::exact(Float::with_val(bits, 1));
    }
    let cut = cfg.cutoff.max(2 * k);
    let full = tail_coeff_at(k, m, cut, cfg);
    let half = tail_coeff_at(k, m, cut / 2, cfg);
    let diff = Float::with_val(bits, &full - &half).abs().to_f64();
    let err = 2.0 * diff + cfg.nominal_eps() * full.to_f64().abs() * 2.0;
    ValueWithError::new(full, err)
}

fn head2_at(r: u32, m: usize, cut: u64, cfg: &PrecisionConfig) -> Float {
    let bits = cfg.bits();
    let order = order_for(cfg.digits, cut);
    let head_exp = r + 2;

    // sum_{k <= cut} k^-(r+2) [y^i] prod_{n=k}^{cut}
    let mut poly = vec![Float::with_val(bits, 0); m + 1];
    poly[0].assign(1);
    let mut acc = vec![Float::with_val(bits, 0); m + 1];
    let mut q = Float::with_val(bits, 0);
    let mut w = Float::with_val(bits, 0);
    let mut t = Float::with_val(bits, 0);
    for k in (1..=cut).rev() {
        q.assign(k);
        q.square_mut();
        q.recip_mut();
        for i in 1..=m {
            let (lo, hi) = poly.split_at_mut(i);
            t.assign(&lo[i - 1] * &q);
            hi[0] += &t;
        }
        w.assign(k);
        w.pow_assign(head_exp);
        w.recip_mut();
        for (a, p) in acc.iter_mut().zip(&poly) {
            t.assign(p * &w);
            *a += &t;
        }
    }
    let tail = tail_product(m, cut, order, bits);
    let mut value = convolve_top(&acc, &tail, m, bits);

    // sum_{k > cut} k^-(r+2) c_m(k) from the expansion of c_m
    let summand = coefficient_expansion(m, order, bits).times_power(head_exp);
    value -= summand.partial_sum().eval(cut);
    value
}

/// `zeta*(r+2, {2}^m)` by the generating-function route.
pub fn zetastar_head2(r: u32, m: usize, cfg: &PrecisionConfig) -> ValueWithError {
    let bits = cfg.bits();
    let cut = cfg.cutoff;
    let full = head2_at(r, m, cut, cfg);
    let half = head2_at(r, m, cut / 2, cfg);
    let diff = Float::with_val(bits, &full - &half).abs().to_f64();
    let ulp = 2f64.powi(-(bits as i32));
    let rounding = cfg.nominal_eps() * full.to_f64().abs()
        + ulp * cut as f64 * (m as f64 + 2.0) * full.to_f64().abs();
    ValueWithError::new(full, 2.0 * diff + rounding)
}
