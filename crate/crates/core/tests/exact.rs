//! Exact rational identities: Bernoulli numbers, binomials, harmonic
//! numbers, finite sums, Bell polynomials and compositions.

use eulersum_core::finite::{bell_poly, finite_mzsv, finite_mzv, gen_harmonic};
use eulersum_core::indices::{admissible_by_weight_height, compositions, weight_depth_height};
use eulersum_core::numerics::{bernoulli, binomial, RationalNumber};
use eulersum_core::MultiIndex;
use proptest::prelude::*;

fn q(n: i64, d: i64) -> RationalNumber {
    RationalNumber::new(n, d)
}

fn idx(parts: &[u32]) -> MultiIndex {
    MultiIndex::new(parts.to_vec()).unwrap()
}

#[test]
fn bernoulli_examples() {
    assert_eq!(bernoulli(0), q(1, 1));
    assert_eq!(bernoulli(1), q(-1, 2));
    assert_eq!(bernoulli(12), q(-691, 2730));
}

#[test]
fn bernoulli_recurrence() {
    for n in 1..=24u64 {
        let total = (0..=n).fold(RationalNumber::zero(), |acc, k| {
            &acc + &(&RationalNumber::from_integer(binomial(n + 1, k as i64))
                * &bernoulli(k as usize))
        });
        assert!(total.is_zero(), "n = {n}");
    }
    for m in 1..=20 {
        assert!(bernoulli(2 * m + 1).is_zero());
    }
}

#[test]
fn binomial_examples() {
    assert_eq!(binomial(4, 2), 6);
    assert_eq!(binomial(7, 3), 35);
    for n in 0..10 {
        assert_eq!(binomial(n, 0), 1);
        assert_eq!(binomial(n, -1), 0);
        assert_eq!(binomial(n, n as i64 + 1), 0);
    }
}

#[test]
fn harmonic_examples() {
    assert_eq!(gen_harmonic(3, 1), q(11, 6));
    assert_eq!(gen_harmonic(0, 2), RationalNumber::zero());
    assert_eq!(gen_harmonic(4, 2), q(205, 144));
}

#[test]
fn finite_sum_examples() {
    assert_eq!(finite_mzv(&idx(&[1, 2]), 3), q(5, 12));
    assert_eq!(finite_mzv(&MultiIndex::empty(), 5), q(1, 1));
    assert_eq!(finite_mzv(&idx(&[1, 1]), 2), q(1, 2));
    // (1,1) + (1,2) + (2,2) = 1 + 1/2 + 1/4
    assert_eq!(finite_mzsv(&idx(&[1, 1]), 2), q(7, 4));
    assert_eq!(finite_mzsv(&idx(&[2]), 2), q(5, 4));
    assert_eq!(finite_mzsv(&MultiIndex::empty(), 0), q(1, 1));
}

#[test]
fn bell_examples() {
    assert_eq!(bell_poly(0, &[]), q(1, 1));
    let (x1, x2, x3) = (q(3, 7), q(-2, 5), q(11, 3));
    let p2 = (&(&x1 * &x1) + &x2).div_int(2);
    assert_eq!(bell_poly(2, &[x1.clone(), x2.clone()]), p2);
    let p3 = (&(&(&(&x1 * &x1) * &x1) + (&(&x1 * &x2).mul_int(3))) + &x3.mul_int(2)).div_int(6);
    assert_eq!(bell_poly(3, &[x1, x2, x3]), p3);
}

/// Coefficients of `exp(f)` for `f = sum_k x_k z^k / k` truncated at order
/// `m`, summed as `sum_j f^j / j!`.
fn exp_coefficients(xs: &[RationalNumber], m: usize) -> Vec<RationalNumber> {
    let mut f = vec![RationalNumber::zero(); m + 1];
    for k in 1..=m {
        f[k] = xs[k - 1].div_int(k as i64);
    }
    let mul = |a: &[RationalNumber], b: &[RationalNumber]| {
        let mut out = vec![RationalNumber::zero(); m + 1];
        for i in 0..=m {
            for j in 0..=m - i {
                out[i + j] = &out[i + j] + &(&a[i] * &b[j]);
            }
        }
        out
    };
    let mut power = vec![RationalNumber::zero(); m + 1];
    power[0] = RationalNumber::one();
    let mut total = power.clone();
    for j in 1..=m {
        power = mul(&power, &f)
            .into_iter()
            .map(|c| c.div_int(j as i64))
            .collect();
        for i in 0..=m {
            total[i] = &total[i] + &power[i];
        }
    }
    total
}

proptest! {
    #[test]
    fn bell_matches_symbolic_exponential(
        nums in proptest::collection::vec(-50i64..50, 8),
        dens in proptest::collection::vec(1i64..20, 8),
    ) {
        let xs: Vec<RationalNumber> = nums.iter().zip(&dens).map(|(&n, &d)| q(n, d)).collect();
        let coeffs = exp_coefficients(&xs, 8);
        for m in 0..=8 {
            prop_assert_eq!(bell_poly(m, &xs[..m]), coeffs[m].clone());
        }
    }
}

#[test]
fn ones_are_bell_polynomials_in_harmonic_numbers() {
    for n in 0..=50u64 {
        let h: Vec<RationalNumber> = (1..=6).map(|s| gen_harmonic(n, s)).collect();
        let alternating: Vec<RationalNumber> = h
            .iter()
            .enumerate()
            .map(|(i, v)| if i % 2 == 0 { v.clone() } else { -v.clone() })
            .collect();
        for m in 0..=6 {
            let ones = MultiIndex::repeated(1, m);
            assert_eq!(
                finite_mzv(&ones, n),
                bell_poly(m, &alternating),
                "n={n} m={m}"
            );
            assert_eq!(finite_mzsv(&ones, n), bell_poly(m, &h), "n={n} m={m}");
        }
    }
}

#[test]
fn weight_depth_height_examples() {
    assert_eq!(weight_depth_height(&idx(&[1, 3])), (4, 2, 1));
    assert_eq!(weight_depth_height(&MultiIndex::empty()), (0, 0, 0));
    assert_eq!(weight_depth_height(&idx(&[2, 2, 2])), (6, 3, 3));
}

#[test]
fn composition_examples() {
    let parts = |t, p, m| compositions(t, p, m).map(|c| c.parts).collect::<Vec<_>>();
    assert_eq!(parts(3, 2, 1), vec![vec![1, 2], vec![2, 1]]);
    assert_eq!(parts(1, 2, 0), vec![vec![0, 1], vec![1, 0]]);
    assert_eq!(parts(4, 1, 1), vec![vec![4]]);
}

#[test]
fn composition_counts_match_binomials() {
    for t in 0..=12u32 {
        for p in 1..=6usize {
            let positive = compositions(t, p, 1).count();
            let weak = compositions(t, p, 0).count();
            let expect_positive = if t == 0 {
                0
            } else {
                binomial(u64::from(t) - 1, p as i64 - 1).to_usize().unwrap()
            };
            assert_eq!(positive, expect_positive, "t={t} p={p}");
            assert_eq!(
                weak,
                binomial(u64::from(t) + p as u64 - 1, p as i64 - 1)
                    .to_usize()
                    .unwrap()
            );
        }
    }
}

#[test]
fn admissible_examples() {
    let sorted = |w, h| {
        let mut v = admissible_by_weight_height(w, h);
        v.sort();
        v
    };
    let mut four = vec![idx(&[4]), idx(&[1, 3]), idx(&[1, 1, 2])];
    four.sort();
    assert_eq!(sorted(4, 1), four);
    assert_eq!(sorted(2, 1), vec![idx(&[2])]);
    let mut five = vec![idx(&[2, 3]), idx(&[3, 2]), idx(&[1, 2, 2]), idx(&[2, 1, 2])];
    five.sort();
    assert_eq!(sorted(5, 2), five);
}

#[test]
fn admissible_counts_by_weight() {
    // 2^{w-2} admissible indices of weight w, split by height
    for w in 2..=10u32 {
        let total: usize = (1..=w as usize / 2)
            .map(|h| admissible_by_weight_height(w, h).len())
            .sum();
        assert_eq!(total, 1 << (w - 2));
    }
}
