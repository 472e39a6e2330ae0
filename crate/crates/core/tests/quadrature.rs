//! Tanh-sinh integration of logarithmic monomials over the simplex.

use eulersum_core::numerics::RationalNumber;
use eulersum_core::quadrature::{
    eliminate_f4, euler_sum_integrand, expand_log_power, head_two_integrand, integrate_monomials,
    monomial_levels, Factor, LogMonomial,
};
use eulersum_core::{Evaluator, PrecisionConfig};

fn cfg() -> PrecisionConfig {
    PrecisionConfig::default()
}

fn render(terms: &[LogMonomial]) -> Vec<String> {
    let mut v: Vec<String> = terms.iter().map(ToString::to_string).collect();
    v.sort();
    v
}

#[test]
fn log_power_examples() {
    let one = expand_log_power(Factor::F1, Factor::F3, -1, 1).unwrap();
    assert_eq!(
        render(&one),
        render(&[
            LogMonomial::power(Factor::F1, 1),
            LogMonomial::power(Factor::F3, 1).scaled(&RationalNumber::from(-1))
        ])
    );
    let two = expand_log_power(Factor::F1, Factor::F3, -1, 2).unwrap();
    let expect = [
        LogMonomial::power(Factor::F1, 2),
        LogMonomial::power(Factor::F1, 1)
            .mul(&LogMonomial::power(Factor::F3, 1))
            .scaled(&RationalNumber::from(-2)),
        LogMonomial::power(Factor::F3, 2),
    ];
    assert_eq!(render(&two), render(&expect));
    let zero = expand_log_power(Factor::F2, Factor::F1, -1, 0).unwrap();
    assert_eq!(
        render(&zero),
        render(&[LogMonomial::constant(RationalNumber::one())])
    );
}

#[test]
fn constant_integrand_gives_zeta2() {
    let c = cfg();
    let v = integrate_monomials(&[LogMonomial::constant(RationalNumber::one())], &c).unwrap();
    let z2 = Evaluator::new(c).unwrap().zeta(2).unwrap();
    assert!(
        v.distance(&z2) <= 1e-12 && v.err() < 1e-10,
        "{} err {:e}",
        v.to_f64(),
        v.err()
    );
    assert!(v.distance(&z2) <= v.err() + z2.err());
}

#[test]
fn euler_integrand_examples() {
    let c = cfg();
    let ev = Evaluator::new(c).unwrap();
    let v = integrate_monomials(&euler_sum_integrand(0, 0, 1), &c).unwrap();
    let target = ev.zeta(3).unwrap().scale(2);
    assert!(v.distance(&target) <= 1e-12, "{}", v.to_f64());
}

#[test]
fn odd_head_two_integrals_vanish() {
    let c = cfg();
    for r in 0..=2 {
        for n in [1, 3] {
            let v = integrate_monomials(&head_two_integrand(r, n).unwrap(), &c).unwrap();
            assert!(v.abs_f64() <= 1e-10, "r={r} n={n}: {:e}", v.to_f64());
        }
    }
}

#[test]
fn eliminating_f4_preserves_the_integral() {
    let c = cfg();
    for (n, p, q) in [(0, 1, 1), (1, 1, 2), (2, 0, 2), (0, 2, 1)] {
        let with = euler_sum_integrand(n, p, q);
        let without = eliminate_f4(&with).unwrap();
        assert!(without.iter().all(|t| t.exponent(Factor::F4) == 0));
        let a = integrate_monomials(&with, &c).unwrap();
        let b = integrate_monomials(&without, &c).unwrap();
        assert!(
            a.distance(&b) <= 1e-11 * a.abs_f64().max(1.0),
            "({n},{p},{q})"
        );
    }
}

#[test]
fn nested_levels_converge() {
    let terms = euler_sum_integrand(1, 1, 1);
    let exact = Evaluator::new(cfg())
        .unwrap()
        .g_direct(eulersum_core::euler::GSpec::new(1, 1, 1))
        .unwrap()
        .to_f64();
    let total = |level, which: usize| -> f64 {
        let sums = monomial_levels(&terms, level);
        terms
            .iter()
            .zip(&sums)
            .map(|(t, s)| t.coeff.to_f64() * s.levels[which])
            .sum()
    };
    let errs: Vec<f64> = (4..=8).map(|l| (total(l, 0) - exact).abs()).collect();
    assert!(errs[4] < 1e-12, "{errs:?}");
    assert!(errs[4] < errs[0], "{errs:?}");
    // coarser embedded levels are the same grid at wider spacing
    assert!((total(8, 1) - total(7, 0)).abs() < 1e-14);
    assert!((total(8, 2) - total(6, 0)).abs() < 1e-14);
}

#[test]
fn level_changes_refine_the_estimate() {
    let terms = euler_sum_integrand(0, 1, 1);
    let lo = integrate_monomials(&terms, &cfg().with_quad_level(6)).unwrap();
    let hi = integrate_monomials(&terms, &cfg().with_quad_level(10)).unwrap();
    assert!(hi.err() <= lo.err());
    assert!(lo.distance(&hi) <= lo.err() + hi.err());
}

#[test]
fn degree_is_limited() {
    assert!(expand_log_power(Factor::F1, Factor::F2, 1, 13).is_err());
}
