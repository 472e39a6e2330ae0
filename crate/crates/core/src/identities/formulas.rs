//! Both sides of every catalogued identity, as [`Expr`] builders.

use crate::indices::{admissible_by_weight_height, compositions};
use crate::numerics::{binomial, RationalNumber};
use crate::quadrature::{euler_sum_integrand, head_two_integrand};

use super::expr::{Atom, Expr};
use crate::error::Result;
use crate::euler::{composition_terms, g2_closed, GSpec};

fn ones_then(p: u32, last: u32) -> Vec<u32> {
    let mut v = vec![1; p as usize];
    v.push(last);
    v
}

fn twos(a: u32) -> Vec<u32> {
    vec![2; a as usize]
}

/// `{2}^a, 3, {2}^b`
fn twos_three_twos(a: u32, b: u32) -> Vec<u32> {
    let mut v = twos(a);
    v.push(3);
    v.extend(twos(b));
    v
}

fn choose(n: u32, k: u32) -> i64 {
    binomial(u64::from(n), i64::from(k))
        .to_i64()
        .expect("small binomial")
}

fn sign(k: u32) -> i64 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `2 c (1 - 2^-e)` as an exact rational.
fn two_c_one_minus(c: i64, e: u32) -> RationalNumber {
    let pow = 1i64 << e;
    RationalNumber::new(2 * c * (pow - 1), pow)
}

/// `zeta*({s}^a)`, with the empty index equal to 1.
fn zstar_repeated(s: u32, a: u32) -> Vec<Atom> {
    if a == 0 {
        Vec::new()
    } else {
        vec![Atom::mzsv(vec![s; a as usize])]
    }
}

pub fn g_direct_expr(spec: GSpec) -> Expr {
    Expr::atom(Atom::G(spec))
}

pub fn g_compositions_expr(spec: GSpec) -> Expr {
    let mut e = Expr::zero();
    for (c, idx) in composition_terms(spec) {
        e.add(c, vec![Atom::Mzv(idx)]);
    }
    e
}

pub fn g_quad_expr(spec: GSpec) -> Expr {
    Expr::atom(Atom::Quad(euler_sum_integrand(spec.n, spec.p, spec.q)))
}

pub fn g2_closed_expr(p: u32, q: u32) -> Expr {
    let z = g2_closed(p, q);
    Expr::zero().with(
        z.coeff.to_i64().expect("small binomial"),
        vec![Atom::Zeta(z.arg)],
    )
}

/// `G_{k+3}(p-1, q) + (-1)^k G_{k+3}(q-1, p)`.
pub fn reflection_lhs(p: u32, q: u32, k: u32) -> Expr {
    Expr::zero()
        .with(1, vec![Atom::g(k + 1, p - 1, q)])
        .with(sign(k), vec![Atom::g(k + 1, q - 1, p)])
}

/// `sum_{a+b=k} (-1)^b zeta({1}^{p-1}, a+2) zeta({1}^{q-1}, b+2)`.
pub fn reflection_rhs(p: u32, q: u32, k: u32) -> Expr {
    let mut e = Expr::zero();
    for a in 0..=k {
        let b = k - a;
        e.add(
            sign(b),
            vec![
                Atom::mzv(ones_then(p - 1, a + 2)),
                Atom::mzv(ones_then(q - 1, b + 2)),
            ],
        );
    }
    e
}

pub fn zetastar_ones_expr(q: u32, n: u32) -> Expr {
    Expr::atom(Atom::mzsv(ones_then(q, n + 2)))
}

/// `(q+1) zeta(q+2)`.
pub fn easy_ones_rhs(q: u32) -> Expr {
    Expr::zero().with(i64::from(q) + 1, vec![Atom::Zeta(q + 2)])
}

/// `zeta*(r+2, {2}^m)` by the multiple-sum engine.
pub fn head_two_series(r: u32, m: u32) -> Expr {
    let mut parts = vec![r + 2];
    parts.extend(twos(m));
    Expr::atom(Atom::mzsv(parts))
}

pub fn head_two_generating(r: u32, m: u32) -> Expr {
    Expr::atom(Atom::HeadTwo { r, m: m as usize })
}

/// The quadrature whose value is `zeta*(r+2, {2}^(n/2))` or 0 for odd `n`.
pub fn head_two_quadrature(r: u32, n: u32) -> Result<Expr> {
    Ok(Expr::atom(Atom::Quad(head_two_integrand(r, n)?)))
}

/// `sum_{p+q=2m, a+b=r} (-1)^(q+b) C(p+b, p) G_{q+2}(p+b, a)`.
pub fn head_two_from_g(r: u32, m: u32) -> Expr {
    let mut e = Expr::zero();
    for q in 0..=2 * m {
        let p = 2 * m - q;
        for a in 0..=r {
            let b = r - a;
            e.add(sign(q + b) * choose(p + b, p), vec![Atom::g(q, p + b, a)]);
        }
    }
    e
}

/// `sum_{a+b=n} zeta*({s}^a) zeta(s b + r)`.
pub fn height_one_products(s: u32, r: u32, n: u32) -> Expr {
    let mut e = Expr::zero();
    for a in 0..=n {
        let b = n - a;
        let mut atoms = zstar_repeated(s, a);
        atoms.push(Atom::Zeta(s * b + r));
        e.add(1, atoms);
    }
    e
}

/// `sum_{a+b=n} zeta*({s}^a, r, {s}^b)`.
pub fn height_one_star_sum(s: u32, r: u32, n: u32) -> Expr {
    let mut e = Expr::zero();
    for a in 0..=n {
        let mut parts = vec![s; a as usize];
        parts.push(r);
        parts.extend(vec![s; (n - a) as usize]);
        e.add(1, vec![Atom::mzsv(parts)]);
    }
    e
}

/// `sum_{r=0}^{n} (-1)^(r+n) zeta({1}^r, n+2-r)`.
pub fn alternating_ones(n: u32) -> Expr {
    let mut e = Expr::zero();
    for r in 0..=n {
        e.add(sign(r + n), vec![Atom::mzv(ones_then(r, n + 2 - r))]);
    }
    e
}

/// `zeta*({2}^(m+1))` for `n = 2m`, zero for odd `n`.
pub fn alternating_ones_value(n: u32) -> Expr {
    if n % 2 == 1 {
        Expr::zero()
    } else {
        Expr::atom(Atom::mzsv(twos(n / 2 + 1)))
    }
}

/// `sum_{r=0}^{n} (-1)^(r+n) (r+1) zeta({1}^(r+1), n+2-r)`.
pub fn weighted_alternating_ones(n: u32) -> Expr {
    let mut e = Expr::zero();
    for r in 0..=n {
        e.add(
            sign(r + n) * (i64::from(r) + 1),
            vec![Atom::mzv(ones_then(r + 1, n + 2 - r))],
        );
    }
    e
}

/// `(m+1) zeta*({2}^(m+2))` for `n = 2m+1`,
/// `sum_{a+b=m} zeta*({2}^a, 3, {2}^b)` for `n = 2m`.
pub fn weighted_alternating_value(n: u32) -> Expr {
    let m = n / 2;
    if n % 2 == 1 {
        Expr::zero().with(i64::from(m) + 1, vec![Atom::mzsv(twos(m + 2))])
    } else {
        twos_three_sum(m)
    }
}

/// `sum_{a+b=m} zeta*({2}^a, 3, {2}^b)`.
fn twos_three_sum(m: u32) -> Expr {
    let mut e = Expr::zero();
    for a in 0..=m {
        e.add(1, vec![Atom::mzsv(twos_three_twos(a, m - a))]);
    }
    e
}

/// `sum_{p+q=2n+2} zeta*({1}^p, q+2)`.
pub fn star_ones_sum(n: u32) -> Expr {
    let mut e = Expr::zero();
    for p in 0..=2 * n + 2 {
        e.add(1, vec![Atom::mzsv(ones_then(p, 2 * n + 2 - p + 2))]);
    }
    e
}

/// `2 (2n+3) (1 - 2^-(2n+3)) zeta(2n+4)`.
pub fn star_ones_sum_value(n: u32) -> Expr {
    let mut e = Expr::zero();
    e.push(
        two_c_one_minus(2 * i64::from(n) + 3, 2 * n + 3),
        vec![Atom::Zeta(2 * n + 4)],
    );
    e
}

/// `sum` of `zeta*` over admissible indices of weight `k` and height `s`.
pub fn height_weight_star_sum(k: u32, s: u32) -> Expr {
    let mut e = Expr::zero();
    for idx in admissible_by_weight_height(k, s as usize) {
        e.add(1, vec![Atom::Mzsv(idx)]);
    }
    e
}

/// `2 C(k-1, 2s-1) (1 - 2^(1-k)) zeta(k)`.
pub fn height_weight_value(k: u32, s: u32) -> Expr {
    let mut e = Expr::zero();
    e.push(
        two_c_one_minus(choose(k - 1, 2 * s - 1), k - 1),
        vec![Atom::Zeta(k)],
    );
    e
}

pub fn zetastar_twos(n: u32) -> Expr {
    Expr::atom(Atom::mzsv(twos(n + 2)))
}

/// `2 (1 - 2^-(2n+3)) zeta(2n+4)`.
pub fn zetastar_twos_value(n: u32) -> Expr {
    let mut e = Expr::zero();
    e.push(two_c_one_minus(1, 2 * n + 3), vec![Atom::Zeta(2 * n + 4)]);
    e
}

/// `sum_{p+q=2n} (-1)^q G_{q+2}(p, 2)`.
pub fn alternating_g_two(n: u32) -> Expr {
    let mut e = Expr::zero();
    for q in 0..=2 * n {
        e.add(sign(q), vec![Atom::g(q, 2 * n - q, 2)]);
    }
    e
}

/// `sum_{p+q=2n+1} G_{q+2}(1, p)`.
fn g_one_sum(n: u32) -> Expr {
    let mut e = Expr::zero();
    for q in 0..=2 * n + 1 {
        e.add(1, vec![Atom::g(q, 1, 2 * n + 1 - q)]);
    }
    e
}

/// `sum_{a+b=n} zeta(1, 2a+3) zeta*({2}^b)`.
fn one_odd_products(n: u32) -> Expr {
    let mut e = Expr::zero();
    for a in 0..=n {
        let mut atoms = vec![Atom::mzv(vec![1, 2 * a + 3])];
        atoms.extend(zstar_repeated(2, n - a));
        e.add(1, atoms);
    }
    e
}

pub fn alternating_g_two_value(n: u32) -> Expr {
    g_one_sum(n).minus(one_odd_products(n))
}

/// `sum_{p+q=2n} (-1)^q (p+1) G_{q+2}(p+1, 1)`.
pub fn weighted_alternating_g_one(n: u32) -> Expr {
    let mut e = Expr::zero();
    for q in 0..=2 * n {
        let p = 2 * n - q;
        e.add(sign(q) * (i64::from(p) + 1), vec![Atom::g(q, p + 1, 1)]);
    }
    e
}

/// `sum_{a+b=n} b zeta(2a+2) zeta*({2}^(b+1))`.
fn even_star_products(n: u32) -> Expr {
    let mut e = Expr::zero();
    for a in 0..=n {
        let b = n - a;
        e.add(
            i64::from(b),
            vec![Atom::Zeta(2 * a + 2), Atom::mzsv(twos(b + 1))],
        );
    }
    e
}

/// `sum_{a+b+c=n-1} zeta*({2}^a, 3, {2}^b) zeta(2c+3)`.
fn three_star_products(n: u32) -> Expr {
    let mut e = Expr::zero();
    if n == 0 {
        return e;
    }
    for a in 0..n {
        for b in 0..n - a {
            let c = n - 1 - a - b;
            e.add(
                1,
                vec![Atom::mzsv(twos_three_twos(a, b)), Atom::Zeta(2 * c + 3)],
            );
        }
    }
    e
}

pub fn weighted_alternating_g_one_value(n: u32) -> Expr {
    let mut first = Expr::zero();
    for q in 0..=2 * n {
        let p = 2 * n - q;
        first.add(i64::from(p) + 1, vec![Atom::mzsv(ones_then(p + 2, q + 2))]);
    }
    first
        .minus(even_star_products(n))
        .minus(three_star_products(n))
}

/// `sum_{p+q=2n+1} (p+1) zeta*({1}^(p+1), q+2) - sum_{p+q=2n+1} G_{q+2}(1, p)`.
pub fn thm53_lhs(n: u32) -> Expr {
    let mut e = Expr::zero();
    for q in 0..=2 * n + 1 {
        let p = 2 * n + 1 - q;
        e.add(i64::from(p) + 1, vec![Atom::mzsv(ones_then(p + 1, q + 2))]);
    }
    e.minus(g_one_sum(n))
}

/// `W(c) = C(c_0 + 3, 3) prod_{i >= 1} (c_i + 1)`.
pub fn composition_weight(c: &[u32]) -> i64 {
    let (first, rest) = c.split_first().expect("nonempty");
    choose(first + 3, 3) * rest.iter().map(|&x| i64::from(x) + 1).product::<i64>()
}

/// `sum_{j=1}^{n} (-1)^j sum_{|c| = 2n+1-2j} W(c) zeta(c_0+3, c_1+2, ..., c_j+2)`,
/// `c` ranging over `j+1` nonnegative parts.
fn w_sum(n: u32) -> Expr {
    let mut e = Expr::zero();
    for j in 1..=n {
        for c in compositions(2 * n + 1 - 2 * j, j as usize + 1, 0) {
            let mut parts = vec![c.parts[0] + 3];
            parts.extend(c.parts[1..].iter().map(|x| x + 2));
            e.add(
                sign(j) * composition_weight(&c.parts),
                vec![Atom::mzv(parts)],
            );
        }
    }
    e
}

/// `C(2n+4, 3) zeta(2n+4) + sum_j (-1)^j sum_c W(c) zeta(c_0+3, c_1+2, ...)`.
pub fn thm53_rhs(n: u32) -> Expr {
    Expr::zero()
        .with(choose(2 * n + 4, 3), vec![Atom::Zeta(2 * n + 4)])
        .plus(w_sum(n))
}

/// `sum_{a+b=n} (2 + [a = 0]) zeta*({2}^a, 3, {2}^b)`.
pub fn three_in_twos_weighted(n: u32) -> Expr {
    let mut e = Expr::zero();
    for a in 0..=n {
        let c = if a == 0 { 3 } else { 2 };
        e.add(c, vec![Atom::mzsv(twos_three_twos(a, n - a))]);
    }
    e
}

/// `2 (2n+2) (1 - 2^-(2n+2)) zeta(2n+3)`.
pub fn three_in_twos_value(n: u32) -> Expr {
    let mut e = Expr::zero();
    e.push(
        two_c_one_minus(2 * i64::from(n) + 2, 2 * n + 2),
        vec![Atom::Zeta(2 * n + 3)],
    );
    e
}

/// `zeta*(r+2, {2}^n)` for `r <= 2` assembled from depth-reduced pieces.
pub fn zetastar_head_expr(r: u32, n: u32) -> Expr {
    match r {
        0 => {
            let mut e = Expr::zero();
            for q in 0..=2 * n {
                e.add(sign(q), vec![Atom::mzv(ones_then(2 * n - q, q + 2))]);
            }
            e
        }
        1 => three_in_twos_value(n).minus(twos_three_sum(n).scaled(&RationalNumber::from(2))),
        2 => {
            let big = 2 * n + 4;
            let mut lead = Expr::zero();
            lead.push(
                &two_c_one_minus(2 * i64::from(n) + 3, 2 * n + 3)
                    - &RationalNumber::from(choose(big, 3) + 1),
                vec![Atom::Zeta(big)],
            );
            let mut ones = Expr::zero();
            for q in 0..=2 * n {
                let p = 2 * n - q;
                ones.add(
                    sign(q) * choose(p + 2, 2),
                    vec![Atom::mzv(ones_then(p + 2, q + 2))],
                );
            }
            lead.minus(w_sum(n))
                .plus(ones)
                .minus(one_odd_products(n))
                .plus(even_star_products(n))
                .plus(three_star_products(n))
        }
        _ => panic!("r must be at most 2"),
    }
}

pub fn duality_lhs(m: u32) -> Expr {
    Expr::atom(Atom::mzv(ones_then(m, 2)))
}

pub fn duality_rhs(m: u32) -> Expr {
    Expr::atom(Atom::Zeta(m + 2))
}
