//! Double-exponential quadrature over `E_2 = {0 < t1 < t2 < 1}` of products
//! of logarithmic factors against `dt1 dt2 / ((1 - t1) t2)`.
//!
//! With `t1 = s t2` the simplex becomes the unit square and the measure
//! becomes `ds dt2 / (1 - s t2)`. Both axes use tanh-sinh nodes, whose
//! complements `1 - x` are carried separately so that every factor is
//! evaluated without cancellation near the corner `s = t2 = 1`.
//!
//! Arithmetic is binary64: the identities checked this way only need a few
//! digits, and the series routes supply the high-precision values.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use rug::Float;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{binomial, factorial, PrecisionConfig, RationalNumber, ValueWithError};

/// Largest total degree of a monomial.
pub const MAX_DEGREE: u32 = 12;

/// The five logarithmic factors on `E_2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Factor {
    /// `log 1/(1 - t1)`
    F1,
    /// `log 1/(1 - t2)`
    F2,
    /// `log t2/t1`
    F3,
    /// `log (1 - t1)/(1 - t2)`
    F4,
    /// `log 1/t2`
    F5,
}

impl Factor {
    pub const ALL: [Factor; 5] = [Factor::F1, Factor::F2, Factor::F3, Factor::F4, Factor::F5];

    fn slot(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}", self.slot() + 1)
    }
}

/// `coeff * F1^e1 * ... * F5^e5`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LogMonomial {
    #[serde(serialize_with = "serialize_rational")]
    pub coeff: RationalNumber,
    pub exps: [u32; 5],
}

fn serialize_rational<S: serde::Serializer>(
    r: &RationalNumber,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

impl LogMonomial {
    pub fn new(coeff: RationalNumber, exps: [u32; 5]) -> Self {
        LogMonomial { coeff, exps }
    }

    pub fn constant(coeff: RationalNumber) -> Self {
        LogMonomial::new(coeff, [0; 5])
    }

    pub fn power(factor: Factor, e: u32) -> Self {
        let mut exps = [0; 5];
        exps[factor.slot()] = e;
        LogMonomial::new(RationalNumber::one(), exps)
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn exponent(&self, factor: Factor) -> u32 {
        self.exps[factor.slot()]
    }

    pub fn mul(&self, other: &LogMonomial) -> LogMonomial {
        let mut exps = self.exps;
        for (e, o) in exps.iter_mut().zip(other.exps) {
            *e += o;
        }
        LogMonomial::new(&self.coeff * &other.coeff, exps)
    }

    pub fn scaled(&self, c: &RationalNumber) -> LogMonomial {
        LogMonomial::new(&self.coeff * c, self.exps)
    }
}

impl fmt::Display for LogMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.coeff)?;
        for factor in Factor::ALL {
            match self.exponent(factor) {
                0 => {}
                1 => write!(f, "*{factor}")?,
                e => write!(f, "*{factor}^{e}")?,
            }
        }
        Ok(())
    }
}

/// Product of two monomial sums, with like terms merged and zeros dropped.
pub fn multiply(a: &[LogMonomial], b: &[LogMonomial]) -> Vec<LogMonomial> {
    normalize(a.iter().flat_map(|x| b.iter().map(move |y| x.mul(y))))
}

/// Merge like terms, drop zero coefficients and sort by exponents.
pub fn normalize(terms: impl IntoIterator<Item = LogMonomial>) -> Vec<LogMonomial> {
    let mut merged: BTreeMap<[u32; 5], RationalNumber> = BTreeMap::new();
    for t in terms {
        let slot = merged.entry(t.exps).or_insert_with(RationalNumber::zero);
        *slot = &*slot + &t.coeff;
    }
    merged
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(exps, coeff)| LogMonomial::new(coeff, exps))
        .collect()
}

/// `(F_a + sign * F_b)^n` expanded by the binomial theorem.
pub fn expand_log_power(
    base_a: Factor,
    base_b: Factor,
    sign: i32,
    n: u32,
) -> Result<Vec<LogMonomial>> {
    if sign != 1 && sign != -1 {
        return Err(Error::Domain(format!("sign must be +1 or -1, got {sign}")));
    }
    if n > MAX_DEGREE {
        return Err(Error::Domain(format!(
            "power {n} exceeds the degree limit {MAX_DEGREE}"
        )));
    }
    let terms = (0..=n).map(|k| {
        let mut c = RationalNumber::from_integer(binomial(u64::from(n), i64::from(k)));
        if sign < 0 && k % 2 == 1 {
            c = -c;
        }
        LogMonomial::power(base_a, n - k)
            .mul(&LogMonomial::power(base_b, k))
            .scaled(&c)
    });
    Ok(normalize(terms))
}

fn inverse_factorial(n: u32) -> RationalNumber {
    RationalNumber::from_integer(factorial(n)).recip()
}

/// Integrand of the integral route for `G_{n+2}(p, q)`:
/// `F1^p F2^q F3^n / (p! q! n!)`.
pub fn euler_sum_integrand(n: u32, p: u32, q: u32) -> Vec<LogMonomial> {
    let c = &(&inverse_factorial(p) * &inverse_factorial(q)) * &inverse_factorial(n);
    let mut exps = [0; 5];
    exps[Factor::F1.slot()] = p;
    exps[Factor::F2.slot()] = q;
    exps[Factor::F3.slot()] = n;
    vec![LogMonomial::new(c, exps)]
}

/// Integrand `F4^r (F1 - F3)^n / (r! n!)` whose integral is
/// `zeta*(r+2, {2}^(n/2))` for even `n` and zero for odd `n`.
pub fn head_two_integrand(r: u32, n: u32) -> Result<Vec<LogMonomial>> {
    let c = &inverse_factorial(r) * &inverse_factorial(n);
    let head = vec![LogMonomial::power(Factor::F4, r).scaled(&c)];
    Ok(multiply(
        &head,
        &expand_log_power(Factor::F1, Factor::F3, -1, n)?,
    ))
}

/// Rewrite every `F4` as `F2 - F1`.
pub fn eliminate_f4(terms: &[LogMonomial]) -> Result<Vec<LogMonomial>> {
    let mut out = Vec::new();
    for t in terms {
        let e4 = t.exponent(Factor::F4);
        let mut rest = t.clone();
        rest.exps[Factor::F4.slot()] = 0;
        out.extend(multiply(
            &[rest],
            &expand_log_power(Factor::F2, Factor::F1, -1, e4)?,
        ));
    }
    Ok(normalize(out))
}

/// Tanh-sinh step at a refinement level.
fn step(level: u32) -> f64 {
    8.0 / f64::from(1u32 << level.min(30))
}

/// Abscissae are cut where `pi sinh t` reaches this bound, so complements
/// stay above about `1e-130` and products of factors stay finite.
const EXPONENT_LIMIT: f64 = 300.0;

/// One tanh-sinh node on `(0, 1)`: abscissa, complement, weight and the
/// coarsest nested level containing it (0 = current, 1 = previous, 2 = the one before).
struct Node {
    x: f64,
    xc: f64,
    w: f64,
    depth: u8,
}

fn nodes(level: u32) -> Vec<Node> {
    let h = step(level);
    let t_max = (EXPONENT_LIMIT / std::f64::consts::PI).asinh();
    let k_max = (t_max / h).floor() as i64;
    (-k_max..=k_max)
        .map(|k| {
            let t = k as f64 * h;
            let e = std::f64::consts::PI * t.sinh();
            let x = 1.0 / (1.0 + (-e).exp());
            let xc = 1.0 / (1.0 + e.exp());
            let w = h * std::f64::consts::PI * t.cosh() * x * xc;
            let depth = if k % 4 == 0 {
                2
            } else if k % 2 == 0 {
                1
            } else {
                0
            };
            Node { x, xc, w, depth }
        })
        .collect()
}

/// Neumaier-compensated accumulator.
#[derive(Clone, Copy, Default)]
struct Acc {
    sum: f64,
    comp: f64,
}

impl Acc {
    fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    fn merge(&mut self, other: &Acc) {
        self.add(other.sum);
        self.add(other.comp);
    }

    fn total(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Integrals of distinct exponent patterns at levels `L`, `L-1`, `L-2`.
fn integrate_patterns(patterns: &[[u32; 5]], level: u32) -> Vec<[f64; 3]> {
    let grid = nodes(level);
    let max_exp: [usize; 5] =
        std::array::from_fn(|f| patterns.iter().map(|p| p[f] as usize).max().unwrap_or(0));

    // each row is one t2 node; rows are summed in order afterwards
    let rows: Vec<Vec<[Acc; 3]>> = grid
        .par_iter()
        .map(|tn| {
            let (t2, t2c) = (tn.x, tn.xc);
            let f2 = -t2c.ln();
            let f5 = -t2.ln();
            let mut acc = vec![[Acc::default(); 3]; patterns.len()];
            let mut pows = [[1.0f64; MAX_DEGREE as usize + 1]; 5];
            for sn in &grid {
                let (s, sc) = (sn.x, sn.xc);
                let one_minus_t1 = sc + s * t2c;
                let f1 = -one_minus_t1.ln();
                let f3 = -s.ln();
                let f4 = (sc * t2 / t2c).ln_1p();
                let base = tn.w * sn.w / one_minus_t1;
                for (f, v) in [f1, f2, f3, f4, f5].into_iter().enumerate() {
                    for e in 1..=max_exp[f] {
                        pows[f][e] = pows[f][e - 1] * v;
                    }
                }
                let depth = tn.depth.min(sn.depth);
                for (a, p) in acc.iter_mut().zip(patterns) {
                    let mut v = base;
                    for f in 0..5 {
                        v *= pows[f][p[f] as usize];
                    }
                    for (lvl, slot) in a.iter_mut().enumerate() {
                        if depth as usize >= lvl {
                            slot.add(v);
                        }
                    }
                }
            }
            acc
        })
        .collect();

    let mut totals = vec![[Acc::default(); 3]; patterns.len()];
    for row in &rows {
        for (t, r) in totals.iter_mut().zip(row) {
            for lvl in 0..3 {
                t[lvl].merge(&r[lvl]);
            }
        }
    }
    totals
        .iter()
        .map(|t| {
            // coarser levels use step 2h and 4h
            [
                t[0].total(),
                2.0 * 2.0 * t[1].total(),
                4.0 * 4.0 * t[2].total(),
            ]
        })
        .collect()
}

/// Integral of one monomial at the finest level, with its level history.
#[derive(Clone, Debug)]
pub struct MonomialIntegral {
    pub exps: [u32; 5],
    pub levels: [f64; 3],
}

/// Integrate `sum_i terms[i]` over `E_2` against `dt1 dt2 / ((1 - t1) t2)`.
///
/// The error estimate is twice the last level-to-level difference, summed
/// over monomials, plus a rounding allowance. A monomial whose difference
/// grew from level `L-1` to `L` above that allowance is reported as
/// non-convergence.
pub fn integrate_monomials(terms: &[LogMonomial], cfg: &PrecisionConfig) -> Result<ValueWithError> {
    cfg.validate()?;
    for t in terms {
        if t.degree() > MAX_DEGREE {
            return Err(Error::Domain(format!(
                "monomial {t} exceeds the degree limit {MAX_DEGREE}"
            )));
        }
    }
    let terms = normalize(terms.iter().cloned());
    let patterns: Vec<[u32; 5]> = terms.iter().map(|t| t.exps).collect();
    let level = cfg.quad_level;
    let integrals = integrate_patterns(&patterns, level);

    let mut value = Acc::default();
    let mut err = 0.0;
    for (t, lv) in terms.iter().zip(&integrals) {
        let c = t.coeff.to_f64();
        let [fine, mid, coarse] = *lv;
        let last = (fine - mid).abs();
        let prev = (mid - coarse).abs();
        let noise = 1e-13 * fine.abs().max(1.0);
        if last > prev && last > noise {
            return Err(Error::QuadratureNonConvergence {
                level,
                prev_diff: prev,
                last_diff: last,
            });
        }
        value.add(c * fine);
        err += c.abs() * (2.0 * last + noise);
    }
    let total = value.total();
    err += 4.0 * f64::EPSILON * total.abs();
    Ok(ValueWithError::new(Float::with_val(cfg.bits(), total), err))
}

/// Raw per-monomial level history, for diagnostics.
pub fn monomial_levels(terms: &[LogMonomial], level: u32) -> Vec<MonomialIntegral> {
    let patterns: Vec<[u32; 5]> = terms.iter().map(|t| t.exps).collect();
    integrate_patterns(&patterns, level)
        .into_iter()
        .zip(patterns)
        .map(|(levels, exps)| MonomialIntegral { exps, levels })
        .collect()
}
