//! The Euler sums `G_{n+2}(p, q) = sum_K zeta_{K-1}({1}^p) K^-(n+2) zeta*_K({1}^q)`
//! by series, by compositions of multiple zeta values and by quadrature.

use std::fmt;
use std::str::FromStr;

use rug::Integer;
use serde::{Deserialize, Serialize};

use crate::engine::nested::{Link, Program};
use crate::engine::{Evaluator, MAX_DEPTH, MAX_WEIGHT};
use crate::error::{Error, Result};
use crate::finite::SumKind;
use crate::indices::{compositions, MultiIndex};
use crate::numerics::{binomial, sum_values, PrecisionConfig, ValueWithError};
use crate::quadrature::{euler_sum_integrand, integrate_monomials};

/// Largest `n + p + q` accepted by the quadrature route.
pub const MAX_QUAD_WEIGHT: u32 = 10;

/// Parameters of `G_{n+2}(p, q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GSpec {
    pub n: u32,
    pub p: u32,
    pub q: u32,
}

impl GSpec {
    pub fn new(n: u32, p: u32, q: u32) -> Self {
        GSpec { n, p, q }
    }

    pub fn weight(&self) -> u32 {
        self.n + self.p + self.q + 2
    }

    fn check(&self) -> Result<()> {
        if self.weight() > MAX_WEIGHT || (self.p + self.q + 1) as usize > MAX_DEPTH {
            return Err(Error::Domain(format!(
                "{self} exceeds the weight limit {MAX_WEIGHT} or depth limit {MAX_DEPTH}"
            )));
        }
        Ok(())
    }
}

impl fmt::Display for GSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G(n={},p={},q={})", self.n, self.p, self.q)
    }
}

impl FromStr for GSpec {
    type Err = Error;

    /// Parses `G(n=<n>,p=<p>,q=<q>)`; keys may come in any order and
    /// whitespace is ignored.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |reason: &str| Error::IndexParse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let body = compact
            .strip_prefix("G(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| bad("expected G(n=..,p=..,q=..)"))?;
        let (mut n, mut p, mut q) = (None, None, None);
        for item in body.split(',') {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| bad("expected key=value"))?;
            let value: u32 = value
                .parse()
                .map_err(|_| bad("expected a nonnegative integer"))?;
            let slot = match key {
                "n" => &mut n,
                "p" => &mut p,
                "q" => &mut q,
                _ => return Err(bad("keys are n, p and q")),
            };
            if slot.replace(value).is_some() {
                return Err(bad("repeated key"));
            }
        }
        match (n, p, q) {
            (Some(n), Some(p), Some(q)) => Ok(GSpec { n, p, q }),
            _ => Err(bad("n, p and q are all required")),
        }
    }
}

/// `coeff * zeta(arg)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZetaMultiple {
    #[serde(serialize_with = "serialize_integer")]
    pub coeff: Integer,
    pub arg: u32,
}

fn serialize_integer<S: serde::Serializer>(
    i: &Integer,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&i.to_string())
}

impl ZetaMultiple {
    pub fn evaluate(&self, ev: &Evaluator) -> Result<ValueWithError> {
        let z = ev.zeta(i64::from(self.arg))?;
        let c = self
            .coeff
            .to_i64()
            .ok_or_else(|| Error::Domain(format!("coefficient {} too large", self.coeff)))?;
        Ok(z.scale(c))
    }
}

impl fmt::Display for ZetaMultiple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*zeta({})", self.coeff, self.arg)
    }
}

/// `G_2(p, q) = C(p+q+1, q) zeta(p+q+2)`.
pub fn g2_closed(p: u32, q: u32) -> ZetaMultiple {
    ZetaMultiple {
        coeff: binomial(u64::from(p + q + 1), i64::from(q)),
        arg: p + q + 2,
    }
}

/// Terms `(C(r-1, p), alpha)` of the composition expansion of `G_{n+2}(p, q)`,
/// with `n + 1` already added to the last entry of each `alpha`.
pub fn composition_terms(spec: GSpec) -> Vec<(i64, MultiIndex)> {
    let total = spec.p + spec.q + 1;
    ((spec.p + 1)..=total)
        .flat_map(|r| {
            let c = binomial(u64::from(r - 1), i64::from(spec.p))
                .to_i64()
                .expect("small binomial");
            compositions(total, r as usize, 1).map(move |alpha| {
                let mut parts = alpha.parts;
                *parts.last_mut().expect("nonempty") += spec.n + 1;
                (c, MultiIndex::new(parts).expect("positive parts"))
            })
        })
        .collect()
}

fn ones_chain(program: &mut Program, len: u32, kind: SumKind) -> Option<usize> {
    program.chain(&vec![1; len as usize], kind)
}

impl Evaluator {
    /// `G_{n+2}(p, q)` from one sweep over `K`.
    pub fn g_direct(&self, spec: GSpec) -> Result<ValueWithError> {
        Ok(self.g_direct_batch(&[spec])?.pop().expect("one value"))
    }

    /// Several `G` values sharing one sweep.
    pub fn g_direct_batch(&self, specs: &[GSpec]) -> Result<Vec<ValueWithError>> {
        for s in specs {
            s.check()?;
        }
        let mut missing: Vec<GSpec> = {
            let memo = self.euler_memo.lock().expect("euler memo");
            specs
                .iter()
                .filter(|s| !memo.contains_key(*s))
                .copied()
                .collect()
        };
        missing.sort();
        missing.dedup();
        if !missing.is_empty() {
            let mut program = Program::new();
            let outputs: Vec<usize> = missing
                .iter()
                .map(|s| {
                    let mut children = Vec::new();
                    if let Some(a) = ones_chain(&mut program, s.p, SumKind::Zeta) {
                        children.push((a, Link::Prev));
                    }
                    if let Some(b) = ones_chain(&mut program, s.q, SumKind::ZetaStar) {
                        children.push((b, Link::Same));
                    }
                    program.node(s.n + 2, children)
                })
                .collect();
            let values = program.evaluate(&outputs, self.config());
            let mut memo = self.euler_memo.lock().expect("euler memo");
            for (s, v) in missing.into_iter().zip(values) {
                let chosen = if self.config().extrapolate {
                    v.extrapolated
                } else {
                    v.raw
                };
                memo.insert(s, chosen);
            }
        }
        let memo = self.euler_memo.lock().expect("euler memo");
        Ok(specs.iter().map(|s| memo[s].clone()).collect())
    }

    /// `G_{n+2}(p, q)` as `sum_r C(r-1, p) sum_alpha zeta(alpha_1, ..., alpha_r + n + 1)`.
    pub fn g_compositions(&self, spec: GSpec) -> Result<ValueWithError> {
        spec.check()?;
        let terms = composition_terms(spec);
        let items: Vec<_> = terms
            .iter()
            .map(|(_, idx)| (SumKind::Zeta, idx.clone()))
            .collect();
        let values = self.batch(&items)?;
        let scaled = terms.iter().zip(values).map(|((c, _), v)| v.scale(*c));
        Ok(sum_values(scaled, self.config()))
    }

    /// `G_{n+2}(p, q)` by quadrature over `E_2`.
    pub fn g_quad(&self, spec: GSpec) -> Result<ValueWithError> {
        g_quad(spec, self.config())
    }

    /// `G_{k+3}(p-1, q) + (-1)^k G_{k+3}(q-1, p)
    ///  - sum_{a+b=k} (-1)^b zeta({1}^{p-1}, a+2) zeta({1}^{q-1}, b+2)`.
    pub fn reflection_residual(&self, p: u32, q: u32, k: u32) -> Result<ValueWithError> {
        if p == 0 || q == 0 {
            return Err(Error::Domain("reflection needs p, q >= 1".into()));
        }
        let first = GSpec::new(k + 1, p - 1, q);
        let second = GSpec::new(k + 1, q - 1, p);
        let g = self.g_direct_batch(&[first, second])?;
        let mut lhs = g[0].clone();
        lhs = if k.is_multiple_of(2) {
            &lhs + &g[1]
        } else {
            &lhs - &g[1]
        };
        let ones = |len: u32, last: u32| MultiIndex::repeated(1, len as usize).push(last);
        let mut items = Vec::new();
        for a in 0..=k {
            items.push((SumKind::Zeta, ones(p - 1, a + 2)));
            items.push((SumKind::Zeta, ones(q - 1, k - a + 2)));
        }
        let z = self.batch(&items)?;
        let products = z.chunks(2).enumerate().map(|(a, pair)| {
            let b = k as usize - a;
            let prod = &pair[0] * &pair[1];
            if b.is_multiple_of(2) {
                prod
            } else {
                -prod
            }
        });
        let rhs = sum_values(products, self.config());
        Ok(&lhs - &rhs)
    }

    /// `zeta*({1}^q, n+2)` from the composition expansion.
    pub fn zetastar_ones(&self, q: u32, n: u32) -> Result<ValueWithError> {
        self.g_compositions(GSpec::new(n, 0, q))
    }
}

pub fn g_direct(spec: GSpec, cfg: &PrecisionConfig) -> Result<ValueWithError> {
    Evaluator::new(*cfg)?.g_direct(spec)
}

pub fn g_compositions(spec: GSpec, cfg: &PrecisionConfig) -> Result<ValueWithError> {
    Evaluator::new(*cfg)?.g_compositions(spec)
}

pub fn g_quad(spec: GSpec, cfg: &PrecisionConfig) -> Result<ValueWithError> {
    if spec.n + spec.p + spec.q > MAX_QUAD_WEIGHT {
        return Err(Error::Domain(format!(
            "{spec}: quadrature route needs n + p + q <= {MAX_QUAD_WEIGHT}"
        )));
    }
    integrate_monomials(&euler_sum_integrand(spec.n, spec.p, spec.q), cfg)
}

pub fn reflection_residual(
    p: u32,
    q: u32,
    k: u32,
    cfg: &PrecisionConfig,
) -> Result<ValueWithError> {
    Evaluator::new(*cfg)?.reflection_residual(p, q, k)
}

pub fn zetastar_ones(q: u32, n: u32, cfg: &PrecisionConfig) -> Result<ValueWithError> {
    Evaluator::new(*cfg)?.zetastar_ones(q, n)
}
