//! The identity catalog: parameters, default grids and both sides.

use super::expr::Expr;
use super::formulas as f;
use super::{Instance, Params};
use crate::error::{Error, Result};
use crate::euler::{GSpec, MAX_QUAD_WEIGHT};

/// Default relative tolerance for identities between series values.
pub const SERIES_TOL: f64 = 1e-6;
/// Default relative tolerance for identities involving quadrature.
pub const QUAD_TOL: f64 = 1e-4;

/// A named integer parameter with its accepted range.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ParamSpec {
    pub name: &'static str,
    pub min: u32,
    pub max: u32,
}

const fn param(name: &'static str, min: u32, max: u32) -> ParamSpec {
    ParamSpec { name, min, max }
}

/// One catalogued identity.
#[derive(Clone, Copy)]
pub struct IdentityDef {
    pub id: &'static str,
    pub description: &'static str,
    pub params: &'static [ParamSpec],
    /// Default relative tolerance.
    pub tol: f64,
    grid: fn() -> Vec<Vec<u32>>,
    build: fn(&Params) -> Result<Instance>,
}

impl std::fmt::Debug for IdentityDef {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("IdentityDef").field("id", &self.id).finish()
    }
}

impl IdentityDef {
    /// Parameter bindings of the default grid, in order.
    pub fn default_grid(&self) -> Vec<Params> {
        (self.grid)()
            .into_iter()
            .map(|values| Params::from_pairs(self.params.iter().map(|p| p.name).zip(values)))
            .collect()
    }

    /// Check names and ranges, then build both sides.
    pub fn instance(&self, params: &Params) -> Result<Instance> {
        for (name, _) in params.iter() {
            if !self.params.iter().any(|p| p.name == name) {
                return Err(Error::InvalidParams {
                    id: self.id.into(),
                    reason: format!("unknown parameter `{name}`"),
                });
            }
        }
        for p in self.params {
            let value = params.get(p.name).ok_or_else(|| Error::InvalidParams {
                id: self.id.into(),
                reason: format!("missing parameter `{}`", p.name),
            })?;
            if value < p.min || value > p.max {
                return Err(Error::ParamOutOfRange {
                    id: self.id.into(),
                    name: p.name.into(),
                    value,
                    min: p.min,
                    max: p.max,
                });
            }
        }
        (self.build)(params)
    }
}

fn invalid(id: &str, reason: impl Into<String>) -> Error {
    Error::InvalidParams {
        id: id.into(),
        reason: reason.into(),
    }
}

fn series(lhs: Expr, rhs: Expr) -> Instance {
    Instance::new(lhs, rhs, SERIES_TOL)
}

fn grid1(range: std::ops::RangeInclusive<u32>) -> Vec<Vec<u32>> {
    range.map(|a| vec![a]).collect()
}

fn grid2(
    a: std::ops::RangeInclusive<u32>,
    b: std::ops::RangeInclusive<u32>,
    keep: fn(u32, u32) -> bool,
) -> Vec<Vec<u32>> {
    a.flat_map(|x| b.clone().map(move |y| (x, y)))
        .filter(|&(x, y)| keep(x, y))
        .map(|(x, y)| vec![x, y])
        .collect()
}

fn grid3(r: std::ops::RangeInclusive<u32>, keep: fn(u32, u32, u32) -> bool) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for a in r.clone() {
        for b in r.clone() {
            for c in r.clone() {
                if keep(a, b, c) {
                    out.push(vec![a, b, c]);
                }
            }
        }
    }
    out
}

fn g_spec(p: &Params) -> GSpec {
    GSpec::new(p.value("n"), p.value("p"), p.value("q"))
}

static CATALOG: &[IdentityDef] = &[
    IdentityDef {
        id: "prop2.5",
        description: "G_2(p,q) = C(p+q+1,q) zeta(p+q+2)",
        params: &[param("p", 0, 10), param("q", 0, 10)],
        tol: SERIES_TOL,
        grid: || grid2(0..=6, 0..=6, |p, q| p + q <= 6),
        build: |ps| {
            let (p, q) = (ps.value("p"), ps.value("q"));
            if p + q > 10 {
                return Err(invalid("prop2.5", "needs p + q <= 10"));
            }
            Ok(series(f::g_direct_expr(GSpec::new(0, p, q)), f::g2_closed_expr(p, q)))
        },
    },
    IdentityDef {
        id: "thm2.2-equiv",
        description: "G_{n+2}(p,q) by its series equals the composition sum (route 0) or the E_2 integral (route 1)",
        params: &[param("n", 0, 10), param("p", 0, 10), param("q", 0, 10), param("route", 0, 1)],
        tol: SERIES_TOL,
        grid: || {
            let mut g: Vec<Vec<u32>> = grid3(0..=6, |n, p, q| n + p + q <= 6)
                .into_iter()
                .map(|mut v| {
                    v.push(0);
                    v
                })
                .collect();
            g.extend(grid3(0..=4, |n, p, q| n + p + q <= 4).into_iter().map(|mut v| {
                v.push(1);
                v
            }));
            g
        },
        build: |ps| {
            let spec = g_spec(ps);
            let total = spec.n + spec.p + spec.q;
            if ps.value("route") == 0 {
                if total > 10 {
                    return Err(invalid("thm2.2-equiv", "needs n + p + q <= 10"));
                }
                Ok(series(f::g_direct_expr(spec), f::g_compositions_expr(spec)))
            } else {
                if total > MAX_QUAD_WEIGHT {
                    return Err(invalid("thm2.2-equiv", format!("route 1 needs n + p + q <= {MAX_QUAD_WEIGHT}")));
                }
                Ok(Instance::new(f::g_direct_expr(spec), f::g_quad_expr(spec), QUAD_TOL))
            }
        },
    },
    IdentityDef {
        id: "cor2.3",
        description: "zeta*({1}^q,n+2) equals the composition sum (route 0) or the E_2 integral (route 1)",
        params: &[param("q", 0, 10), param("n", 0, 10), param("route", 0, 1)],
        tol: SERIES_TOL,
        grid: || {
            let mut g: Vec<Vec<u32>> = grid2(0..=6, 0..=6, |q, n| q + n <= 6)
                .into_iter()
                .map(|mut v| {
                    v.push(0);
                    v
                })
                .collect();
            g.extend(grid2(0..=4, 0..=4, |q, n| q + n <= 4).into_iter().map(|mut v| {
                v.push(1);
                v
            }));
            g
        },
        build: |ps| {
            let (q, n) = (ps.value("q"), ps.value("n"));
            if q + n > 10 {
                return Err(invalid("cor2.3", "needs q + n <= 10"));
            }
            let spec = GSpec::new(n, 0, q);
            if ps.value("route") == 0 {
                Ok(series(f::zetastar_ones_expr(q, n), f::g_compositions_expr(spec)))
            } else {
                Ok(Instance::new(f::zetastar_ones_expr(q, n), f::g_quad_expr(spec), QUAD_TOL))
            }
        },
    },
    IdentityDef {
        id: "prop2.4",
        description: "G_{k+3}(p-1,q) + (-1)^k G_{k+3}(q-1,p) = sum_{a+b=k} (-1)^b zeta({1}^{p-1},a+2) zeta({1}^{q-1},b+2)",
        params: &[param("p", 1, 6), param("q", 1, 6), param("k", 0, 6)],
        tol: SERIES_TOL,
        grid: || {
            let mut out = Vec::new();
            for p in 1..=3 {
                for q in 1..=3 {
                    for k in 0..=2 {
                        if p + q + k <= 7 {
                            out.push(vec![p, q, k]);
                        }
                    }
                }
            }
            out
        },
        build: |ps| {
            let (p, q, k) = (ps.value("p"), ps.value("q"), ps.value("k"));
            if p + q + k > 12 {
                return Err(invalid("prop2.4", "needs p + q + k <= 12"));
            }
            Ok(series(f::reflection_lhs(p, q, k), f::reflection_rhs(p, q, k)))
        },
    },
    IdentityDef {
        id: "easy-ones",
        description: "zeta*({1}^q,2) = (q+1) zeta(q+2)",
        params: &[param("q", 0, 10)],
        tol: SERIES_TOL,
        grid: || grid1(0..=6),
        build: |ps| {
            let q = ps.value("q");
            Ok(series(f::zetastar_ones_expr(q, 0), f::easy_ones_rhs(q)))
        },
    },
    IdentityDef {
        id: "prop3.1",
        description: "sum_k k^-(r+2) c_m(k) = zeta*(r+2,{2}^m), c_m(k) the x^{2m} coefficient of prod_{n>=k} (1-x^2/n^2)^-1",
        params: &[param("r", 0, 4), param("m", 0, 5)],
        tol: SERIES_TOL,
        grid: || grid2(0..=2, 0..=3, |_, _| true),
        build: |ps| {
            let (r, m) = (ps.value("r"), ps.value("m"));
            Ok(series(f::head_two_generating(r, m), f::head_two_series(r, m)))
        },
    },
    IdentityDef {
        id: "thm3.2",
        description: "(1/(r!n!)) int_{E_2} F4^r (F1-F3)^n = zeta*(r+2,{2}^{n/2}) for even n, 0 for odd n",
        params: &[param("r", 0, 3), param("n", 0, 5)],
        tol: QUAD_TOL,
        grid: || grid2(0..=2, 0..=3, |_, _| true),
        build: |ps| {
            let (r, n) = (ps.value("r"), ps.value("n"));
            let lhs = f::head_two_quadrature(r, n)?;
            if n % 2 == 1 {
                Ok(Instance::new(lhs, Expr::zero(), QUAD_TOL).with_zero_tol(QUAD_TOL))
            } else {
                Ok(Instance::new(lhs, f::head_two_series(r, n / 2), QUAD_TOL))
            }
        },
    },
    IdentityDef {
        id: "prop3.3",
        description: "zeta*(r+2,{2}^m) = sum_{p+q=2m, a+b=r} (-1)^{q+b} C(p+b,p) G_{q+2}(p+b,a)",
        params: &[param("r", 0, 3), param("m", 0, 4)],
        tol: SERIES_TOL,
        grid: || grid2(0..=2, 0..=3, |_, _| true),
        build: |ps| {
            let (r, m) = (ps.value("r"), ps.value("m"));
            Ok(series(f::head_two_from_g(r, m), f::head_two_series(r, m)))
        },
    },
    IdentityDef {
        id: "prop4.1",
        description: "sum_{a+b=n} zeta*({s}^a) zeta(sb+r) = sum_{a+b=n} zeta*({s}^a,r,{s}^b)",
        params: &[param("s", 2, 3), param("r", 2, 3), param("n", 0, 3)],
        tol: SERIES_TOL,
        grid: || {
            let mut out = Vec::new();
            for s in 2..=3 {
                for r in 2..=3 {
                    for n in 0..=2 {
                        out.push(vec![s, r, n]);
                    }
                }
            }
            out
        },
        build: |ps| {
            let (s, r, n) = (ps.value("s"), ps.value("r"), ps.value("n"));
            Ok(series(f::height_one_products(s, r, n), f::height_one_star_sum(s, r, n)))
        },
    },
    IdentityDef {
        id: "prop4.2",
        description: "sum_{r=0}^n (-1)^{r+n} zeta({1}^r,n+2-r) = zeta*({2}^{m+1}) for n=2m, 0 for odd n",
        params: &[param("n", 0, 8)],
        tol: SERIES_TOL,
        grid: || grid1(0..=5),
        build: |ps| {
            let n = ps.value("n");
            let inst = series(f::alternating_ones(n), f::alternating_ones_value(n));
            Ok(if n % 2 == 1 { inst.with_zero_tol(SERIES_TOL) } else { inst })
        },
    },
    IdentityDef {
        id: "prop4.3",
        description: "sum_{r=0}^n (-1)^{r+n} (r+1) zeta({1}^{r+1},n+2-r) = (m+1) zeta*({2}^{m+2}) for n=2m+1, sum_{a+b=m} zeta*({2}^a,3,{2}^b) for n=2m",
        params: &[param("n", 0, 8)],
        tol: SERIES_TOL,
        grid: || grid1(0..=4),
        build: |ps| {
            let n = ps.value("n");
            Ok(series(f::weighted_alternating_ones(n), f::weighted_alternating_value(n)))
        },
    },
    IdentityDef {
        id: "prop4.4",
        description: "sum_{p+q=2n+2} zeta*({1}^p,q+2) = 2(2n+3)(1-2^{-(2n+3)}) zeta(2n+4)",
        params: &[param("n", 0, 4)],
        tol: SERIES_TOL,
        grid: || grid1(0..=2),
        build: |ps| {
            let n = ps.value("n");
            Ok(series(f::star_ones_sum(n), f::star_ones_sum_value(n)))
        },
    },
    IdentityDef {
        id: "aoki-ohno",
        description: "sum of zeta* over admissible indices of weight k and height s = 2 C(k-1,2s-1) (1-2^{1-k}) zeta(k)",
        params: &[param("k", 2, 10), param("s", 1, 4)],
        tol: SERIES_TOL,
        grid: || grid2(2..=8, 1..=2, |k, s| 2 * s <= k),
        build: |ps| {
            let (k, s) = (ps.value("k"), ps.value("s"));
            if 2 * s > k {
                return Err(invalid("aoki-ohno", "needs 2s <= k"));
            }
            Ok(series(f::height_weight_star_sum(k, s), f::height_weight_value(k, s)))
        },
    },
    IdentityDef {
        id: "zetastar-2s",
        description: "zeta*({2}^{n+2}) = 2(1-2^{-(2n+3)}) zeta(2n+4)",
        params: &[param("n", 0, 5)],
        tol: SERIES_TOL,
        grid: || grid1(0..=3),
        build: |ps| {
            let n = ps.value("n");
            Ok(series(f::zetastar_twos(n), f::zetastar_twos_value(n)))
        },
    },
    IdentityDef {
        id: "prop5.1",
        description: "sum_{p+q=2n} (-1)^q G_{q+2}(p,2) = sum_{p+q=2n+1} G_{q+2}(1,p) - sum_{a+b=n} zeta(1,2a+3) zeta*({2}^b)",
        params: &[param("n", 0, 3)],
        tol: SERIES_TOL,
        grid: || grid1(0..=2),
        build: |ps| {
            let n = ps.value("n");
            Ok(series(f::alternating_g_two(n), f::alternating_g_two_value(n)))
        },
    },
    IdentityDef {
        id: "prop5.2",
        description: "sum_{p+q=2n} (-1)^q (p+1) G_{q+2}(p+1,1) = sum_{p+q=2n} (p+1) zeta*({1}^{p+2},q+2) - sum_{a+b=n} b zeta(2a+2) zeta*({2}^{b+1}) - sum_{a+b+c=n-1} zeta*({2}^a,3,{2}^b) zeta(2c+3)",
        params: &[param("n", 0, 3)],
        tol: SERIES_TOL,
        grid: || grid1(0..=2),
        build: |ps| {
            let n = ps.value("n");
            Ok(series(f::weighted_alternating_g_one(n), f::weighted_alternating_g_one_value(n)))
        },
    },
    IdentityDef {
        id: "thm5.3",
        description: "sum_{p+q=2n+1} (p+1) zeta*({1}^{p+1},q+2) - sum_{p+q=2n+1} G_{q+2}(1,p) = C(2n+4,3) zeta(2n+4) + sum_j (-1)^j sum_c W(c) zeta(c_0+3,c_1+2,...,c_j+2)",
        params: &[param("n", 0, 3)],
        tol: SERIES_TOL,
        grid: || grid1(0..=2),
        build: |ps| {
            let n = ps.value("n");
            Ok(series(f::thm53_lhs(n), f::thm53_rhs(n)))
        },
    },
    IdentityDef {
        id: "eq6.1",
        description: "sum_{a+b=n} (2+[a=0]) zeta*({2}^a,3,{2}^b) = 2(2n+2)(1-2^{-(2n+2)}) zeta(2n+3)",
        params: &[param("n", 0, 5)],
        tol: SERIES_TOL,
        grid: || grid1(0..=3),
        build: |ps| {
            let n = ps.value("n");
            Ok(series(f::three_in_twos_weighted(n), f::three_in_twos_value(n)))
        },
    },
    IdentityDef {
        id: "sec6-r0",
        description: "zeta*(2,{2}^n) = sum_{p+q=2n} (-1)^q zeta({1}^p,q+2)",
        params: &[param("n", 0, 3)],
        tol: SERIES_TOL,
        grid: || grid1(0..=3),
        build: |ps| {
            let n = ps.value("n");
            Ok(series(f::zetastar_head_expr(0, n), f::head_two_series(0, n)))
        },
    },
    IdentityDef {
        id: "sec6-r1",
        description: "zeta*(3,{2}^n) = 2(2n+2)(1-2^{-(2n+2)}) zeta(2n+3) - 2 sum_{a+b=n} zeta*({2}^a,3,{2}^b)",
        params: &[param("n", 0, 3)],
        tol: SERIES_TOL,
        grid: || grid1(0..=3),
        build: |ps| {
            let n = ps.value("n");
            Ok(series(f::zetastar_head_expr(1, n), f::head_two_series(1, n)))
        },
    },
    IdentityDef {
        id: "sec6-r2",
        description: "zeta*(4,{2}^n) from zeta(2n+4), the W-weighted composition sum and products of lower-depth values",
        params: &[param("n", 0, 3)],
        tol: SERIES_TOL,
        grid: || grid1(0..=3),
        build: |ps| {
            let n = ps.value("n");
            Ok(series(f::zetastar_head_expr(2, n), f::head_two_series(2, n)))
        },
    },
    IdentityDef {
        id: "duality-ones",
        description: "zeta({1}^m,2) = zeta(m+2)",
        params: &[param("m", 0, 10)],
        tol: SERIES_TOL,
        grid: || grid1(0..=6),
        build: |ps| {
            let m = ps.value("m");
            Ok(series(f::duality_lhs(m), f::duality_rhs(m)))
        },
    },
];

/// Every catalogued identity, in a fixed order.
pub fn catalog() -> &'static [IdentityDef] {
    CATALOG
}

pub fn lookup(id: &str) -> Result<&'static IdentityDef> {
    CATALOG
        .iter()
        .find(|d| d.id == id)
        .ok_or_else(|| Error::UnknownIdentity(id.to_string()))
}
