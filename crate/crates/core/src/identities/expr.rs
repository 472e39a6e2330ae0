//! Linear combinations of products of series values, evaluated with one
//! batched sweep per side.

use std::fmt;

use rug::Float;

use crate::engine::{zetastar_head2, Evaluator};
use crate::error::Result;
use crate::euler::GSpec;
use crate::finite::SumKind;
use crate::indices::MultiIndex;
use crate::numerics::{RationalNumber, ValueWithError};
use crate::quadrature::{integrate_monomials, LogMonomial};

/// One evaluable quantity.
#[derive(Clone, Debug, PartialEq)]
pub enum Atom {
    /// Riemann zeta at an integer.
    Zeta(u32),
    Mzv(MultiIndex),
    Mzsv(MultiIndex),
    /// `G_{n+2}(p, q)` by its defining series.
    G(GSpec),
    /// `zeta*(r+2, {2}^m)` by the generating-function route.
    HeadTwo {
        r: u32,
        m: usize,
    },
    /// Integral over `E_2` of a sum of logarithmic monomials.
    Quad(Vec<LogMonomial>),
}

impl Atom {
    pub fn mzv(parts: Vec<u32>) -> Atom {
        Atom::Mzv(MultiIndex::new(parts).expect("positive parts"))
    }

    pub fn mzsv(parts: Vec<u32>) -> Atom {
        Atom::Mzsv(MultiIndex::new(parts).expect("positive parts"))
    }

    pub fn g(n: u32, p: u32, q: u32) -> Atom {
        Atom::G(GSpec::new(n, p, q))
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inner = |idx: &MultiIndex| {
            let s = idx.to_string();
            s[1..s.len() - 1].to_string()
        };
        match self {
            Atom::Zeta(s) => write!(f, "zeta({s})"),
            Atom::Mzv(idx) => write!(f, "zeta({})", inner(idx)),
            Atom::Mzsv(idx) => write!(f, "zetastar({})", inner(idx)),
            Atom::G(spec) => write!(f, "{spec}"),
            Atom::HeadTwo { r, m } => write!(f, "zetastar_gf({},{{2}}^{m})", r + 2),
            Atom::Quad(terms) => {
                let parts: Vec<String> = terms.iter().map(ToString::to_string).collect();
                write!(f, "int[{}]", parts.join(" + "))
            }
        }
    }
}

/// `coeff * prod atoms`; an empty product is 1.
#[derive(Clone, Debug, PartialEq)]
pub struct Term {
    pub coeff: RationalNumber,
    pub atoms: Vec<Atom>,
}

/// A sum of terms; the empty sum is 0.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Expr {
    pub terms: Vec<Term>,
}

impl Expr {
    pub fn zero() -> Self {
        Expr::default()
    }

    pub fn atom(a: Atom) -> Self {
        Expr::zero().with(1, vec![a])
    }

    pub fn constant(c: RationalNumber) -> Self {
        let mut e = Expr::zero();
        e.push(c, Vec::new());
        e
    }

    pub fn push(&mut self, coeff: RationalNumber, atoms: Vec<Atom>) {
        if !coeff.is_zero() {
            self.terms.push(Term { coeff, atoms });
        }
    }

    /// Add `coeff * prod atoms` with an integer coefficient.
    pub fn add(&mut self, coeff: i64, atoms: Vec<Atom>) {
        self.push(RationalNumber::from(coeff), atoms);
    }

    pub fn with(mut self, coeff: i64, atoms: Vec<Atom>) -> Self {
        self.add(coeff, atoms);
        self
    }

    pub fn plus(mut self, other: Expr) -> Self {
        self.terms.extend(other.terms);
        self
    }

    pub fn minus(self, other: Expr) -> Self {
        self.plus(other.scaled(&RationalNumber::from(-1)))
    }

    pub fn scaled(mut self, c: &RationalNumber) -> Self {
        for t in &mut self.terms {
            t.coeff = &t.coeff * c;
        }
        self.terms.retain(|t| !t.coeff.is_zero());
        self
    }

    /// True for the empty sum, which evaluates to exactly zero.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn atoms(&self) -> impl Iterator<Item = &Atom> {
        self.terms.iter().flat_map(|t| t.atoms.iter())
    }

    pub fn evaluate(&self, ev: &Evaluator) -> Result<ValueWithError> {
        Ok(evaluate_all(&[self], ev)?.pop().expect("one value"))
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            let negative = t.coeff < RationalNumber::zero();
            let magnitude = if negative {
                -t.coeff.clone()
            } else {
                t.coeff.clone()
            };
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let atoms: Vec<String> = t.atoms.iter().map(ToString::to_string).collect();
            if atoms.is_empty() {
                write!(f, "{magnitude}")?;
            } else if magnitude == RationalNumber::one() {
                write!(f, "{}", atoms.join("*"))?;
            } else {
                write!(f, "{magnitude}*{}", atoms.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Evaluate several expressions, batching every series they mention.
pub fn evaluate_all(exprs: &[&Expr], ev: &Evaluator) -> Result<Vec<ValueWithError>> {
    let mut series: Vec<(SumKind, MultiIndex)> = Vec::new();
    let mut gs: Vec<GSpec> = Vec::new();
    for a in exprs.iter().flat_map(|e| e.atoms()) {
        match a {
            Atom::Mzv(idx) => series.push((SumKind::Zeta, idx.clone())),
            Atom::Mzsv(idx) => series.push((SumKind::ZetaStar, idx.clone())),
            Atom::G(spec) => gs.push(*spec),
            _ => {}
        }
    }
    series.sort();
    series.dedup();
    gs.sort();
    gs.dedup();
    let series_values = ev.batch(&series)?;
    let g_values = ev.g_direct_batch(&gs)?;

    let cfg = ev.config();
    let lookup = |a: &Atom| -> Result<ValueWithError> {
        Ok(match a {
            Atom::Zeta(s) => ev.zeta(i64::from(*s))?,
            Atom::Mzv(idx) => {
                let pos = series
                    .binary_search(&(SumKind::Zeta, idx.clone()))
                    .expect("batched");
                series_values[pos].clone()
            }
            Atom::Mzsv(idx) => {
                let pos = series
                    .binary_search(&(SumKind::ZetaStar, idx.clone()))
                    .expect("batched");
                series_values[pos].clone()
            }
            Atom::G(spec) => g_values[gs.binary_search(spec).expect("batched")].clone(),
            Atom::HeadTwo { r, m } => zetastar_head2(*r, *m, cfg),
            Atom::Quad(terms) => integrate_monomials(terms, cfg)?,
        })
    };

    exprs
        .iter()
        .map(|e| {
            let mut total = ValueWithError::zero(cfg);
            for t in &e.terms {
                let mut prod = ValueWithError::one(cfg);
                for a in &t.atoms {
                    prod = &prod * &lookup(a)?;
                }
                let c: Float = t.coeff.to_float(cfg.bits());
                total = &total + &prod.scale_float(&c);
            }
            Ok(total)
        })
        .collect()
}
