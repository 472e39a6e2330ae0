//! Multi-indices and composition enumeration.
//!
//! Indices follow the ascending summation convention
//! `k_1 < k_2 < ... < k_r`, so convergence needs the *last* entry to be at
//! least 2.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exponent sequence `(a_1, ..., a_r)`, all entries >= 1. The empty index is
/// allowed and evaluates to 1.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::Domain(format!(
                "index entries must be positive, got {parts:?}"
            )));
        }
        Ok(MultiIndex(parts))
    }

    pub fn empty() -> Self {
        MultiIndex(Vec::new())
    }

    /// `k` repetitions of `a`, written `{a}^k`.
    pub fn repeated(a: u32, k: usize) -> Self {
        assert!(a >= 1);
        MultiIndex(vec![a; k])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn into_parts(self) -> Vec<u32> {
        self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn height(&self) -> usize {
        self.0.iter().filter(|&&a| a > 1).count()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Last entry >= 2. The empty index is not admissible but is still a valid
    /// argument to the evaluators.
    pub fn is_admissible(&self) -> bool {
        self.0.last().is_some_and(|&a| a >= 2)
    }

    /// Append another index.
    pub fn then(mut self, other: &MultiIndex) -> Self {
        self.0.extend_from_slice(&other.0);
        self
    }

    pub fn push(mut self, a: u32) -> Self {
        assert!(a >= 1);
        self.0.push(a);
        self
    }
}

/// `(weight, depth, height)` of an index.
pub fn weight_depth_height(idx: &MultiIndex) -> (u32, usize, usize) {
    (idx.weight(), idx.depth(), idx.height())
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str(")")
    }
}

impl FromStr for MultiIndex {
    type Err = Error;

    /// Accepts `(3,{2}^2)`, `3,2,2`, `()` and similar; whitespace is ignored.
    fn from_str(s: &str) -> Result<Self> {
        let fail = |reason: &str| Error::IndexParse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let body = match (compact.strip_prefix('('), compact.ends_with(')')) {
            (Some(rest), true) => &rest[..rest.len() - 1],
            (None, false) => compact.as_str(),
            _ => return Err(fail("unbalanced parentheses")),
        };
        if body.is_empty() {
            return Ok(MultiIndex::empty());
        }
        let mut parts = Vec::new();
        for item in body.split(',') {
            if let Some(block) = item.strip_prefix('{') {
                let (value, count) = block
                    .split_once("}^")
                    .ok_or_else(|| fail("repetition block must look like {a}^k"))?;
                let value: u32 = value.parse().map_err(|_| fail("bad repeated value"))?;
                let count: usize = count.parse().map_err(|_| fail("bad repetition count"))?;
                if value == 0 {
                    return Err(fail("index entries must be positive"));
                }
                parts.extend(std::iter::repeat_n(value, count));
            } else {
                let value: u32 = item
                    .parse()
                    .map_err(|_| fail("expected a positive integer"))?;
                if value == 0 {
                    return Err(fail("index entries must be positive"));
                }
                parts.push(value);
            }
        }
        Ok(MultiIndex(parts))
    }
}

/// A sequence of nonnegative integers together with its sum.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Composition {
    pub parts: Vec<u32>,
    pub total: u32,
}

/// Lexicographic enumeration of all `parts`-tuples of integers `>= min_part`
/// with sum `total`.
#[derive(Clone, Debug)]
pub struct Compositions {
    current: Option<Vec<u32>>,
    total: u32,
    min_part: u32,
}

impl Iterator for Compositions {
    type Item = Composition;

    fn next(&mut self) -> Option<Composition> {
        let out = self.current.clone()?;
        self.current = advance(&out, self.min_part);
        Some(Composition {
            parts: out,
            total: self.total,
        })
    }
}

fn advance(parts: &[u32], min_part: u32) -> Option<Vec<u32>> {
    let r = parts.len();
    if r < 2 {
        return None;
    }
    let last = r - 1;
    // rightmost i < last whose suffix holds surplus above the minimum
    let mut suffix = 0u32;
    for i in (0..last).rev() {
        suffix += parts[i + 1];
        let floor = (last - i) as u32 * min_part;
        if suffix > floor {
            let mut next = parts.to_vec();
            next[i] += 1;
            let remaining = suffix - 1 - (last - i - 1) as u32 * min_part;
            for p in next.iter_mut().take(last).skip(i + 1) {
                *p = min_part;
            }
            next[last] = remaining;
            return Some(next);
        }
    }
    None
}

/// Compositions of `total` into exactly `parts` entries, each `>= min_part`
/// (`min_part` is 0 or 1), in lexicographic order.
pub fn compositions(total: u32, parts: usize, min_part: u32) -> Compositions {
    assert!(min_part <= 1, "min_part must be 0 or 1");
    let floor = parts as u32 * min_part;
    let current = if parts == 0 {
        (total == 0).then(Vec::new)
    } else if total < floor {
        None
    } else {
        let mut first = vec![min_part; parts];
        first[parts - 1] = total - (parts as u32 - 1) * min_part;
        Some(first)
    };
    Compositions {
        current,
        total,
        min_part,
    }
}

/// All admissible indices of the given weight with exactly `height` entries
/// greater than 1, sorted lexicographically.
pub fn admissible_by_weight_height(weight: u32, height: usize) -> Vec<MultiIndex> {
    if weight < 2 || height == 0 || 2 * height as u32 > weight {
        return Vec::new();
    }
    let mut out: Vec<MultiIndex> = (1..=weight as usize)
        .flat_map(|depth| compositions(weight, depth, 1))
        .map(|c| MultiIndex(c.parts))
        .filter(|idx| idx.is_admissible() && idx.height() == height)
        .collect();
    out.sort();
    out
}
