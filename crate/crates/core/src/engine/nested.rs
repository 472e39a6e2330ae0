//! Simultaneous evaluation of a family of nested harmonic-type sums.
//!
//! Every node `j` of a [`Program`] defines
//! `Z_j(n) = sum_{k <= n} k^{-a_j} prod_c Z_c(k - s_c)` where each child link
//! uses either `k - 1` (strict ordering) or `k` (non-strict ordering). Chains
//! of such nodes give `zeta_n` and `zeta*_n`; two chains under one root give
//! the Euler sums `G_{n+2}(p, q)`.
//!
//! One sweep `k = 1..N` produces all partial sums. The infinite tail is then
//! supplied by asymptotic expansions: each node's expansion is built
//! bottom-up with the Euler-Maclaurin operator and its constant is fitted to
//! the exact partial sum at `N`. Repeating the fit at `N/2` gives the error
//! estimate.

use std::collections::HashMap;

use rug::{Assign, Float};

use super::asymptotic::{order_for, Expansion};
use crate::finite::SumKind;
use crate::numerics::{PrecisionConfig, ValueWithError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Link {
    /// child evaluated at `k - 1`
    Prev,
    /// child evaluated at `k`
    Same,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Node {
    exponent: u32,
    children: Vec<(usize, Link)>,
}

#[derive(Clone, Debug, Default)]
pub(crate) struct Program {
    nodes: Vec<Node>,
    lookup: HashMap<Node, usize>,
}

/// Raw partial sum and tail-corrected value of one output node.
#[derive(Clone, Debug)]
pub(crate) struct NodeValue {
    pub raw: ValueWithError,
    pub extrapolated: ValueWithError,
}

impl Program {
    pub(crate) fn new() -> Self {
        Program::default()
    }

    pub(crate) fn node(&mut self, exponent: u32, children: Vec<(usize, Link)>) -> usize {
        assert!(exponent >= 1);
        assert!(children.iter().all(|&(c, _)| c < self.nodes.len()));
        let node = Node { exponent, children };
        if let Some(&id) = self.lookup.get(&node) {
            return id;
        }
        let id = self.nodes.len();
        self.nodes.push(node.clone());
        self.lookup.insert(node, id);
        id
    }

    /// Chain for `zeta_n(parts)` or `zeta*_n(parts)`; `None` for an empty index.
    pub(crate) fn chain(&mut self, parts: &[u32], kind: SumKind) -> Option<usize> {
        let link = match kind {
            SumKind::Zeta => Link::Prev,
            SumKind::ZetaStar => Link::Same,
        };
        let mut last: Option<usize> = None;
        for &a in parts {
            let children = last.map(|c| vec![(c, link)]).unwrap_or_default();
            last = Some(self.node(a, children));
        }
        last
    }

    fn sweep(&self, n: u64, mid: u64, bits: u32) -> (Vec<Float>, Vec<Float>) {
        let max_exp = self.nodes.iter().map(|nd| nd.exponent).max().unwrap_or(1) as usize;
        let zero = Float::with_val(bits, 0);
        let mut prev: Vec<Float> = vec![zero.clone(); self.nodes.len()];
        let mut cur = prev.clone();
        let mut pows = vec![zero.clone(); max_exp + 1];
        let mut tmp = zero.clone();
        let mut at_mid = prev.clone();
        for k in 1..=n {
            pows[1].assign(k);
            pows[1].recip_mut();
            for a in 2..=max_exp {
                let (lo, hi) = pows.split_at_mut(a);
                hi[0].assign(&lo[a - 1] * &lo[1]);
            }
            for (j, node) in self.nodes.iter().enumerate() {
                tmp.assign(&pows[node.exponent as usize]);
                for &(c, link) in &node.children {
                    match link {
                        Link::Prev => tmp *= &prev[c],
                        Link::Same => tmp *= &cur[c],
                    }
                }
                cur[j].assign(&prev[j]);
                cur[j] += &tmp;
            }
            std::mem::swap(&mut prev, &mut cur);
            if k == mid {
                at_mid.clone_from(&prev);
            }
        }
        (prev, at_mid)
    }

    /// Expansions of every node with constants fitted to `partial` at `n`.
    fn expansions(&self, partial: &[Float], n: u64, order: usize, bits: u32) -> Vec<Expansion> {
        let mut exps: Vec<Expansion> = Vec::with_capacity(self.nodes.len());
        let mut shifted: HashMap<usize, Expansion> = HashMap::new();
        for (j, node) in self.nodes.iter().enumerate() {
            let mut f = Expansion::power(node.exponent, order, bits);
            for &(c, link) in &node.children {
                let child = match link {
                    Link::Same => exps[c].clone(),
                    Link::Prev => shifted
                        .entry(c)
                        .or_insert_with(|| exps[c].shift_back())
                        .clone(),
                };
                f = f.mul(&child);
            }
            let mut big_f = f.partial_sum();
            let fitted = Float::with_val(bits, &partial[j] - &big_f.eval(n));
            big_f.add_constant(&fitted);
            exps.push(big_f);
        }
        exps
    }

    /// Number of nodes feeding `o` (itself included) and their largest
    /// partial sum, so that error estimates do not depend on what else shares
    /// the program.
    fn ancestry(&self, o: usize, partial: &[Float]) -> (usize, f64) {
        let mut seen = vec![false; self.nodes.len()];
        let mut stack = vec![o];
        let mut count = 0;
        let mut largest = 0.0f64;
        while let Some(j) = stack.pop() {
            if std::mem::replace(&mut seen[j], true) {
                continue;
            }
            count += 1;
            largest = largest.max(partial[j].to_f64().abs());
            stack.extend(self.nodes[j].children.iter().map(|&(c, _)| c));
        }
        (count, largest)
    }

    /// Evaluate the requested output nodes at truncation `cfg.cutoff`.
    pub(crate) fn evaluate(&self, outputs: &[usize], cfg: &PrecisionConfig) -> Vec<NodeValue> {
        let bits = cfg.bits();
        let n = cfg.cutoff;
        let mid = n / 2;
        let (full, half) = self.sweep(n, mid, bits);
        let order = order_for(cfg.digits, mid);
        let exps_full = self.expansions(&full, n, order, bits);
        let exps_half = self.expansions(&half, mid, order, bits);

        let ulp = 2f64.powi(-(bits as i32));
        outputs
            .iter()
            .map(|&o| {
                let e_full = &exps_full[o];
                let value = e_full.constant_term();
                let value_half = exps_half[o].constant_term();
                let diff = Float::with_val(bits, &value - &value_half).abs().to_f64();
                let (count, largest) = self.ancestry(o, &full);
                let sweep_rounding = ulp * n as f64 * largest * count as f64;
                let rounding = cfg.nominal_eps() * value.to_f64().abs() + sweep_rounding;
                let tail = Float::with_val(bits, &value - &full[o]).abs().to_f64();
                let extrapolated = ValueWithError::new(value, 2.0 * diff + rounding);
                let raw = ValueWithError::new(full[o].clone(), 2.0 * tail + 2.0 * diff + rounding);
                NodeValue { raw, extrapolated }
            })
            .collect()
    }
}
