//! Infinite multiple zeta and zeta-star values with error estimates.

pub(crate) mod asymptotic;
pub(crate) mod nested;
mod tail;

use std::collections::HashMap;
use std::sync::Mutex;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::euler::GSpec;
use crate::finite::SumKind;
use crate::indices::MultiIndex;
use crate::numerics::{riemann_zeta, sum_values, PrecisionConfig, ValueWithError};
use nested::Program;

pub use tail::{homogeneous_tail_coeff, zetastar_head2};

/// Largest depth accepted by the series engine.
pub const MAX_DEPTH: usize = 12;
/// Largest weight accepted by the series engine.
pub const MAX_WEIGHT: u32 = 16;

/// Truncated and tail-corrected values of one series.
#[derive(Clone, Debug, Serialize)]
pub struct SeriesEvaluation {
    pub index: MultiIndex,
    pub kind: SumKind,
    pub cutoff_used: u64,
    pub raw: ValueWithError,
    pub extrapolated: ValueWithError,
}

impl SeriesEvaluation {
    /// The value selected by `cfg.extrapolate`.
    pub fn selected(&self, extrapolate: bool) -> &ValueWithError {
        if extrapolate {
            &self.extrapolated
        } else {
            &self.raw
        }
    }
}

fn check_index(idx: &MultiIndex) -> Result<()> {
    if idx.depth() > MAX_DEPTH {
        return Err(Error::Domain(format!(
            "depth {} of {idx} exceeds the limit {MAX_DEPTH}",
            idx.depth()
        )));
    }
    if idx.weight() > MAX_WEIGHT {
        return Err(Error::Domain(format!(
            "weight {} of {idx} exceeds the limit {MAX_WEIGHT}",
            idx.weight()
        )));
    }
    if !idx.is_empty() && !idx.is_admissible() {
        return Err(Error::Divergent(idx.clone()));
    }
    Ok(())
}

type MemoKey = (SumKind, MultiIndex);

/// Evaluator for one precision configuration, memoizing every series value
/// it has produced.
#[derive(Debug)]
pub struct Evaluator {
    cfg: PrecisionConfig,
    memo: Mutex<HashMap<MemoKey, ValueWithError>>,
    zetas: Mutex<HashMap<i64, ValueWithError>>,
    pub(crate) euler_memo: Mutex<HashMap<GSpec, ValueWithError>>,
}

impl Evaluator {
    pub fn new(cfg: PrecisionConfig) -> Result<Self> {
        cfg.validate()?;
        Ok(Evaluator {
            cfg,
            memo: Mutex::new(HashMap::new()),
            zetas: Mutex::new(HashMap::new()),
            euler_memo: Mutex::new(HashMap::new()),
        })
    }

    pub fn config(&self) -> &PrecisionConfig {
        &self.cfg
    }

    /// Riemann zeta at an integer `s >= 2`.
    pub fn zeta(&self, s: i64) -> Result<ValueWithError> {
        if let Some(v) = self.zetas.lock().expect("zeta memo").get(&s) {
            return Ok(v.clone());
        }
        let v = riemann_zeta(s, &self.cfg)?;
        self.zetas.lock().expect("zeta memo").insert(s, v.clone());
        Ok(v)
    }

    pub fn mzv(&self, idx: &MultiIndex) -> Result<ValueWithError> {
        self.multiple(SumKind::Zeta, idx)
    }

    pub fn mzsv(&self, idx: &MultiIndex) -> Result<ValueWithError> {
        self.multiple(SumKind::ZetaStar, idx)
    }

    pub fn multiple(&self, kind: SumKind, idx: &MultiIndex) -> Result<ValueWithError> {
        Ok(self
            .batch(&[(kind, idx.clone())])?
            .pop()
            .expect("one value"))
    }

    /// Values of many series; the ones not yet known share a single sweep.
    pub fn batch(&self, items: &[(SumKind, MultiIndex)]) -> Result<Vec<ValueWithError>> {
        for (_, idx) in items {
            check_index(idx)?;
        }
        let mut missing: Vec<MemoKey> = {
            let memo = self.memo.lock().expect("series memo");
            items
                .iter()
                .filter(|key| key.1.depth() > 1 && !memo.contains_key(*key))
                .cloned()
                .collect()
        };
        missing.sort();
        missing.dedup();
        if !missing.is_empty() {
            let mut program = Program::new();
            let outputs: Vec<usize> = missing
                .iter()
                .map(|(kind, idx)| program.chain(idx.parts(), *kind).expect("nonempty"))
                .collect();
            let values = program.evaluate(&outputs, &self.cfg);
            let mut memo = self.memo.lock().expect("series memo");
            for (key, v) in missing.into_iter().zip(values) {
                let chosen = if self.cfg.extrapolate {
                    v.extrapolated
                } else {
                    v.raw
                };
                memo.insert(key, chosen);
            }
        }
        items
            .iter()
            .map(|key| match key.1.depth() {
                0 => Ok(ValueWithError::one(&self.cfg)),
                1 => self.zeta(i64::from(key.1.parts()[0])),
                _ => Ok(self.memo.lock().expect("series memo")[key].clone()),
            })
            .collect()
    }

    /// Both the truncated and the tail-corrected value, bypassing the memo.
    pub fn series(&self, kind: SumKind, idx: &MultiIndex) -> Result<SeriesEvaluation> {
        check_index(idx)?;
        let (raw, extrapolated) = match idx.depth() {
            0 => (
                ValueWithError::one(&self.cfg),
                ValueWithError::one(&self.cfg),
            ),
            _ => {
                let mut program = Program::new();
                let out = program.chain(idx.parts(), kind).expect("nonempty");
                let v = program
                    .evaluate(&[out], &self.cfg)
                    .pop()
                    .expect("one value");
                (v.raw, v.extrapolated)
            }
        };
        Ok(SeriesEvaluation {
            index: idx.clone(),
            kind,
            cutoff_used: self.cfg.cutoff,
            raw,
            extrapolated,
        })
    }

    /// `zeta*(idx)` as the sum of `zeta` over all merges of adjacent entries.
    pub fn mzsv_from_mzv(&self, idx: &MultiIndex) -> Result<ValueWithError> {
        check_index(idx)?;
        let merged = merge_patterns(idx);
        let items: Vec<_> = merged.into_iter().map(|m| (SumKind::Zeta, m)).collect();
        let values = self.batch(&items)?;
        Ok(sum_values(values, &self.cfg))
    }
}

/// All `2^(depth-1)` indices obtained by merging runs of adjacent entries.
pub fn merge_patterns(idx: &MultiIndex) -> Vec<MultiIndex> {
    let parts = idx.parts();
    if parts.is_empty() {
        return vec![MultiIndex::empty()];
    }
    let gaps = parts.len() - 1;
    (0u32..1 << gaps)
        .map(|mask| {
            let mut out = vec![parts[0]];
            for (g, &a) in parts[1..].iter().enumerate() {
                if mask >> g & 1 == 1 {
                    *out.last_mut().expect("nonempty") += a;
                } else {
                    out.push(a);
                }
            }
            MultiIndex::new(out).expect("positive parts")
        })
        .collect()
}

pub fn mzv(idx: &MultiIndex, cfg: &PrecisionConfig) -> Result<ValueWithError> {
    Evaluator::new(*cfg)?.mzv(idx)
}

pub fn mzsv(idx: &MultiIndex, cfg: &PrecisionConfig) -> Result<ValueWithError> {
    Evaluator::new(*cfg)?.mzsv(idx)
}

pub fn mzsv_from_mzv(idx: &MultiIndex, cfg: &PrecisionConfig) -> Result<ValueWithError> {
    Evaluator::new(*cfg)?.mzsv_from_mzv(idx)
}

pub fn series(kind: SumKind, idx: &MultiIndex, cfg: &PrecisionConfig) -> Result<SeriesEvaluation> {
    Evaluator::new(*cfg)?.series(kind, idx)
}
