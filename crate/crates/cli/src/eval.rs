//! `eval`: one value per expression, through the cache.

use std::process::ExitCode;
use std::time::Instant;

use eulersum_core::finite::finite_value;
use eulersum_core::{Evaluator, MultiIndex, PrecisionConfig, SumKind, ValueWithError};
use serde::Serialize;

use crate::cache::{Cache, CacheRecord, SCHEMA_VERSION};
use crate::expr::{parse, Expression};
use crate::{Failure, GlobalArgs};

#[derive(Serialize)]
struct Output<'a> {
    expr: &'a str,
    value: &'a str,
    err: &'a str,
    digits: u32,
    cutoff: u64,
    cached: bool,
}

fn compute(expr: &Expression, ev: &Evaluator) -> Result<ValueWithError, Failure> {
    let cfg = ev.config();
    Ok(match expr {
        Expression::Series { kind, index } => ev.multiple(*kind, index)?,
        Expression::Finite { kind, n, index } => finite_value(index, *n, *kind, cfg).to_value(cfg),
        Expression::Harmonic { n, s } => {
            let single = MultiIndex::new(vec![*s])?;
            finite_value(&single, *n, SumKind::Zeta, cfg).to_value(cfg)
        }
        Expression::G(spec) => ev.g_direct(*spec)?,
    })
}

pub fn run(exprs: &[String], cfg: &PrecisionConfig, g: &GlobalArgs) -> Result<ExitCode, Failure> {
    let parsed = exprs
        .iter()
        .map(|e| parse(e).map_err(|err| Failure::Usage(err.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    let mut cache = (!g.no_cache).then(|| Cache::load(&g.cache));
    if let Some(c) = &cache {
        for w in &c.warnings {
            eprintln!("warning: {w}");
        }
        if g.verbose {
            eprintln!("cache {}: {} records", g.cache.display(), c.len());
        }
    }
    let ev = Evaluator::new(*cfg)?;
    for expr in &parsed {
        let text = expr.to_string();
        let start = Instant::now();
        let hit = cache
            .as_ref()
            .and_then(|c| c.lookup(&text, cfg.digits, cfg.cutoff, cfg.extrapolate))
            .cloned();
        let cached = hit.is_some();
        let record = match hit {
            Some(r) => r,
            None => {
                let v = compute(expr, &ev)?;
                let record = CacheRecord {
                    version: SCHEMA_VERSION,
                    expr: text.clone(),
                    digits: cfg.digits,
                    cutoff: cfg.cutoff,
                    extrapolate: cfg.extrapolate,
                    value: v.value_string(cfg.digits),
                    err: v.err_string(),
                };
                if let Some(c) = cache.as_mut() {
                    if let Err(e) = c.store(record.clone()) {
                        eprintln!("warning: cannot write cache {}: {e}", g.cache.display());
                    }
                }
                record
            }
        };
        if g.verbose {
            let how = if cached { "cache hit" } else { "computed" };
            eprintln!(
                "{how}: {text} in {:.3} ms",
                start.elapsed().as_secs_f64() * 1e3
            );
        }
        if g.json {
            let out = Output {
                expr: &text,
                value: &record.value,
                err: &record.err,
                digits: cfg.digits,
                cutoff: cfg.cutoff,
                cached,
            };
            outln!(
                "{}",
                serde_json::to_string(&out).map_err(|e| Failure::Runtime(e.to_string()))?
            );
        } else {
            outln!("{text} = {} +/- {}", record.value, record.err);
        }
    }
    Ok(ExitCode::SUCCESS)
}
