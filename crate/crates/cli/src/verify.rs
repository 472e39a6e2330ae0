//! `verify` and `list`.

use std::collections::BTreeSet;
use std::process::ExitCode;

use eulersum_core::identities::{
    catalog, lookup, run_jobs, select, IdentityDef, Params, RunOptions,
};
use eulersum_core::{Evaluator, PrecisionConfig};
use serde::Serialize;

use crate::range::ValueRange;
use crate::{Failure, GlobalArgs};

pub enum Selection {
    One(String),
    Filter(String),
    All,
}

fn param_names() -> BTreeSet<&'static str> {
    catalog()
        .iter()
        .flat_map(|d| d.params.iter().map(|p| p.name))
        .collect()
}

/// Pull `--<param> <values>` pairs following the `verify` subcommand out of
/// the argument list, so identity parameters need not be known to the
/// argument parser.
pub fn split_params(args: Vec<String>) -> (Vec<String>, Vec<(String, String)>) {
    let Some(start) = args.iter().position(|a| a == "verify") else {
        return (args, Vec::new());
    };
    let names = param_names();
    let mut kept: Vec<String> = args[..=start].to_vec();
    let mut params = Vec::new();
    let mut rest = args[start + 1..].iter();
    while let Some(arg) = rest.next() {
        let Some(flag) = arg.strip_prefix("--") else {
            kept.push(arg.clone());
            continue;
        };
        let (name, inline) = match flag.split_once('=') {
            Some((n, v)) => (n, Some(v.to_string())),
            None => (flag, None),
        };
        if !names.contains(name) {
            kept.push(arg.clone());
            continue;
        }
        match inline.or_else(|| rest.next().cloned()) {
            Some(v) => params.push((name.to_string(), v)),
            // missing value: leave it for the parser to reject
            None => kept.push(arg.clone()),
        }
    }
    (kept, params)
}

fn jobs_for(def: &'static IdentityDef, given: &[(String, String)]) -> Result<Vec<Params>, Failure> {
    let mut ranges: Vec<(&str, ValueRange)> = Vec::new();
    for (name, text) in given {
        let spec = def
            .params
            .iter()
            .find(|p| p.name == name)
            .ok_or_else(|| Failure::Usage(format!("`{}` has no parameter `{name}`", def.id)))?;
        let values: ValueRange = text
            .parse()
            .map_err(|e| Failure::Usage(format!("--{name}: {e}")))?;
        if ranges.iter().any(|(n, _)| *n == spec.name) {
            return Err(Failure::Usage(format!("--{name} given twice")));
        }
        ranges.push((spec.name, values));
    }
    let grid: Vec<Params> = if ranges.len() == def.params.len() {
        let mut grid = vec![Params::new()];
        for p in def.params {
            let values = &ranges
                .iter()
                .find(|(n, _)| *n == p.name)
                .expect("all given")
                .1;
            grid = grid
                .into_iter()
                .flat_map(|base| {
                    values.values().iter().map(move |&v| {
                        let mut next = base.clone();
                        next.set(p.name, v);
                        next
                    })
                })
                .collect();
        }
        grid
    } else {
        let grid: Vec<Params> = def
            .default_grid()
            .into_iter()
            .filter(|ps| {
                ranges
                    .iter()
                    .all(|(n, r)| ps.get(n).is_some_and(|v| r.values().contains(&v)))
            })
            .collect();
        if grid.is_empty() {
            return Err(Failure::Usage(format!(
                "no default-grid instance of `{}` matches; give every parameter to go beyond it",
                def.id
            )));
        }
        grid
    };
    for ps in &grid {
        def.instance(ps)?;
    }
    Ok(grid)
}

#[derive(Serialize)]
struct Summary {
    summary: eulersum_core::identities::SuiteSummary,
}

pub fn run(
    selection: Selection,
    given: &[(String, String)],
    cfg: &PrecisionConfig,
    g: &GlobalArgs,
) -> Result<ExitCode, Failure> {
    let defs: Vec<&'static IdentityDef> = match &selection {
        Selection::One(id) => vec![lookup(id)?],
        Selection::Filter(f) => select(Some(f)),
        Selection::All => select(None),
    };
    if defs.is_empty() {
        return Err(Failure::Usage("no identity matches the filter".into()));
    }
    if !given.is_empty() && !matches!(selection, Selection::One(_)) {
        return Err(Failure::Usage(
            "parameters need a single identity id".into(),
        ));
    }
    let mut jobs: Vec<(&IdentityDef, Params)> = Vec::new();
    for def in defs {
        let grid = if given.is_empty() {
            def.default_grid()
        } else {
            jobs_for(def, given)?
        };
        jobs.extend(grid.into_iter().map(|p| (def, p)));
    }
    let ev = Evaluator::new(*cfg)?;
    let run = run_jobs(&ev, &jobs, RunOptions { tol: g.tol })?;
    for r in &run.reports {
        if g.json {
            outln!(
                "{}",
                serde_json::to_string(r).map_err(|e| Failure::Runtime(e.to_string()))?
            );
        } else {
            outln!("{}", r.line());
        }
        if g.verbose {
            eprintln!(
                "{} [{}] {:.1} ms",
                r.id,
                r.params,
                r.elapsed.as_secs_f64() * 1e3
            );
        }
    }
    if g.json {
        let s = Summary {
            summary: run.summary,
        };
        outln!(
            "{}",
            serde_json::to_string(&s).map_err(|e| Failure::Runtime(e.to_string()))?
        );
    } else {
        outln!("{}", run.summary);
    }
    Ok(if run.summary.failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(crate::EXIT_FAIL)
    })
}

#[derive(Serialize)]
struct Listing<'a> {
    id: &'a str,
    params: Vec<String>,
    tol: f64,
    instances: usize,
    description: &'a str,
}

pub fn list(json: bool) {
    for d in catalog() {
        let params: Vec<String> = d
            .params
            .iter()
            .map(|p| format!("{}={}..{}", p.name, p.min, p.max))
            .collect();
        let instances = d.default_grid().len();
        if json {
            let l = Listing {
                id: d.id,
                params,
                tol: d.tol,
                instances,
                description: d.description,
            };
            outln!("{}", serde_json::to_string(&l).expect("plain data"));
        } else {
            outln!(
                "{:<14} {:<34} {:>3}  {}",
                d.id,
                params.join(" "),
                instances,
                d.description
            );
        }
    }
}
