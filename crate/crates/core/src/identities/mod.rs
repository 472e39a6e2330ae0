//! Catalog of identities between Euler sums, multiple zeta(-star) values and
//! integrals, with runners producing pass/fail reports.

mod catalog;
pub mod expr;
pub mod formulas;

use std::fmt;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

pub use catalog::{catalog, lookup, IdentityDef, ParamSpec, QUAD_TOL, SERIES_TOL};
pub use expr::{evaluate_all, Atom, Expr, Term};

use crate::engine::Evaluator;
use crate::error::Result;
use crate::numerics::{PrecisionConfig, ValueWithError};

/// Named integer parameters, kept in declaration order.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Params(Vec<(String, u32)>);

impl Params {
    pub fn new() -> Self {
        Params::default()
    }

    pub fn from_pairs<'a>(pairs: impl IntoIterator<Item = (&'a str, u32)>) -> Self {
        let mut p = Params::new();
        for (k, v) in pairs {
            p.set(k, v);
        }
        p
    }

    /// Insert or overwrite a binding.
    pub fn set(&mut self, name: &str, value: u32) {
        match self.0.iter_mut().find(|(k, _)| k == name) {
            Some(slot) => slot.1 = value,
            None => self.0.push((name.to_string(), value)),
        }
    }

    pub fn get(&self, name: &str) -> Option<u32> {
        self.0.iter().find(|(k, _)| k == name).map(|&(_, v)| v)
    }

    /// Value of a parameter already validated to be present.
    pub(crate) fn value(&self, name: &str) -> u32 {
        self.get(name)
            .unwrap_or_else(|| panic!("parameter `{name}` missing"))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, u32)> {
        self.0.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|(k, v)| format!("{k}={v}")).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl Serialize for Params {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

/// Both sides of one identity instance and its tolerances.
#[derive(Clone, Debug)]
pub struct Instance {
    pub lhs: Expr,
    pub rhs: Expr,
    /// Relative tolerance.
    pub tol: f64,
    /// Absolute tolerance used when the expected value is exactly zero.
    pub zero_tol: Option<f64>,
}

impl Instance {
    pub fn new(lhs: Expr, rhs: Expr, tol: f64) -> Self {
        Instance {
            lhs,
            rhs,
            tol,
            zero_tol: None,
        }
    }

    pub fn with_zero_tol(mut self, tol: f64) -> Self {
        self.zero_tol = Some(tol);
        self
    }
}

/// Outcome of checking one identity instance.
#[derive(Clone, Debug)]
pub struct IdentityReport {
    pub id: String,
    pub params: Params,
    pub lhs: Option<ValueWithError>,
    pub rhs: Option<ValueWithError>,
    /// `|lhs - rhs|`; infinite when evaluation failed.
    pub residual: f64,
    pub tol: f64,
    /// The bound the residual was compared against.
    pub bound: f64,
    pub pass: bool,
    pub elapsed: Duration,
    /// Cause of an evaluation failure.
    pub error: Option<String>,
}

/// Digits shown for report values.
pub const REPORT_DIGITS: u32 = 20;

impl IdentityReport {
    /// One deterministic line (no timing).
    pub fn line(&self) -> String {
        let status = if self.pass { "PASS" } else { "FAIL" };
        let head = format!("{status} {} [{}]", self.id, self.params);
        match (&self.lhs, &self.rhs, &self.error) {
            (Some(l), Some(r), None) => format!(
                "{head} lhs={} rhs={} residual={:.3e} bound={:.3e}",
                l.value_string(REPORT_DIGITS),
                r.value_string(REPORT_DIGITS),
                self.residual,
                self.bound
            ),
            (_, _, Some(e)) => format!("{head} error: {e}"),
            _ => head,
        }
    }
}

impl Serialize for IdentityReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("IdentityReport", 9)?;
        st.serialize_field("id", &self.id)?;
        st.serialize_field("params", &self.params)?;
        st.serialize_field("lhs", &self.lhs)?;
        st.serialize_field("rhs", &self.rhs)?;
        st.serialize_field("residual", &format!("{:.3e}", self.residual))?;
        st.serialize_field("tol", &format!("{:.3e}", self.tol))?;
        st.serialize_field("pass", &self.pass)?;
        st.serialize_field("elapsed_ms", &self.elapsed.as_millis().to_string())?;
        if let Some(e) = &self.error {
            st.serialize_field("error", e)?;
        }
        st.end()
    }
}

/// `pass <=> |lhs - rhs| <= max(tol * max(|lhs|, |rhs|), lhs.err + rhs.err)`,
/// widened to `zero_tol` for instances whose expected value is zero.
pub fn acceptance_bound(
    lhs: &ValueWithError,
    rhs: &ValueWithError,
    tol: f64,
    zero_tol: Option<f64>,
) -> f64 {
    let relative = tol * lhs.abs_f64().max(rhs.abs_f64());
    relative
        .max(lhs.err() + rhs.err())
        .max(zero_tol.unwrap_or(0.0))
}

/// Options shared by single runs and suite runs.
#[derive(Clone, Copy, Debug, Default)]
pub struct RunOptions {
    /// Overrides every default tolerance.
    pub tol: Option<f64>,
}

/// Evaluate one instance with a shared evaluator.
pub fn run_instance(
    ev: &Evaluator,
    def: &IdentityDef,
    params: &Params,
    opts: RunOptions,
) -> Result<IdentityReport> {
    let inst = def.instance(params)?;
    let tol = opts.tol.unwrap_or(inst.tol);
    let zero_tol = inst.zero_tol.map(|z| opts.tol.unwrap_or(z));
    let start = Instant::now();
    let outcome = evaluate_all(&[&inst.lhs, &inst.rhs], ev);
    let elapsed = start.elapsed();
    let report = match outcome {
        Ok(mut values) => {
            let rhs = values.pop().expect("two values");
            let lhs = values.pop().expect("two values");
            let residual = lhs.distance(&rhs);
            let bound = acceptance_bound(&lhs, &rhs, tol, zero_tol);
            IdentityReport {
                id: def.id.to_string(),
                params: params.clone(),
                pass: residual <= bound,
                lhs: Some(lhs),
                rhs: Some(rhs),
                residual,
                tol,
                bound,
                elapsed,
                error: None,
            }
        }
        Err(e) => IdentityReport {
            id: def.id.to_string(),
            params: params.clone(),
            lhs: None,
            rhs: None,
            residual: f64::INFINITY,
            tol,
            bound: 0.0,
            pass: false,
            elapsed,
            error: Some(e.to_string()),
        },
    };
    Ok(report)
}

/// Check one identity instance.
///
/// Unknown ids and out-of-range parameters are errors; failures while
/// evaluating are recorded in the report.
pub fn run_identity(id: &str, params: &Params, cfg: &PrecisionConfig) -> Result<IdentityReport> {
    let ev = Evaluator::new(*cfg)?;
    run_instance(&ev, lookup(id)?, params, RunOptions::default())
}

/// Counts over a suite run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SuiteSummary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

impl SuiteSummary {
    pub fn of(reports: &[IdentityReport]) -> Self {
        let passed = reports.iter().filter(|r| r.pass).count();
        SuiteSummary {
            total: reports.len(),
            passed,
            failed: reports.len() - passed,
        }
    }
}

impl fmt::Display for SuiteSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} instances: {} passed, {} failed",
            self.total, self.passed, self.failed
        )
    }
}

/// Reports of a suite run plus summary counts.
#[derive(Clone, Debug)]
pub struct SuiteRun {
    pub reports: Vec<IdentityReport>,
    pub summary: SuiteSummary,
}

/// Glob match supporting `*` and `?`.
pub fn matches_pattern(pattern: &str, text: &str) -> bool {
    fn go(p: &[char], t: &[char]) -> bool {
        match p.split_first() {
            None => t.is_empty(),
            Some(('*', rest)) => (0..=t.len()).any(|i| go(rest, &t[i..])),
            Some(('?', rest)) => !t.is_empty() && go(rest, &t[1..]),
            Some((c, rest)) => t.first() == Some(c) && go(rest, &t[1..]),
        }
    }
    let p: Vec<char> = pattern.chars().collect();
    let t: Vec<char> = text.chars().collect();
    go(&p, &t)
}

/// Definitions whose id matches the optional glob pattern.
pub fn select(filter: Option<&str>) -> Vec<&'static IdentityDef> {
    catalog()
        .iter()
        .filter(|d| filter.is_none_or(|f| matches_pattern(f, d.id)))
        .collect()
}

/// Run every selected identity over its default grid.
pub fn run_suite(filter: Option<&str>, cfg: &PrecisionConfig) -> Result<SuiteRun> {
    let ev = Evaluator::new(*cfg)?;
    let jobs: Vec<(&IdentityDef, Params)> = select(filter)
        .into_iter()
        .flat_map(|d| d.default_grid().into_iter().map(move |p| (d, p)))
        .collect();
    run_jobs(&ev, &jobs, RunOptions::default())
}

/// Run explicit instances concurrently; reports come back ordered by
/// `(id, params)` whatever the scheduling.
pub fn run_jobs(
    ev: &Evaluator,
    jobs: &[(&IdentityDef, Params)],
    opts: RunOptions,
) -> Result<SuiteRun> {
    let mut reports = jobs
        .par_iter()
        .map(|(d, p)| run_instance(ev, d, p, opts))
        .collect::<Result<Vec<_>>>()?;
    reports.sort_by(|a, b| (&a.id, &a.params).cmp(&(&b.id, &b.params)));
    let summary = SuiteSummary::of(&reports);
    Ok(SuiteRun { reports, summary })
}

/// `C(2n+4, 3) zeta(2n+4) + sum_j (-1)^j sum_c W(c) zeta(c_0+3, c_1+2, ..., c_j+2)`.
pub fn thm53_rhs(n: u32, cfg: &PrecisionConfig) -> Result<ValueWithError> {
    formulas::thm53_rhs(n).evaluate(&Evaluator::new(*cfg)?)
}

/// `zeta*(r+2, {2}^n)` for `r <= 2` assembled from lower-depth values.
pub fn zetastar_head_eval(r: u32, n: u32, cfg: &PrecisionConfig) -> Result<ValueWithError> {
    if r > 2 {
        return Err(crate::error::Error::Domain(format!(
            "r must be at most 2, got {r}"
        )));
    }
    formulas::zetastar_head_expr(r, n).evaluate(&Evaluator::new(*cfg)?)
}
