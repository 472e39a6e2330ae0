//! Identity catalog: lookups, parameter validation, reports and suite runs.

use eulersum_core::identities::{
    catalog, formulas, lookup, matches_pattern, run_identity, run_suite, select, thm53_rhs,
    zetastar_head_eval, Params,
};
use eulersum_core::numerics::pi;
use eulersum_core::{Error, Evaluator, MultiIndex, PrecisionConfig, ValueWithError};
use rug::Float;

fn cfg() -> PrecisionConfig {
    PrecisionConfig::default()
}

fn params(pairs: &[(&str, u32)]) -> Params {
    Params::from_pairs(pairs.iter().copied())
}

fn near(a: &ValueWithError, b: &ValueWithError) -> bool {
    a.distance(b) <= (a.err() + b.err()).max(1e-25)
}

#[test]
fn catalog_shape() {
    let ids: Vec<&str> = catalog().iter().map(|d| d.id).collect();
    assert!(ids.len() >= 22);
    let mut unique = ids.clone();
    unique.sort();
    unique.dedup();
    assert_eq!(unique.len(), ids.len());
    for d in catalog() {
        assert!(!d.default_grid().is_empty(), "{}", d.id);
        assert!(!d.description.is_empty());
        for p in d.default_grid() {
            d.instance(&p)
                .unwrap_or_else(|e| panic!("{} [{p}]: {e}", d.id));
        }
    }
    for id in [
        "prop2.5",
        "thm2.2-equiv",
        "cor2.3",
        "prop2.4",
        "easy-ones",
        "prop3.1",
        "thm3.2",
        "prop3.3",
        "prop4.1",
        "prop4.2",
        "prop4.3",
        "prop4.4",
        "aoki-ohno",
        "zetastar-2s",
        "prop5.1",
        "prop5.2",
        "thm5.3",
        "eq6.1",
        "sec6-r0",
        "sec6-r1",
        "sec6-r2",
        "duality-ones",
    ] {
        assert!(lookup(id).is_ok(), "{id}");
    }
}

#[test]
fn run_identity_examples() {
    let c = cfg();
    let ev = Evaluator::new(c).unwrap();
    let r = run_identity("eq6.1", &params(&[("n", 0)]), &c).unwrap();
    assert!(r.pass, "{}", r.line());
    let z3 = ev.zeta(3).unwrap().scale(3);
    assert!(near(r.lhs.as_ref().unwrap(), &z3));

    let r = run_identity("prop4.2", &params(&[("n", 2)]), &c).unwrap();
    assert!(r.pass, "{}", r.line());
    let bits = c.bits();
    let p = pi::pi(bits);
    let p4 = Float::with_val(bits, &p * &p) * Float::with_val(bits, &p * &p);
    assert!(near(
        r.rhs.as_ref().unwrap(),
        &ValueWithError::exact(p4 * 7 / 360)
    ));

    let r = run_identity("prop5.1", &params(&[("n", 0)]), &c).unwrap();
    assert!(r.pass, "{}", r.line());
    let three_z4 = ev.zeta(4).unwrap().scale(3);
    assert!(near(r.lhs.as_ref().unwrap(), &three_z4));
    assert!(near(r.rhs.as_ref().unwrap(), &three_z4));
}

#[test]
fn parameter_errors() {
    let c = cfg();
    assert!(matches!(
        run_identity("bogus", &Params::new(), &c),
        Err(Error::UnknownIdentity(_))
    ));
    assert!(matches!(
        run_identity("eq6.1", &params(&[("n", 99)]), &c),
        Err(Error::ParamOutOfRange { .. })
    ));
    assert!(matches!(
        run_identity("eq6.1", &Params::new(), &c),
        Err(Error::InvalidParams { .. })
    ));
    assert!(matches!(
        run_identity("eq6.1", &params(&[("n", 1), ("x", 0)]), &c),
        Err(Error::InvalidParams { .. })
    ));
}

#[test]
fn five_three_examples() {
    let c = cfg();
    let ev = Evaluator::new(c).unwrap();
    assert!(near(
        &thm53_rhs(0, &c).unwrap(),
        &ev.zeta(4).unwrap().scale(4)
    ));
    assert_eq!(formulas::composition_weight(&[1, 0]), 4);
    assert_eq!(formulas::composition_weight(&[0, 1]), 2);
    let idx = |s: &str| s.parse::<MultiIndex>().unwrap();
    let expect = &(&ev.zeta(6).unwrap().scale(20) - &ev.mzv(&idx("(4,2)")).unwrap().scale(4))
        - &ev.mzv(&idx("(3,3)")).unwrap().scale(2);
    assert!(near(&thm53_rhs(1, &c).unwrap(), &expect));
}

#[test]
fn head_evaluation_examples() {
    let c = cfg();
    let ev = Evaluator::new(c).unwrap();
    let star22 = ev.mzsv(&"(2,2)".parse().unwrap()).unwrap();
    assert!(near(&zetastar_head_eval(0, 1, &c).unwrap(), &star22));
    assert!(near(
        &zetastar_head_eval(1, 0, &c).unwrap(),
        &ev.zeta(3).unwrap()
    ));
    assert!(near(
        &zetastar_head_eval(2, 0, &c).unwrap(),
        &ev.zeta(4).unwrap()
    ));
    assert!(zetastar_head_eval(3, 0, &c).is_err());
}

#[test]
fn pattern_selection() {
    assert!(matches_pattern("prop2.*", "prop2.4"));
    assert!(matches_pattern("sec6-r?", "sec6-r1"));
    assert!(!matches_pattern("prop2.*", "prop3.1"));
    let ids: Vec<&str> = select(Some("prop2.*")).iter().map(|d| d.id).collect();
    assert_eq!(ids, vec!["prop2.5", "prop2.4"]);
    assert!(select(Some("nonexistent")).is_empty());
    assert_eq!(select(None).len(), catalog().len());
}

#[test]
fn filtered_suite_passes_and_is_deterministic() {
    let c = cfg();
    let a = run_suite(Some("prop2.*"), &c).unwrap();
    assert!(a.summary.total > 0);
    assert_eq!(
        a.summary.failed,
        0,
        "{:?}",
        a.reports
            .iter()
            .filter(|r| !r.pass)
            .map(|r| r.line())
            .collect::<Vec<_>>()
    );
    let ids: Vec<&str> = a.reports.iter().map(|r| r.id.as_str()).collect();
    assert!(ids.contains(&"prop2.4") && ids.contains(&"prop2.5"));
    let mut sorted = a
        .reports
        .iter()
        .map(|r| (r.id.clone(), r.params.clone()))
        .collect::<Vec<_>>();
    sorted.sort();
    assert_eq!(
        sorted,
        a.reports
            .iter()
            .map(|r| (r.id.clone(), r.params.clone()))
            .collect::<Vec<_>>()
    );
    let b = run_suite(Some("prop2.*"), &c).unwrap();
    let lines = |r: &eulersum_core::identities::SuiteRun| {
        r.reports.iter().map(|x| x.line()).collect::<Vec<_>>()
    };
    assert_eq!(lines(&a), lines(&b));
    assert!(run_suite(Some("nonexistent"), &c)
        .unwrap()
        .reports
        .is_empty());
}

#[test]
fn report_json_schema() {
    let r = run_identity("prop2.5", &params(&[("p", 1), ("q", 1)]), &cfg()).unwrap();
    let v: serde_json::Value = serde_json::to_value(&r).unwrap();
    for key in [
        "id",
        "params",
        "lhs",
        "rhs",
        "residual",
        "tol",
        "pass",
        "elapsed_ms",
    ] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["id"], "prop2.5");
    assert_eq!(v["params"]["p"], 1);
    assert_eq!(v["pass"], true);
    let lhs = v["lhs"]["value"].as_str().unwrap();
    assert!(lhs.starts_with("3.2469697011"), "{lhs}");
    assert!(v.get("error").is_none());
}

#[test]
fn acceptance_bound_rule() {
    use eulersum_core::identities::acceptance_bound;
    let c = cfg();
    let a = ValueWithError::new(Float::with_val(c.bits(), 2.0), 1e-9);
    let b = ValueWithError::new(Float::with_val(c.bits(), -4.0), 1e-8);
    assert_eq!(acceptance_bound(&a, &b, 1e-6, None), 4e-6);
    assert_eq!(acceptance_bound(&a, &b, 0.0, None), 1e-9 + 1e-8);
    assert_eq!(acceptance_bound(&a, &b, 0.0, Some(1e-4)), 1e-4);
}
