//! The two-block Euler sums by their three representations.

use eulersum_core::euler::{self, composition_terms, g2_closed, GSpec};
use eulersum_core::numerics::pi;
use eulersum_core::{Error, Evaluator, MultiIndex, PrecisionConfig, ValueWithError};
use rug::Float;

fn cfg() -> PrecisionConfig {
    PrecisionConfig::default()
}

fn idx(s: &str) -> MultiIndex {
    s.parse().unwrap()
}

fn agree(a: &ValueWithError, b: &ValueWithError, rel: f64) -> bool {
    a.distance(b) <= (rel * a.abs_f64().max(b.abs_f64())).max(a.err() + b.err())
}

fn pi4_over(d: i64) -> Float {
    let bits = cfg().bits();
    let p = pi::pi(bits);
    Float::with_val(bits, &p * &p) * Float::with_val(bits, &p * &p) / d
}

#[test]
fn spec_text_round_trip() {
    let g = GSpec::new(1, 2, 3);
    assert_eq!(g.to_string(), "G(n=1,p=2,q=3)");
    assert_eq!("G(n=1,p=2,q=3)".parse::<GSpec>().unwrap(), g);
    assert_eq!("G( q=3, n=1 ,p=2 )".parse::<GSpec>().unwrap(), g);
    assert!("G(n=1,p=2)".parse::<GSpec>().is_err());
    assert!("G(n=1,p=2,q=x)".parse::<GSpec>().is_err());
    assert_eq!(g.weight(), 1 + 2 + 2 + 3);
}

#[test]
fn direct_reduces_to_single_blocks() {
    let ev = Evaluator::new(cfg()).unwrap();
    for n in 0..=2u32 {
        for k in 0..=3usize {
            let ones_then = |tail: u32| MultiIndex::repeated(1, k).push(tail);
            let strict = ev.g_direct(GSpec::new(n, k as u32, 0)).unwrap();
            let star = ev.g_direct(GSpec::new(n, 0, k as u32)).unwrap();
            assert!(
                agree(&strict, &ev.mzv(&ones_then(n + 2)).unwrap(), 0.0),
                "n={n} p={k}"
            );
            assert!(
                agree(&star, &ev.mzsv(&ones_then(n + 2)).unwrap(), 0.0),
                "n={n} q={k}"
            );
        }
    }
    let z2 = ev.zeta(2).unwrap();
    assert!(agree(&ev.g_direct(GSpec::new(0, 0, 0)).unwrap(), &z2, 0.0));
}

#[test]
fn composition_examples() {
    let ev = Evaluator::new(cfg()).unwrap();
    for n in 0..=3 {
        let g = ev.g_compositions(GSpec::new(n, 0, 0)).unwrap();
        assert!(agree(&g, &ev.zeta(i64::from(n) + 2).unwrap(), 0.0));
    }
    let terms = composition_terms(GSpec::new(0, 0, 1));
    let mut rendered: Vec<String> = terms.iter().map(|(c, i)| format!("{c}*{i}")).collect();
    rendered.sort();
    assert_eq!(rendered, vec!["1*(1,2)", "1*(3)"]);
    let z3 = ev.zeta(3).unwrap().scale(2);
    assert!(agree(
        &ev.g_compositions(GSpec::new(0, 0, 1)).unwrap(),
        &z3,
        0.0
    ));
    let z4 = ev.zeta(4).unwrap().scale(3);
    assert!(agree(
        &ev.g_compositions(GSpec::new(0, 1, 1)).unwrap(),
        &z4,
        0.0
    ));
}

#[test]
fn closed_form_examples() {
    assert_eq!(g2_closed(0, 0).to_string(), "1*zeta(2)");
    assert_eq!(g2_closed(1, 1).to_string(), "3*zeta(4)");
    assert_eq!(g2_closed(2, 1).to_string(), "4*zeta(5)");
}

#[test]
fn closed_form_family_is_honest() {
    let ev = Evaluator::new(cfg()).unwrap();
    for p in 0..=6u32 {
        for q in 0..=(6 - p) {
            let g = ev.g_direct(GSpec::new(0, p, q)).unwrap();
            let closed = g2_closed(p, q).evaluate(&ev).unwrap();
            let e = g.distance(&closed);
            assert!(
                e <= 10.0 * g.err().max(closed.err()),
                "p={p} q={q}: {e:e} vs {:e}",
                g.err()
            );
            assert!(agree(&g, &closed, 1e-6));
        }
    }
}

#[test]
fn three_routes_agree() {
    let ev = Evaluator::new(cfg()).unwrap();
    for n in 0..=3u32 {
        for p in 0..=(3 - n) {
            for q in 0..=(3 - n - p) {
                let s = GSpec::new(n, p, q);
                let direct = ev.g_direct(s).unwrap();
                let comp = ev.g_compositions(s).unwrap();
                assert!(agree(&direct, &comp, 1e-6), "{s}");
                if n + p + q <= 2 {
                    let quad = ev.g_quad(s).unwrap();
                    assert!(agree(&direct, &quad, 1e-4), "{s}: quad {}", quad.to_f64());
                }
            }
        }
    }
}

#[test]
fn quadrature_examples() {
    let ev = Evaluator::new(cfg()).unwrap();
    let z2 = ev.zeta(2).unwrap();
    assert!(agree(&ev.g_quad(GSpec::new(0, 0, 0)).unwrap(), &z2, 1e-10));
    let z3 = ev.zeta(3).unwrap();
    assert!(agree(&ev.g_quad(GSpec::new(0, 1, 0)).unwrap(), &z3, 1e-10));
    let star13 = ValueWithError::exact(pi4_over(72));
    assert!(agree(
        &ev.g_quad(GSpec::new(1, 0, 1)).unwrap(),
        &star13,
        1e-10
    ));
    assert!(matches!(
        euler::g_quad(GSpec::new(4, 4, 3), &cfg()),
        Err(Error::Domain(_))
    ));
}

#[test]
fn reflection_examples() {
    let ev = Evaluator::new(cfg()).unwrap();
    for (p, q, k) in [(1, 1, 0), (1, 2, 0), (2, 1, 1), (3, 3, 2)] {
        let r = ev.reflection_residual(p, q, k).unwrap();
        assert!(
            r.abs_f64() <= r.err().max(1e-25),
            "p={p} q={q} k={k}: {:e}",
            r.to_f64()
        );
    }
    assert!(ev.reflection_residual(0, 1, 0).is_err());
    // 2 G_3(0,1) = zeta(2)^2 gives zeta*(1,3) = pi^4/72
    let star13 = ev.mzsv(&idx("(1,3)")).unwrap();
    let exact = ValueWithError::exact(pi4_over(72));
    assert!(agree(&star13, &exact, 0.0));
}

#[test]
fn star_ones_examples() {
    let ev = Evaluator::new(cfg()).unwrap();
    let v = ev.zetastar_ones(2, 0).unwrap();
    assert!(agree(&v, &ev.zeta(4).unwrap().scale(3), 0.0));
    for n in 0..=3 {
        assert!(agree(
            &ev.zetastar_ones(0, n).unwrap(),
            &ev.zeta(i64::from(n) + 2).unwrap(),
            0.0
        ));
    }
    let exact = ValueWithError::exact(pi4_over(72));
    assert!(agree(&ev.zetastar_ones(1, 1).unwrap(), &exact, 0.0));
}

#[test]
fn batch_direct_matches_single() {
    let ev = Evaluator::new(cfg()).unwrap();
    let specs = [
        GSpec::new(1, 1, 1),
        GSpec::new(0, 2, 2),
        GSpec::new(2, 0, 1),
    ];
    let batch = ev.g_direct_batch(&specs).unwrap();
    let fresh = Evaluator::new(cfg()).unwrap();
    for (s, b) in specs.iter().zip(&batch) {
        assert!(agree(b, &fresh.g_direct(*s).unwrap(), 0.0), "{s}");
    }
}
