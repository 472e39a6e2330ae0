//! Randomised invariants over indices, finite sums and the series engine.

use eulersum_core::engine::merge_patterns;
use eulersum_core::euler::GSpec;
use eulersum_core::finite::{finite_mzsv, finite_mzv};
use eulersum_core::indices::compositions;
use eulersum_core::numerics::RationalNumber;
use eulersum_core::{Evaluator, MultiIndex, PrecisionConfig};
use proptest::prelude::*;

fn index(max_depth: usize, max_part: u32) -> impl Strategy<Value = MultiIndex> {
    proptest::collection::vec(1..=max_part, 0..=max_depth).prop_map(|v| MultiIndex::new(v).unwrap())
}

proptest! {
    #[test]
    fn index_text_round_trip(i in index(8, 20)) {
        let text = i.to_string();
        prop_assert_eq!(text.parse::<MultiIndex>().unwrap(), i);
    }

    #[test]
    fn gspec_text_round_trip(n in 0u32..20, p in 0u32..20, q in 0u32..20) {
        let g = GSpec::new(n, p, q);
        prop_assert_eq!(g.to_string().parse::<GSpec>().unwrap(), g);
    }

    #[test]
    fn compositions_sum_and_are_sorted(t in 0u32..10, parts in 1usize..5, min in 0u32..2) {
        let all: Vec<Vec<u32>> = compositions(t, parts, min).map(|c| c.parts).collect();
        for c in &all {
            prop_assert_eq!(c.iter().sum::<u32>(), t);
            prop_assert_eq!(c.len(), parts);
            prop_assert!(c.iter().all(|&x| x >= min));
        }
        prop_assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn star_is_sum_over_merges(i in index(4, 3), n in 0u64..12) {
        let merged: RationalNumber = merge_patterns(&i).iter().map(|m| finite_mzv(m, n)).sum();
        prop_assert_eq!(finite_mzsv(&i, n), merged);
    }

    #[test]
    fn finite_stuffle(a in 1u32..4, b in 1u32..4, n in 0u64..15) {
        let one = |x: u32| MultiIndex::new(vec![x]).unwrap();
        let pair = |x: u32, y: u32| MultiIndex::new(vec![x, y]).unwrap();
        let lhs = &finite_mzv(&one(a), n) * &finite_mzv(&one(b), n);
        let rhs = &(&finite_mzv(&pair(a, b), n) + &finite_mzv(&pair(b, a), n)) + &finite_mzv(&one(a + b), n);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn finite_sums_grow_with_n(i in index(3, 3), n in 1u64..10) {
        prop_assert!(finite_mzv(&i, n) <= finite_mzv(&i, n + 1));
        prop_assert!(finite_mzv(&i, n) <= finite_mzsv(&i, n));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn series_star_dominates_strict(head in index(2, 3), last in 2u32..4) {
        let i = head.push(last);
        let ev = Evaluator::new(PrecisionConfig::default()).unwrap();
        let strict = ev.mzv(&i).unwrap();
        let star = ev.mzsv(&i).unwrap();
        prop_assert!(strict.to_f64() > 0.0);
        prop_assert!(star.to_f64() >= strict.to_f64());
        prop_assert!(star.distance(&ev.mzsv_from_mzv(&i).unwrap()) <= 1e-25);
    }
}
