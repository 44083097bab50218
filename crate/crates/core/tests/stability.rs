mod common;
use common::*;

use avgreg::rational::{int, rat};
use avgreg::stability::{max_ladder_exact, max_ladder_greedy, validate_ladder, LadderWitness, DEFAULT_EXACT_CAP};
use avgreg::{Error, PartiteFunction, WeightedPart};
use proptest::prelude::*;

fn half_graph(n: usize) -> PartiteFunction {
    let parts = vec![WeightedPart::uniform(n).unwrap(), WeightedPart::uniform(n).unwrap()];
    PartiteFunction::from_fn(parts, |t| if t[1] < t[0] { int(1) } else { int(0) }).unwrap()
}

#[test]
fn constant_function_has_ladder_one() {
    let parts = vec![WeightedPart::uniform(4).unwrap(), WeightedPart::uniform(4).unwrap()];
    let f = PartiteFunction::from_fn(parts, |_| rat(1, 3)).unwrap();
    assert_eq!(max_ladder_exact(&f, &rat(1, 10), DEFAULT_EXACT_CAP).unwrap().0, 1);
    assert_eq!(max_ladder_greedy(&f, &rat(1, 10), 1, 20).unwrap().0, 1);
}

#[test]
fn half_graph_has_full_ladder() {
    for n in 1..=7 {
        let f = half_graph(n);
        let (l, w) = max_ladder_exact(&f, &rat(1, 2), DEFAULT_EXACT_CAP).unwrap();
        assert_eq!(l, n);
        assert!(validate_ladder(&f, &w));
        let fixed = LadderWitness { xs: (0..n).collect(), ys: (0..n).collect(), alpha: rat(1, 4), delta: rat(1, 2) };
        assert!(validate_ladder(&f, &fixed));
    }
    let (l, w) = max_ladder_greedy(&half_graph(20), &rat(1, 2), 3, 50).unwrap();
    assert!(l >= 2 && validate_ladder(&half_graph(20), &w));
}

#[test]
fn exact_matches_oracle_on_random_functions() {
    for seed in 0..20 {
        let f = random_function(seed, 5, 5, 6);
        for delta in [rat(1, 10), rat(3, 10)] {
            let (l, w) = max_ladder_exact(&f, &delta, DEFAULT_EXACT_CAP).unwrap();
            assert_eq!(l, ladder_oracle(&f, &delta), "seed {seed} delta {delta}");
            assert!(validate_ladder(&f, &w));
        }
    }
}

#[test]
fn cap_is_enforced() {
    let f = random_function(0, DEFAULT_EXACT_CAP + 1, 2, 4);
    assert!(matches!(max_ladder_exact(&f, &rat(1, 10), DEFAULT_EXACT_CAP), Err(Error::CapExceeded { .. })));
}

#[test]
fn validator_rejects_broken_ladders() {
    let f = half_graph(3);
    let dup = LadderWitness { xs: vec![0, 0], ys: vec![0, 1], alpha: rat(1, 4), delta: rat(1, 2) };
    assert!(!validate_ladder(&f, &dup));
    let wrong = LadderWitness { xs: vec![1, 0], ys: vec![0, 1], alpha: rat(1, 4), delta: rat(1, 2) };
    assert!(!validate_ladder(&f, &wrong));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn ladder_nonincreasing_in_delta_and_greedy_below_exact(seed in 0u64..10_000) {
        let f = random_function(seed, 5, 4, 5);
        let a = max_ladder_exact(&f, &rat(1, 10), DEFAULT_EXACT_CAP).unwrap().0;
        let b = max_ladder_exact(&f, &rat(2, 5), DEFAULT_EXACT_CAP).unwrap().0;
        prop_assert!(b <= a);
        let (g, w) = max_ladder_greedy(&f, &rat(1, 10), seed, 30).unwrap();
        prop_assert!(g <= a);
        prop_assert!(validate_ladder(&f, &w));
    }
}
