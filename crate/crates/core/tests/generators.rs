mod common;
use common::*;

use avgreg::generators::average::parity_edge_count;
use avgreg::generators::corollary::{pipeline_value, validate_decomposition, Combiner};
use avgreg::generators::ternary::all_sequences;
use avgreg::generators::{
    discretize_function_family, eval_average, gen_gs_instance, gen_halfsimplex_grid, gen_parity_system,
    gen_random_average, gen_random_bipartite, grid_points, gs_edge, halfsimplex_edge, level_set_decompose,
    AverageSystem, FunctionFamily,
};
use avgreg::hypergraph::BipartiteGraph;
use avgreg::rational::{int, rat};
use avgreg::{Rational, WeightedPart};
use fixedbitset::FixedBitSet;
use proptest::prelude::*;

fn set(n: usize, m: &[usize]) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(n);
    m.iter().for_each(|&i| s.insert(i));
    s
}

fn omega2() -> WeightedPart {
    WeightedPart::uniform_labeled(vec!["a".into(), "b".into()]).unwrap()
}

#[test]
fn gs_edge_examples() {
    assert!(gs_edge(3, &[1, 0], &[0, 0], &[0, 0]).unwrap());
    assert!(!gs_edge(3, &[0], &[0], &[0]).unwrap());
    assert!(gs_edge(3, &[0, 1], &[0, 1], &[0, 2]).unwrap());
    assert!(gs_edge(3, &[0], &[0, 1], &[0]).is_err());
}

#[test]
fn gs_instances_match_naive_rule() {
    for n in 1..=2 {
        let inst = gen_gs_instance(3, n, None, None).unwrap();
        assert_eq!(inst.sizes(), [3usize.pow(n as u32); 3]);
        let h = inst.to_hypergraph();
        for x in 0..inst.sizes()[0] {
            for y in 0..inst.sizes()[1] {
                for z in 0..inst.sizes()[2] {
                    let (a, b, c) = (&inst.part(0).seqs[x], &inst.part(1).seqs[y], &inst.part(2).seqs[z]);
                    assert_eq!(h.is_edge(x, y, z), naive_gs(3, a, b, c));
                }
            }
        }
    }
    let empty = gen_gs_instance(3, 2, Some([vec![], vec![], vec![]]), None).unwrap();
    assert_eq!(empty.triple_count(), 0);
}

#[test]
fn gs_parts_of_depth_two_have_nine_elements() {
    let inst = gen_gs_instance(3, 2, None, None).unwrap();
    for u in 0..3 {
        assert!(inst.part(u).seqs.contains(&vec![0, 0]) && inst.part(u).seqs.contains(&vec![0, 2]));
    }
    assert_eq!(inst.triple_count(), 729);
}

#[test]
fn halfsimplex_edge_examples() {
    assert!(!halfsimplex_edge(&rat(1, 2), &rat(3, 10), &rat(1, 10)).unwrap());
    assert!(halfsimplex_edge(&int(1), &int(1), &int(1)).unwrap());
    assert!(halfsimplex_edge(&rat(1, 3), &rat(1, 3), &rat(1, 3)).unwrap());
    assert!(halfsimplex_edge(&rat(3, 2), &int(0), &int(0)).is_err());
}

#[test]
fn halfsimplex_grid_is_upward_closed() {
    let pts = grid_points(5);
    let h = gen_halfsimplex_grid([&pts, &pts, &pts]).unwrap();
    let m = pts.len();
    for x in 0..m {
        for y in 0..m {
            for z in 0..m {
                if h.is_edge(x, y, z) {
                    if x + 1 < m {
                        assert!(h.is_edge(x + 1, y, z));
                    }
                    if y + 1 < m {
                        assert!(h.is_edge(x, y + 1, z));
                    }
                    if z + 1 < m {
                        assert!(h.is_edge(x, y, z + 1));
                    }
                }
            }
        }
    }
}

#[test]
fn eval_average_examples() {
    let parts = vec![WeightedPart::uniform(1).unwrap(), WeightedPart::uniform(1).unwrap()];
    let sys = AverageSystem::new(1, parts.clone(), omega2(), vec![vec![set(2, &[0])], vec![set(2, &[0, 1])]]).unwrap();
    assert_eq!(eval_average(&sys, &[0, 0]).unwrap(), rat(1, 2));
    let full = AverageSystem::new(1, parts.clone(), omega2(), vec![vec![set(2, &[0, 1])], vec![set(2, &[0, 1])]]).unwrap();
    assert_eq!(eval_average(&full, &[0, 0]).unwrap(), int(1));
    let empty = AverageSystem::new(1, parts, omega2(), vec![vec![set(2, &[])], vec![set(2, &[0, 1])]]).unwrap();
    assert_eq!(eval_average(&empty, &[0, 0]).unwrap(), int(0));
    assert!(eval_average(&sys, &[0, 3]).is_err());
}

#[test]
fn parity_encoding_examples() {
    let parts = [0, 1, 2].map(|_| WeightedPart::uniform(1).unwrap());
    let on = BipartiteGraph::from_fn(1, 1, |_, _| true);
    let off = BipartiteGraph::from_fn(1, 1, |_, _| false);
    let three = gen_parity_system(parts.clone(), [&on, &on, &on]).unwrap();
    assert_eq!(eval_average(&three, &[0, 0, 0]).unwrap(), rat(1, 4));
    let two = gen_parity_system(parts.clone(), [&on, &on, &off]).unwrap();
    assert_eq!(eval_average(&two, &[0, 0, 0]).unwrap(), int(0));
    let none = gen_parity_system(parts, [&off, &off, &off]).unwrap();
    assert_eq!(eval_average(&none, &[0, 0, 0]).unwrap(), int(0));
}

#[test]
fn random_average_extremes_and_determinism() {
    let zero = gen_random_average(3, &[3, 2, 2], 2, 4, &int(0)).unwrap();
    let one = gen_random_average(3, &[3, 2, 2], 2, 4, &int(1)).unwrap();
    assert!(zero.to_function().values().iter().all(|v| *v == int(0)));
    assert!(one.to_function().values().iter().all(|v| *v == int(1)));
    let a = gen_random_average(9, &[3, 3, 3], 2, 5, &rat(1, 2)).unwrap();
    let b = gen_random_average(9, &[3, 3, 3], 2, 5, &rat(1, 2)).unwrap();
    assert_eq!(a.to_function(), b.to_function());
    assert_eq!(gen_random_bipartite(4, 5, 5, &rat(1, 2)), gen_random_bipartite(4, 5, 5, &rat(1, 2)));
}

fn family_1d(values: Vec<Vec<Vec<Rational>>>, omega: usize) -> FunctionFamily {
    let parts = vec![WeightedPart::uniform(1).unwrap(), WeightedPart::uniform(1).unwrap()];
    FunctionFamily::new(1, parts, WeightedPart::uniform(omega).unwrap(), values).unwrap()
}

#[test]
fn discretize_examples() {
    let ff = family_1d(vec![vec![vec![int(0)]], vec![vec![rat(1, 2)]]], 1);
    let d = discretize_function_family(&ff, 1).unwrap();
    assert_eq!(d.level_value(d.levels[0][0][0]), int(0));
    assert_eq!(d.level_value(d.levels[1][0][0]), rat(1, 2));
    let ff = family_1d(vec![vec![vec![rat(3, 10)]], vec![vec![int(1)]]], 1);
    let d = discretize_function_family(&ff, 2).unwrap();
    assert_eq!(d.level_value(d.levels[0][0][0]), rat(1, 4));
    assert!(discretize_function_family(&ff, 0).is_err());
}

#[test]
fn decomposition_examples() {
    let ff = family_1d(vec![vec![vec![int(0), rat(1, 2), int(1)]], vec![vec![int(1), int(0), rat(1, 4)]]], 3);
    let d = discretize_function_family(&ff, 2).unwrap();
    let proj = |a: &[Rational]| a[0].clone();
    let dec = level_set_decompose(&proj, &ff, &d, 2).unwrap();
    for (level, combos) in &dec.classes {
        for c in combos {
            assert_eq!(c[0], *level);
        }
    }
    validate_decomposition(&proj, &ff, &d, &dec).unwrap();
    let zero = |_: &[Rational]| int(0);
    let dz = level_set_decompose(&zero, &ff, &d, 2).unwrap();
    assert_eq!(dz.classes.keys().copied().collect::<Vec<_>>(), vec![0]);
    let bad = |_: &[Rational]| int(2);
    assert!(level_set_decompose(&bad, &ff, &d, 2).is_err());
}

#[test]
fn product_of_indicators_is_intersection() {
    let sys = gen_random_average(5, &[2, 2], 1, 6, &rat(1, 2)).unwrap();
    let ff = FunctionFamily::from_average(&sys);
    let d = discretize_function_family(&ff, 3).unwrap();
    let prod = |a: &[Rational]| Combiner::Product.eval(a);
    let dec = level_set_decompose(&prod, &ff, &d, 3).unwrap();
    validate_decomposition(&prod, &ff, &d, &dec).unwrap();
    for x in 0..2 {
        for y in 0..2 {
            let v = pipeline_value(&prod, &ff, &d, &dec, &[x, y]).unwrap();
            assert_eq!(v.pipeline, eval_average(&sys, &[x, y]).unwrap());
        }
    }
}

proptest! {
    #[test]
    fn gs_edge_symmetric_and_shift_invariant(
        s in prop::collection::vec((0u8..3, 0u8..3, 0u8..3), 1..6),
        c in 0u8..3,
    ) {
        let x: Vec<u8> = s.iter().map(|t| t.0).collect();
        let y: Vec<u8> = s.iter().map(|t| t.1).collect();
        let z: Vec<u8> = s.iter().map(|t| t.2).collect();
        let e = gs_edge(3, &x, &y, &z).unwrap();
        prop_assert_eq!(e, naive_gs(3, &x, &y, &z));
        prop_assert_eq!(e, gs_edge(3, &y, &z, &x).unwrap());
        prop_assert_eq!(e, gs_edge(3, &z, &y, &x).unwrap());
        let xs: Vec<u8> = x.iter().map(|v| (v + c) % 3).collect();
        let ys: Vec<u8> = y.iter().map(|v| (v + 3 - c) % 3).collect();
        prop_assert_eq!(e, gs_edge(3, &xs, &ys, &z).unwrap());
    }

    #[test]
    fn parity_values_follow_edge_count(seed in 0u64..200) {
        let graphs = [0u64, 1, 2].map(|i| gen_random_bipartite(seed * 3 + i, 3, 3, &rat(1, 2)));
        let parts = [0, 1, 2].map(|_| WeightedPart::uniform(3).unwrap());
        let sys = gen_parity_system(parts, [&graphs[0], &graphs[1], &graphs[2]]).unwrap();
        for x in 0..3 {
            for y in 0..3 {
                for z in 0..3 {
                    let want = if parity_edge_count([&graphs[0], &graphs[1], &graphs[2]], x, y, z) % 2 == 1 {
                        rat(1, 4)
                    } else {
                        int(0)
                    };
                    prop_assert_eq!(eval_average(&sys, &[x, y, z]).unwrap(), want);
                }
            }
        }
    }

    #[test]
    fn discretization_error_at_most_step(num in 0i64..=97, n in 1u32..10) {
        let v = rat(num, 97);
        let ff = family_1d(vec![vec![vec![v.clone()]], vec![vec![int(0)]]], 1);
        let d = discretize_function_family(&ff, n).unwrap();
        let s = d.level_value(d.levels[0][0][0]);
        prop_assert!(s <= v);
        prop_assert!(v - s < d.step() || d.step() == int(0));
    }
}

#[test]
fn all_sequences_is_lexicographic() {
    let s = all_sequences(3, 2);
    assert_eq!(s.len(), 9);
    assert!(s.windows(2).all(|w| w[0] < w[1]));
}
