use avgreg::io::{instance_from_str, instance_to_string, partition_from_file, partition_to_file, Instance};
use avgreg::rational::{fmt_rational, parse_rational, rat};
use avgreg::{
    cell_measure, edge_sets, shortest_covering_interval, BudgetFn, CylinderCell, Error, GradedPartition,
    PartiteFunction, Rational, WeightedPart,
};
use proptest::prelude::*;

fn part(ws: &[(i64, i64)]) -> WeightedPart {
    WeightedPart::new((0..ws.len()).map(|i| format!("p{i}")).collect(), ws.iter().map(|&(n, d)| rat(n, d)).collect())
        .unwrap()
}

/// Brute force over all windows `[v_i, v_j]` of the sorted support.
fn interval_oracle(values: &[(Rational, Rational)], budget: &Rational) -> (Rational, Rational, Rational) {
    let mut pts: Vec<Rational> = values.iter().map(|(v, _)| v.clone()).collect();
    pts.sort();
    pts.dedup();
    let total: Rational = values.iter().map(|(_, m)| m).sum();
    let mut best: Option<(Rational, Rational, Rational)> = None;
    for lo in &pts {
        for hi in pts.iter().filter(|h| *h >= lo) {
            let inside: Rational = values.iter().filter(|(v, _)| v >= lo && v <= hi).map(|(_, m)| m).sum();
            let outside = &total - inside;
            if &outside > budget {
                continue;
            }
            let len = hi - lo;
            let better = match &best {
                None => true,
                Some((l, b, _)) => len < b - l || (len == b - l && lo < l),
            };
            if better {
                best = Some((lo.clone(), hi.clone(), outside));
            }
        }
    }
    best.expect("full support always qualifies")
}

#[test]
fn rational_parsing_round_trips() {
    assert_eq!(parse_rational("3/6").unwrap(), rat(1, 2));
    assert_eq!(parse_rational("-2").unwrap(), rat(-2, 1));
    assert_eq!(fmt_rational(&rat(2, 4)), "1/2");
    assert!(parse_rational("1/0").is_err());
    assert!(parse_rational("abc").is_err());
}

#[test]
fn weighted_part_rejects_bad_weights() {
    let l = |n: usize| (0..n).map(|i| i.to_string()).collect::<Vec<_>>();
    assert!(WeightedPart::new(l(2), vec![rat(1, 2), rat(1, 3)]).is_err());
    assert!(WeightedPart::new(l(2), vec![rat(3, 2), rat(-1, 2)]).is_err());
    assert!(WeightedPart::new(vec!["a".into(), "a".into()], vec![rat(1, 2), rat(1, 2)]).is_err());
    assert!(WeightedPart::new(l(3), vec![rat(1, 2), rat(0, 1), rat(1, 2)]).is_ok());
}

#[test]
fn cell_measure_examples() {
    let a = part(&[(1, 2), (1, 2)]);
    let b = part(&[(1, 3), (2, 3)]);
    let parts = [a.clone(), b.clone()];
    let empty = CylinderCell { key: vec![1], members: vec![] };
    assert_eq!(cell_measure(&empty, &parts).unwrap(), rat(0, 1));
    let full = CylinderCell { key: vec![1], members: vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]] };
    assert_eq!(cell_measure(&full, &parts).unwrap(), rat(1, 1));
    let one = CylinderCell { key: vec![1], members: vec![vec![0, 0]] };
    assert_eq!(cell_measure(&one, &parts).unwrap(), rat(1, 6));
    let bad = CylinderCell { key: vec![1], members: vec![vec![0, 5]] };
    assert!(matches!(cell_measure(&bad, &parts), Err(Error::Structural(_))));
}

#[test]
fn shortest_interval_examples() {
    let half = rat(1, 2);
    let (i, out) = shortest_covering_interval(&[(half.clone(), rat(1, 1))], &rat(0, 1)).unwrap();
    assert_eq!((i.lo, i.hi, out), (half.clone(), half, rat(0, 1)));
    let vals = [(rat(1, 10), rat(1, 1)), (rat(12, 100), rat(1, 1)), (rat(95, 100), rat(1, 1))];
    let (i, out) = shortest_covering_interval(&vals, &rat(1, 1)).unwrap();
    assert_eq!((i.lo, i.hi, out), (rat(1, 10), rat(12, 100), rat(1, 1)));
    let (i, out) = shortest_covering_interval(&[(rat(0, 1), rat(1, 1)), (rat(1, 1), rat(1, 1))], &rat(0, 1)).unwrap();
    assert_eq!((i.lo, i.hi, out), (rat(0, 1), rat(1, 1), rat(0, 1)));
    assert!(matches!(shortest_covering_interval(&[], &rat(0, 1)), Err(Error::Degenerate(_))));
}

#[test]
fn leftmost_tie_break() {
    let vals = [(rat(0, 1), rat(1, 1)), (rat(1, 2), rat(1, 1)), (rat(1, 1), rat(1, 1))];
    let (i, _) = shortest_covering_interval(&vals, &rat(1, 1)).unwrap();
    assert_eq!((i.lo, i.hi), (rat(0, 1), rat(1, 2)));
}

#[test]
fn budget_functions_evaluate_into_unit_interval() {
    let c = BudgetFn::constant(rat(1, 4)).unwrap();
    let r = BudgetFn::reciprocal(rat(1, 2)).unwrap();
    let e = BudgetFn::exponential(rat(1, 1)).unwrap();
    assert_eq!(c.eval(7), rat(1, 4));
    assert_eq!(r.eval(4), rat(1, 8));
    assert_eq!(e.eval(3), rat(1, 8));
    assert!(BudgetFn::constant(rat(0, 1)).is_err());
    assert!(BudgetFn::constant(rat(3, 2)).is_err());
    assert!(e.dominated_by(&BudgetFn::constant(rat(1, 2)).unwrap(), 20));
}

#[test]
fn edge_sets_are_lexicographic() {
    assert_eq!(edge_sets(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
    assert_eq!(edge_sets(4, 1).len(), 4);
    assert_eq!(edge_sets(4, 3).len(), 4);
}

#[test]
fn graded_partition_rejects_overlap_and_gaps() {
    let dims = vec![2, 2];
    assert!(GradedPartition::from_parts(dims.clone(), 1, vec![vec![vec![], vec![vec![0]]], vec![vec![vec![0], vec![1]]]])
        .is_err());
    assert!(GradedPartition::from_parts(
        dims.clone(),
        1,
        vec![vec![vec![vec![0]], vec![vec![0], vec![1]]], vec![vec![vec![0], vec![1]]]]
    )
    .is_err());
    let ok = GradedPartition::from_parts(dims, 1, vec![vec![vec![], vec![vec![0], vec![1]]], vec![vec![vec![0], vec![1]]]])
        .unwrap();
    ok.validate().unwrap();
}

#[test]
fn cells_cover_the_product() {
    let p = GradedPartition::from_assignments(vec![2, 3, 2], 2, vec![vec![0, 1, 2, 1, 1, 2], vec![1, 2, 1, 2], vec![1; 6]])
        .unwrap();
    let total: usize = p.cells().values().map(|m| m.len()).sum();
    assert_eq!(total, 12);
    for (key, members) in p.cells() {
        for &idx in &members {
            let t = avgreg::function::Grid::new(vec![2, 3, 2]).decode(idx);
            assert_eq!(p.key_of(&t), key);
        }
    }
}

#[test]
fn instance_round_trip_and_bad_weights() {
    let f = PartiteFunction::from_fn(vec![part(&[(1, 2), (1, 2)]), part(&[(1, 3), (2, 3)])], |t| {
        rat((t[0] + t[1]) as i64, 2)
    })
    .unwrap();
    let s = instance_to_string(&Instance::Function(f.clone())).unwrap();
    match instance_from_str(&s).unwrap() {
        Instance::Function(g) => assert_eq!(g, f),
        other => panic!("wrong kind {}", other.kind()),
    }
    let good = r#"{"kind":"function","parts":[{"labels":["a","b"],"weights":[[1,2],[1,2]]}],"values":[[0,1],[1,1]]}"#;
    assert!(instance_from_str(good).is_ok());
    let bad = good.replace("[[1,2],[1,2]]", "[[1,2],[1,3]]");
    assert!(instance_from_str(&bad).is_err());
    assert!(instance_from_str("{\"kind\":\"function\",\"parts\":[],\"values\":[],\"extra\":1}").is_err());
}

#[test]
fn partition_file_round_trip() {
    let p = GradedPartition::from_assignments(vec![2, 2], 1, vec![vec![1, 2], vec![0, 1]]).unwrap();
    let q = partition_from_file(partition_to_file(&p)).unwrap();
    assert_eq!(p, q);
}

proptest! {
    #[test]
    fn interval_matches_window_oracle(
        raw in prop::collection::vec((0i64..8, 1i64..4), 1..7),
        b in 0i64..6,
    ) {
        let values: Vec<(Rational, Rational)> = raw.iter().map(|&(v, m)| (rat(v, 8), rat(m, 1))).collect();
        let total: Rational = values.iter().map(|(_, m)| m).sum();
        let budget = rat(b, 1).min(total);
        let (i, out) = shortest_covering_interval(&values, &budget).unwrap();
        let (lo, hi, o) = interval_oracle(&values, &budget);
        prop_assert_eq!((i.lo, i.hi, out), (lo, hi, o));
    }

    #[test]
    fn interval_length_nonincreasing_in_budget(
        raw in prop::collection::vec((0i64..16, 1i64..4), 1..8),
        b in 0i64..5,
    ) {
        let values: Vec<(Rational, Rational)> = raw.iter().map(|&(v, m)| (rat(v, 16), rat(m, 1))).collect();
        let total: Rational = values.iter().map(|(_, m)| m).sum();
        let (a, _) = shortest_covering_interval(&values, &rat(b, 1).min(total.clone())).unwrap();
        let (c, _) = shortest_covering_interval(&values, &rat(b + 1, 1).min(total)).unwrap();
        prop_assert!(c.len() <= a.len());
        let (z, _) = shortest_covering_interval(&values, &rat(0, 1)).unwrap();
        prop_assert_eq!(z.lo, values.iter().map(|v| v.0.clone()).min().unwrap());
        prop_assert_eq!(z.hi, values.iter().map(|v| v.0.clone()).max().unwrap());
    }

    #[test]
    fn cell_measure_additive_and_order_free(
        members in prop::collection::btree_set((0usize..3, 0usize..2), 0..6),
        cut in 0usize..6,
    ) {
        let parts = [part(&[(1, 2), (1, 4), (1, 4)]), part(&[(1, 3), (2, 3)])];
        let all: Vec<Vec<usize>> = members.iter().map(|&(a, b)| vec![a, b]).collect();
        let k = cut.min(all.len());
        let whole = cell_measure(&CylinderCell { key: vec![], members: all.clone() }, &parts).unwrap();
        let left = cell_measure(&CylinderCell { key: vec![], members: all[..k].to_vec() }, &parts).unwrap();
        let right = cell_measure(&CylinderCell { key: vec![], members: all[k..].to_vec() }, &parts).unwrap();
        prop_assert_eq!(&whole, &(left + right));
        let mut rev = all.clone();
        rev.reverse();
        prop_assert_eq!(whole, cell_measure(&CylinderCell { key: vec![], members: rev }, &parts).unwrap());
    }
}
