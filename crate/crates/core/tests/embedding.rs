use avgreg::embedding::{
    check_halfsimplex_realizable, check_monotone, embed_into_gs3, sample_common_sub, validate_embedding,
    validate_monotone, validate_realization, Realizability, EMBED_CAP,
};
use avgreg::generators::{gen_gs_instance, gen_halfsimplex_grid, grid_points};
use avgreg::hypergraph::Hypergraph3;
use avgreg::Error;
use proptest::prelude::*;

fn from_mask(dims: [usize; 3], mask: u64) -> Hypergraph3 {
    Hypergraph3::unlabeled(dims, |x, y, z| mask >> ((x * dims[1] + y) * dims[2] + z) & 1 == 1)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Some order of part `u` under which raising that coordinate keeps edges.
fn part_orderable(h: &Hypergraph3, u: usize) -> bool {
    let d = h.dims();
    permutations(d[u]).iter().any(|order| {
        (0..d[0]).all(|x| {
            (0..d[1]).all(|y| {
                (0..d[2]).all(|z| {
                    let t = [x, y, z];
                    if !h.is_edge_t(t) {
                        return true;
                    }
                    let r = order.iter().position(|&v| v == t[u]).unwrap();
                    order[r + 1..].iter().all(|&v| {
                        let mut t2 = t;
                        t2[u] = v;
                        h.is_edge_t(t2)
                    })
                })
            })
        })
    })
}

fn monotone_oracle(h: &Hypergraph3) -> bool {
    (0..3).all(|u| part_orderable(h, u))
}

/// Values `k / q` with every edge summing to at least 1 and every non-edge below 1.
fn grid_realizable(h: &Hypergraph3, q: usize) -> bool {
    let d = h.dims();
    let nv = d[0] + d[1] + d[2];
    let mut vals = vec![0usize; nv];
    loop {
        let ok = (0..d[0]).all(|x| {
            (0..d[1]).all(|y| {
                (0..d[2]).all(|z| {
                    let s = vals[x] + vals[d[0] + y] + vals[d[0] + d[1] + z];
                    h.is_edge(x, y, z) == (s >= q)
                })
            })
        });
        if ok {
            return true;
        }
        let mut i = 0;
        while i < nv && vals[i] == q {
            vals[i] = 0;
            i += 1;
        }
        if i == nv {
            return false;
        }
        vals[i] += 1;
    }
}

fn gs_edge3(x: u8, y: u8, z: u8) -> bool {
    (x + y + z) % 3 == 1
}

/// Injective maps into `F_3` matching the edges of `GS_3(1)`.
fn embeds_at_depth_one(h: &Hypergraph3) -> bool {
    let d = h.dims();
    let inj: Vec<Vec<Vec<u8>>> = d.iter().map(|&n| injective_maps(n)).collect();
    inj[0].iter().any(|a| {
        inj[1].iter().any(|b| {
            inj[2].iter().any(|c| {
                (0..d[0]).all(|x| {
                    (0..d[1]).all(|y| (0..d[2]).all(|z| h.is_edge(x, y, z) == gs_edge3(a[x], b[y], c[z])))
                })
            })
        })
    })
}

fn injective_maps(n: usize) -> Vec<Vec<u8>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|m: Vec<u8>| {
                let free: Vec<u8> = (0..3u8).filter(|c| !m.contains(c)).collect();
                free.into_iter().map(move |c| [m.clone(), vec![c]].concat())
            })
            .collect();
    }
    out
}

#[test]
fn halfsimplex_grid_is_monotone() {
    let pts = grid_points(4);
    let h = gen_halfsimplex_grid([&pts, &pts, &pts]).unwrap();
    let m = check_monotone(&h);
    assert!(validate_monotone(&h, m.witness().unwrap()));
    match check_halfsimplex_realizable(&h) {
        Realizability::Realizable(w) => assert!(validate_realization(&h, &w)),
        other => panic!("grid not realizable: {other:?}"),
    }
}

#[test]
fn gs_of_depth_two_is_not_monotone() {
    let h = gen_gs_instance(3, 2, None, None).unwrap().to_hypergraph();
    assert!(!check_monotone(&h).is_monotone());
    assert!(!monotone_oracle(&h));
    assert!(!check_halfsimplex_realizable(&h).is_realizable());
}

#[test]
fn edgeless_and_complete_are_realizable() {
    let none = Hypergraph3::unlabeled([2, 3, 2], |_, _, _| false);
    assert!(check_monotone(&none).is_monotone());
    assert!(check_halfsimplex_realizable(&none).is_realizable());
    let all = Hypergraph3::unlabeled([2, 3, 2], |_, _, _| true);
    match check_halfsimplex_realizable(&all) {
        Realizability::Realizable(w) => assert!(validate_realization(&all, &w)),
        other => panic!("complete not realizable: {other:?}"),
    }
}

#[test]
fn verdicts_agree_with_brute_force_on_all_small_hypergraphs() {
    let mut monotone_only = 0;
    for mask in 0..256u64 {
        let h = from_mask([2, 2, 2], mask);
        let m = check_monotone(&h);
        assert_eq!(m.is_monotone(), monotone_oracle(&h), "mask {mask}");
        if let Some(w) = m.witness() {
            assert!(validate_monotone(&h, w));
        }
        let r = check_halfsimplex_realizable(&h);
        if let Realizability::Realizable(w) = &r {
            assert!(validate_realization(&h, w));
            assert!(m.is_monotone());
        }
        if m.is_monotone() {
            assert_eq!(r.is_realizable(), grid_realizable(&h, 4), "mask {mask}");
            monotone_only += usize::from(!r.is_realizable());
        }
    }
    assert_eq!(monotone_only, 0);
}

/// Up-sets of the 3x3x3 grid generated by random antichains; every verdict
/// is rechecked and the monotone but unrealizable ones are counted.
#[test]
fn up_set_search_for_unrealizable_monotone() {
    use rand::{Rng, SeedableRng};
    let mut g = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    let (mut unrealizable, mut tried) = (0, 0);
    for _ in 0..300 {
        let gens: Vec<[usize; 3]> = (0..g.gen_range(1..5)).map(|_| [0; 3].map(|_| g.gen_range(0..3))).collect();
        let h = Hypergraph3::unlabeled([3, 3, 3], |x, y, z| gens.iter().any(|t| x >= t[0] && y >= t[1] && z >= t[2]));
        assert!(check_monotone(&h).is_monotone());
        tried += 1;
        match check_halfsimplex_realizable(&h) {
            Realizability::Realizable(w) => assert!(validate_realization(&h, &w)),
            Realizability::NotRealizable { .. } => {
                assert!(!grid_realizable(&h, 3));
                unrealizable += 1;
            }
        }
    }
    println!("monotone up-sets tried {tried}, unrealizable {unrealizable}");
}

/// Edges `(2,1,0)`, `(1,0,2)`, `(0,2,1)` and non-edges `(2,0,1)`, `(0,1,2)`,
/// `(1,2,0)` use the same coordinates, so the three edge sums of at least 1
/// and the three non-edge sums below 1 cannot share one total.
#[test]
fn cyclic_up_set_is_monotone_but_unrealizable() {
    let gens = [[2, 1, 0], [1, 0, 2], [0, 2, 1]];
    let h = Hypergraph3::unlabeled([3, 3, 3], |x, y, z| gens.iter().any(|t| x >= t[0] && y >= t[1] && z >= t[2]));
    assert!(monotone_oracle(&h));
    assert!(check_monotone(&h).is_monotone());
    let non_edges = [[2, 0, 1], [0, 1, 2], [1, 2, 0]];
    assert!(non_edges.iter().all(|&t| !h.is_edge_t(t)));
    for u in 0..3 {
        let mut a: Vec<usize> = gens.iter().map(|t| t[u]).collect();
        let mut b: Vec<usize> = non_edges.iter().map(|t| t[u]).collect();
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }
    assert!(!check_halfsimplex_realizable(&h).is_realizable());
}

#[test]
fn embeddings_agree_with_brute_force_at_depth_one() {
    let mut missing = 0;
    for mask in 0..256u64 {
        let h = from_mask([2, 2, 2], mask);
        let e = embed_into_gs3(&h, 1).unwrap();
        assert_eq!(e.is_some(), embeds_at_depth_one(&h), "mask {mask}");
        if let Some(e) = e {
            assert!(validate_embedding(&h, &e));
        } else {
            missing += 1;
        }
    }
    assert!(missing > 0);
}

#[test]
fn single_edge_embeds_at_depth_one() {
    let h = Hypergraph3::unlabeled([1, 1, 1], |_, _, _| true);
    let e = embed_into_gs3(&h, 1).unwrap().unwrap();
    assert!(validate_embedding(&h, &e));
    assert!(gs_edge3(e.maps[0][0][0], e.maps[1][0][0], e.maps[2][0][0]));
}

#[test]
fn embed_limits() {
    let big = Hypergraph3::unlabeled([EMBED_CAP, 1, 1], |_, _, _| false);
    assert!(matches!(embed_into_gs3(&big, 2), Err(Error::CapExceeded { .. })));
    let h = Hypergraph3::unlabeled([1, 1, 1], |_, _, _| true);
    assert!(embed_into_gs3(&h, 0).is_err());
    let wide = Hypergraph3::unlabeled([4, 1, 1], |_, _, _| false);
    assert_eq!(embed_into_gs3(&wide, 1).unwrap(), None);
}

#[test]
fn samples_embed_back_at_their_depth() {
    for seed in 0..4 {
        let s = sample_common_sub(seed, 2, [3; 3], 0.3, 20_000).unwrap();
        let h = s.instance.to_hypergraph();
        assert!(monotone_oracle(&h));
        let e = embed_into_gs3(&h, 2).unwrap().unwrap();
        assert!(validate_embedding(&h, &e));
    }
}

#[test]
fn sampler_contract() {
    let a = sample_common_sub(7, 3, [4; 3], 0.3, 20_000).unwrap();
    let b = sample_common_sub(7, 3, [4; 3], 0.3, 20_000).unwrap();
    assert_eq!(a.instance, b.instance);
    assert_eq!(a.orders, b.orders);
    let one = sample_common_sub(1, 2, [1; 3], 0.0, 10).unwrap();
    assert!(check_monotone(&one.instance.to_hypergraph()).is_monotone());
    assert!(sample_common_sub(1, 0, [1; 3], 0.0, 10).is_err());
    assert!(sample_common_sub(1, 2, [1; 3], 1.0, 10).is_err());
    assert!(sample_common_sub(1, 1, [4, 1, 1], 0.0, 10).is_err());
    assert!(matches!(sample_common_sub(1, 3, [27; 3], 0.0, 50), Err(Error::Degenerate(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn realizable_implies_monotone(mask in 0u64..(1 << 18)) {
        let h = from_mask([3, 3, 2], mask);
        let m = check_monotone(&h);
        prop_assert_eq!(m.is_monotone(), monotone_oracle(&h));
        if let Realizability::Realizable(w) = check_halfsimplex_realizable(&h) {
            prop_assert!(validate_realization(&h, &w));
            prop_assert!(m.is_monotone());
        }
    }

    #[test]
    fn up_sets_are_monotone(a in prop::collection::vec(0u8..4, 3), b in prop::collection::vec(0u8..4, 3)) {
        let h = Hypergraph3::unlabeled([3, 3, 3], |x, y, z| {
            let s = [x, y, z].map(|v| v as u8);
            (s[0] + s[1] + s[2] >= a[0] + 1 && s[0] >= a[1].min(2)) || s[2] >= b[2] + a[2]
        });
        prop_assert!(check_monotone(&h).is_monotone());
    }
}
