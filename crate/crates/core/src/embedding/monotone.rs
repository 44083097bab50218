use crate::hypergraph::{other_parts, Hypergraph3};
use fixedbitset::FixedBitSet;
use serde::Serialize;

/// Per part, the indices from lowest to highest.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonotonicityWitness {
    pub orders: [Vec<usize>; 3],
}

/// Two vertices of one part whose links are incomparable: `a` completes an
/// edge with `a_only` that `b` does not, and vice versa.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Obstruction {
    pub part: usize,
    pub a: usize,
    pub b: usize,
    pub a_only: (usize, usize),
    pub b_only: (usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Monotonicity {
    Monotone(MonotonicityWitness),
    NotMonotone(Obstruction),
}

impl Monotonicity {
    pub fn is_monotone(&self) -> bool {
        matches!(self, Monotonicity::Monotone(_))
    }

    pub fn witness(&self) -> Option<&MonotonicityWitness> {
        match self {
            Monotonicity::Monotone(w) => Some(w),
            Monotonicity::NotMonotone(_) => None,
        }
    }
}

fn first_outside(a: &FixedBitSet, b: &FixedBitSet, cols: usize) -> Option<(usize, usize)> {
    a.difference(b).next().map(|i| (i / cols, i % cols))
}

/// Orders exist iff in every part the links form a chain under inclusion;
/// sorting by link size then index gives the orders.
pub fn check_monotone(h: &Hypergraph3) -> Monotonicity {
    let dims = h.dims();
    let mut orders: [Vec<usize>; 3] = Default::default();
    for u in 0..3 {
        let (_, q) = other_parts(u);
        let links: Vec<FixedBitSet> = (0..dims[u]).map(|v| h.link(u, v)).collect();
        let mut order: Vec<usize> = (0..dims[u]).collect();
        order.sort_by_key(|&v| (links[v].count_ones(..), v));
        for w in order.windows(2) {
            let (a, b) = (w[0], w[1]);
            if !links[a].is_subset(&links[b]) {
                let a_only = first_outside(&links[a], &links[b], dims[q]).unwrap_or_default();
                let b_only = first_outside(&links[b], &links[a], dims[q]).unwrap_or_default();
                return Monotonicity::NotMonotone(Obstruction { part: u, a, b, a_only, b_only });
            }
        }
        orders[u] = order;
    }
    Monotonicity::Monotone(MonotonicityWitness { orders })
}

/// For every edge and every vertex above one of its coordinates in that
/// part's order, the moved triple is an edge.
pub fn validate_monotone(h: &Hypergraph3, w: &MonotonicityWitness) -> bool {
    let dims = h.dims();
    let mut ranks: [Vec<usize>; 3] = Default::default();
    for u in 0..3 {
        let o = &w.orders[u];
        if o.len() != dims[u] {
            return false;
        }
        ranks[u] = vec![usize::MAX; dims[u]];
        for (r, &v) in o.iter().enumerate() {
            if v >= dims[u] || ranks[u][v] != usize::MAX {
                return false;
            }
            ranks[u][v] = r;
        }
    }
    for x in 0..dims[0] {
        for y in 0..dims[1] {
            for z in 0..dims[2] {
                if !h.is_edge(x, y, z) {
                    continue;
                }
                let t = [x, y, z];
                for u in 0..3 {
                    for &v2 in &w.orders[u][ranks[u][t[u]] + 1..] {
                        let mut t2 = t;
                        t2[u] = v2;
                        if !h.is_edge_t(t2) {
                            return false;
                        }
                    }
                }
            }
        }
    }
    true
}
