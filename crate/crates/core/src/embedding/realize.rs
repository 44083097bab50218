use crate::hypergraph::Hypergraph3;
use crate::lp::{Cmp, LinearProgram, LpOutcome};
use crate::rational::{int, one, Rational};
use fixedbitset::FixedBitSet;
use num_traits::Signed;
use serde::Serialize;
use std::collections::HashMap;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RealizabilityWitness {
    #[serde(serialize_with = "ser_values")]
    pub values: [Vec<Rational>; 3],
    #[serde(with = "crate::rational::as_string")]
    pub margin: Rational,
}

fn ser_values<S: serde::Serializer>(v: &[Vec<Rational>; 3], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(3))?;
    for part in v {
        let strs: Vec<String> = part.iter().map(crate::rational::fmt_rational).collect();
        seq.serialize_element(&strs)?;
    }
    seq.end()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Realizability {
    Realizable(RealizabilityWitness),
    NotRealizable {
        #[serde(with = "crate::rational::as_string")]
        best_margin: Rational,
    },
}

impl Realizability {
    pub fn is_realizable(&self) -> bool {
        matches!(self, Realizability::Realizable(_))
    }
}

/// Representatives of vertices with identical links, and each vertex's class.
fn twin_classes(h: &Hypergraph3, u: usize) -> (Vec<usize>, Vec<usize>) {
    let mut seen: HashMap<FixedBitSet, usize> = HashMap::new();
    let mut reps = Vec::new();
    let class = (0..h.dims()[u])
        .map(|v| {
            *seen.entry(h.link(u, v)).or_insert_with(|| {
                reps.push(v);
                reps.len() - 1
            })
        })
        .collect();
    (reps, class)
}

/// Maximizes a margin `m <= 1` with values in `[0,1]`, edges summing to at
/// least 1 and non-edges to at most `1 - m`; realizable iff `m > 0`.
pub fn check_halfsimplex_realizable(h: &Hypergraph3) -> Realizability {
    let classes: Vec<(Vec<usize>, Vec<usize>)> = (0..3).map(|u| twin_classes(h, u)).collect();
    let offs = [0, classes[0].0.len(), classes[0].0.len() + classes[1].0.len()];
    let nv = offs[2] + classes[2].0.len();
    let m = nv;
    let mut lp = LinearProgram::new(nv + 1);
    lp.objective[m] = one();
    lp.add(&[(m, one())], Cmp::Le, one());
    for i in 0..nv {
        lp.add(&[(i, one())], Cmp::Le, one());
    }
    for (a, &x) in classes[0].0.iter().enumerate() {
        for (b, &y) in classes[1].0.iter().enumerate() {
            for (c, &z) in classes[2].0.iter().enumerate() {
                let mut terms = vec![(offs[0] + a, one()), (offs[1] + b, one()), (offs[2] + c, one())];
                if h.is_edge(x, y, z) {
                    lp.add(&terms, Cmp::Ge, one());
                } else {
                    terms.push((m, one()));
                    lp.add(&terms, Cmp::Le, one());
                }
            }
        }
    }
    match lp.solve() {
        LpOutcome::Optimal { x, value } if value.is_positive() => {
            let values = [0, 1, 2].map(|u| classes[u].1.iter().map(|&c| x[offs[u] + c].clone()).collect());
            Realizability::Realizable(RealizabilityWitness { values, margin: value })
        }
        LpOutcome::Optimal { value, .. } => Realizability::NotRealizable { best_margin: value },
        _ => Realizability::NotRealizable { best_margin: int(-1) },
    }
}

/// Values in `[0,1]`, positive margin, and every triple on the right side.
pub fn validate_realization(h: &Hypergraph3, w: &RealizabilityWitness) -> bool {
    let dims = h.dims();
    if !w.margin.is_positive() || (0..3).any(|u| w.values[u].len() != dims[u]) {
        return false;
    }
    if w.values.iter().flatten().any(|v| v.is_negative() || *v > one()) {
        return false;
    }
    let limit = one() - &w.margin;
    for x in 0..dims[0] {
        for y in 0..dims[1] {
            for z in 0..dims[2] {
                let s = &w.values[0][x] + &w.values[1][y] + &w.values[2][z];
                let ok = if h.is_edge(x, y, z) { s >= one() } else { s <= limit };
                if !ok {
                    return false;
                }
            }
        }
    }
    true
}
