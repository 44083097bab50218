use crate::error::{structural, Error, Result};
use crate::hypergraph::Hypergraph3;
use crate::rational::{int, one, Rational};
use num_traits::{Signed, Zero};
use std::collections::HashSet;

/// GS_p edge rule: the first position with nonzero coordinate sum mod `p`
/// decides, and the triple is an edge iff that sum is 1.
pub fn gs_edge(p: u8, x: &[u8], y: &[u8], z: &[u8]) -> Result<bool> {
    if x.len() != y.len() || y.len() != z.len() {
        return Err(structural(format!(
            "sequence lengths {}, {}, {} differ",
            x.len(),
            y.len(),
            z.len()
        )));
    }
    Ok(gs_edge_unchecked(p, x, y, z))
}

pub(crate) fn gs_edge_unchecked(p: u8, x: &[u8], y: &[u8], z: &[u8]) -> bool {
    let p = p as u16;
    for i in 0..x.len() {
        let s = (x[i] as u16 + y[i] as u16 + z[i] as u16) % p;
        if s != 0 {
            return s == 1;
        }
    }
    false
}

pub fn is_prime(p: u8) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// One part of a ternary instance: distinct sequences with weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TernaryPart {
    pub seqs: Vec<Vec<u8>>,
    pub weights: Vec<Rational>,
}

impl TernaryPart {
    pub fn len(&self) -> usize {
        self.seqs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seqs.is_empty()
    }

    pub fn label(&self, i: usize) -> String {
        seq_string(&self.seqs[i])
    }
}

pub fn seq_string(s: &[u8]) -> String {
    s.iter().map(|d| char::from(b'0' + d)).collect()
}

pub fn parse_seq(s: &str) -> Result<Vec<u8>> {
    s.bytes()
        .map(|b| {
            if b.is_ascii_digit() {
                Ok(b - b'0')
            } else {
                Err(Error::Parse(format!("bad sequence {s:?}")))
            }
        })
        .collect()
}

/// Three parts of `F_p^n` sequences, each with exact weights; parts are
/// either empty or carry total weight exactly 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TernaryInstance {
    p: u8,
    n: usize,
    parts: [TernaryPart; 3],
}

impl TernaryInstance {
    pub fn new(p: u8, n: usize, parts: [TernaryPart; 3]) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Parameter(format!("modulus {p} is not prime")));
        }
        if n == 0 {
            return Err(Error::Parameter("depth must be positive".into()));
        }
        for (u, part) in parts.iter().enumerate() {
            if part.seqs.len() != part.weights.len() {
                return Err(structural(format!("part {u}: sequence and weight counts differ")));
            }
            let mut seen = HashSet::new();
            for s in &part.seqs {
                if s.len() != n {
                    return Err(structural(format!(
                        "part {u}: sequence {} has length {}, expected {n}",
                        seq_string(s),
                        s.len()
                    )));
                }
                if s.iter().any(|&c| c >= p) {
                    return Err(structural(format!("part {u}: sequence {} not over F_{p}", seq_string(s))));
                }
                if !seen.insert(s.clone()) {
                    return Err(structural(format!("part {u}: duplicate sequence {}", seq_string(s))));
                }
            }
            if part.weights.iter().any(|w| w.is_negative()) {
                return Err(structural(format!("part {u}: negative weight")));
            }
            let total: Rational = part.weights.iter().sum();
            if !part.seqs.is_empty() && total != one() {
                return Err(structural(format!("part {u}: weights sum to {total}, not 1")));
            }
        }
        Ok(Self { p, n, parts })
    }

    pub fn p(&self) -> u8 {
        self.p
    }

    pub fn depth(&self) -> usize {
        self.n
    }

    pub fn parts(&self) -> &[TernaryPart; 3] {
        &self.parts
    }

    pub fn part(&self, u: usize) -> &TernaryPart {
        &self.parts[u]
    }

    pub fn sizes(&self) -> [usize; 3] {
        [self.parts[0].len(), self.parts[1].len(), self.parts[2].len()]
    }

    pub fn triple_count(&self) -> usize {
        self.sizes().iter().product()
    }

    pub fn is_edge(&self, x: usize, y: usize, z: usize) -> bool {
        gs_edge_unchecked(
            self.p,
            &self.parts[0].seqs[x],
            &self.parts[1].seqs[y],
            &self.parts[2].seqs[z],
        )
    }

    pub fn to_hypergraph(&self) -> Hypergraph3 {
        let labels = [0, 1, 2].map(|u| (0..self.parts[u].len()).map(|i| self.parts[u].label(i)).collect());
        Hypergraph3::from_fn(labels, |x, y, z| self.is_edge(x, y, z))
    }

    pub fn has_zero_weights(&self) -> bool {
        self.parts.iter().any(|p| p.weights.iter().any(|w| w.is_zero()))
    }
}

/// All of `F_p^n` in lexicographic order.
pub fn all_sequences(p: u8, n: usize) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|s| {
                (0..p).map(move |c| {
                    let mut t = s.clone();
                    t.push(c);
                    t
                })
            })
            .collect();
    }
    out
}

/// GS_p(n) restricted to the given subsets (full `F_p^n` when `None`), with
/// the given weights (uniform when `None`).
pub fn gen_gs_instance(
    p: u8,
    n: usize,
    subsets: Option<[Vec<Vec<u8>>; 3]>,
    weights: Option<[Vec<Rational>; 3]>,
) -> Result<TernaryInstance> {
    let subsets = subsets.unwrap_or_else(|| {
        let all = all_sequences(p, n);
        [all.clone(), all.clone(), all]
    });
    let weights = match weights {
        Some(w) => w,
        None => [0, 1, 2].map(|u| {
            let m = subsets[u].len();
            if m == 0 {
                Vec::new()
            } else {
                vec![one() / int(m as i64); m]
            }
        }),
    };
    let [s0, s1, s2] = subsets;
    let [w0, w1, w2] = weights;
    TernaryInstance::new(
        p,
        n,
        [
            TernaryPart { seqs: s0, weights: w0 },
            TernaryPart { seqs: s1, weights: w1 },
            TernaryPart { seqs: s2, weights: w2 },
        ],
    )
}
