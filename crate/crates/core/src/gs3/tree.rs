//! Prefix trees over `F_3^{<=n}` with exact cylinder masses per part.

use crate::error::{structural, Error, Result};
use crate::generators::ternary::{seq_string, TernaryInstance};
use crate::rational::{zero, Rational};
use num_traits::Zero;
use serde::Serialize;
use std::collections::{BTreeSet, HashMap};

/// Pointwise `-(sigma + tau)` over `F_3`.
pub fn i_sum(sigma: &[u8], tau: &[u8]) -> Result<Vec<u8>> {
    if sigma.len() != tau.len() {
        return Err(structural(format!(
            "lengths {} and {} differ",
            sigma.len(),
            tau.len()
        )));
    }
    Ok(i_sum_unchecked(sigma, tau))
}

pub(crate) fn i_sum_unchecked(sigma: &[u8], tau: &[u8]) -> Vec<u8> {
    sigma.iter().zip(tau).map(|(&a, &b)| (6 - a - b) % 3).collect()
}

pub(crate) fn add3(a: u8, b: u8, c: u8) -> u8 {
    (a + b + c) % 3
}

pub(crate) fn is_prefix(a: &[u8], b: &[u8]) -> bool {
    a.len() <= b.len() && b[..a.len()] == *a
}

#[derive(Clone, Debug)]
pub struct Node {
    pub members: Vec<usize>,
    pub mass: Rational,
}

/// Present prefixes of every part, with member lists and exact masses.
#[derive(Clone, Debug)]
pub struct PrefixTree {
    n: usize,
    nodes: [HashMap<Vec<u8>, Node>; 3],
    by_len: [Vec<BTreeSet<Vec<u8>>>; 3],
}

impl PrefixTree {
    pub fn new(inst: &TernaryInstance) -> Self {
        let n = inst.depth();
        let mut nodes: [HashMap<Vec<u8>, Node>; 3] = Default::default();
        let mut by_len: [Vec<BTreeSet<Vec<u8>>>; 3] = Default::default();
        for u in 0..3 {
            by_len[u] = vec![BTreeSet::new(); n + 1];
            let part = inst.part(u);
            for (i, s) in part.seqs.iter().enumerate() {
                for l in 0..=n {
                    let node = nodes[u]
                        .entry(s[..l].to_vec())
                        .or_insert_with(|| Node { members: Vec::new(), mass: zero() });
                    node.members.push(i);
                    node.mass += &part.weights[i];
                    by_len[u][l].insert(s[..l].to_vec());
                }
            }
        }
        Self { n, nodes, by_len }
    }

    pub fn depth(&self) -> usize {
        self.n
    }

    pub fn node(&self, u: usize, sigma: &[u8]) -> Option<&Node> {
        self.nodes[u].get(sigma)
    }

    pub fn present(&self, u: usize, sigma: &[u8]) -> bool {
        self.nodes[u].contains_key(sigma)
    }

    pub fn mass(&self, u: usize, sigma: &[u8]) -> Rational {
        self.nodes[u].get(sigma).map_or_else(zero, |n| n.mass.clone())
    }

    pub fn positive(&self, u: usize, sigma: &[u8]) -> bool {
        self.nodes[u].get(sigma).is_some_and(|n| !n.mass.is_zero())
    }

    pub fn members(&self, u: usize, sigma: &[u8]) -> &[usize] {
        self.nodes[u].get(sigma).map_or(&[], |n| n.members.as_slice())
    }

    /// Present prefixes of length `l` in lexicographic order.
    pub fn level(&self, u: usize, l: usize) -> impl Iterator<Item = &Vec<u8>> {
        self.by_len[u].get(l).into_iter().flatten()
    }

    /// Present one-step extensions of `sigma`.
    pub fn present_children(&self, u: usize, sigma: &[u8]) -> Vec<u8> {
        (0..3).filter(|&j| self.present(u, &child(sigma, j))).collect()
    }

    pub fn positive_children(&self, u: usize, sigma: &[u8]) -> Vec<u8> {
        (0..3).filter(|&j| self.positive(u, &child(sigma, j))).collect()
    }

    pub fn splits(&self, u: usize, sigma: &[u8]) -> bool {
        sigma.len() < self.n && self.present_children(u, sigma).len() >= 2
    }

    /// The unique present extension, if `sigma` is present and non-splitting;
    /// full-length sequences extend by the padding symbol 0.
    pub fn extension(&self, u: usize, sigma: &[u8]) -> Option<u8> {
        if !self.present(u, sigma) {
            return None;
        }
        if sigma.len() == self.n {
            return Some(0);
        }
        match self.present_children(u, sigma).as_slice() {
            [j] => Some(*j),
            _ => None,
        }
    }

    pub fn is_large_split(&self, u: usize, sigma: &[u8]) -> bool {
        sigma.len() < self.n && self.positive_children(u, sigma).len() >= 2
    }
}

pub(crate) fn child(sigma: &[u8], j: u8) -> Vec<u8> {
    let mut c = Vec::with_capacity(sigma.len() + 1);
    c.extend_from_slice(sigma);
    c.push(j);
    c
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitSignature {
    #[serde(serialize_with = "super::ser_seq")]
    pub sigma: Vec<u8>,
    pub present: Vec<u8>,
    pub positive: Vec<u8>,
    pub extension: Option<u8>,
    pub large: bool,
}

impl SplitSignature {
    pub fn splits(&self) -> bool {
        self.extension.is_none()
    }
}

pub fn classify_prefix(tree: &PrefixTree, u: usize, sigma: &[u8]) -> Result<SplitSignature> {
    if u >= 3 {
        return Err(Error::Parameter(format!("part {u} out of range")));
    }
    if !tree.present(u, sigma) {
        return Err(Error::Parameter(format!(
            "prefix {} is not present in part {u}",
            seq_string(sigma)
        )));
    }
    let (present, positive) = if sigma.len() == tree.depth() {
        let pos = if tree.positive(u, sigma) { vec![0] } else { vec![] };
        (vec![0], pos)
    } else {
        (tree.present_children(u, sigma), tree.positive_children(u, sigma))
    };
    Ok(SplitSignature {
        sigma: sigma.to_vec(),
        extension: tree.extension(u, sigma),
        large: positive.len() >= 2,
        present,
        positive,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DepthMark {
    Successor(usize),
    Infinite,
}

impl DepthMark {
    pub fn finite(self) -> Option<usize> {
        match self {
            DepthMark::Successor(i) => Some(i),
            DepthMark::Infinite => None,
        }
    }
}

/// Least `i >= 1` with `mu([x|i]) = 0`, or infinite.
pub fn depth_mark(tree: &PrefixTree, u: usize, x: &[u8]) -> DepthMark {
    (1..=tree.depth().min(x.len()))
        .find(|&i| !tree.positive(u, &x[..i]))
        .map_or(DepthMark::Infinite, DepthMark::Successor)
}

pub fn compute_ix(inst: &TernaryInstance, tree: &PrefixTree, u: usize, x: usize) -> Result<DepthMark> {
    let part = inst.part(u);
    if x >= part.len() {
        return Err(Error::Parameter(format!("point {x} out of range for part {u}")));
    }
    let mark = depth_mark(tree, u, &part.seqs[x]);
    let weight_zero = part.weights[x].is_zero();
    if (mark == DepthMark::Infinite) == weight_zero {
        return Err(Error::Contract(format!(
            "depth mark {mark:?} inconsistent with weight of {}",
            seq_string(&part.seqs[x])
        )));
    }
    Ok(mark)
}
