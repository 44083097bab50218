//! The prefix-tree partition of ternary instances: splits, `I(sigma, tau)`,
//! null ledgers, R and sR families, depth marks, pair classes and the
//! triple-homogeneity verifier.

pub mod claims;
pub mod classify;
pub mod family;
pub mod homogeneity;
pub mod ledger;
pub mod partition;
pub mod tree;

pub use claims::{check_general_principle, verify_two_direction_claim, Principle, TwoDirectionReport};
pub use classify::{classify_pair, Lead, NullReason, PairClass, PairClassification};
pub use family::{build_R_family, check_family, enumerate_R_sR, FamilyCheck, RFamily, Rect, RectKind};
pub use homogeneity::{merge_parts, verify_triple_homogeneity, TripleHomogeneityReport};
pub use ledger::{compute_RZ, compute_null_Z, NullLedger, NullRect};
pub use partition::{build_partition_P, build_all, Gs3Partitions, PairCell, PairPartition};
pub use tree::{classify_prefix, compute_ix, i_sum, DepthMark, PrefixTree, SplitSignature};

use crate::error::{Error, Result};
use crate::generators::ternary::{seq_string, TernaryInstance};
use serde::Serializer;
use std::collections::BTreeSet;

pub(crate) fn ser_seq<S: Serializer>(s: &[u8], ser: S) -> std::result::Result<S::Ok, S::Error> {
    ser.serialize_str(&seq_string(s))
}

/// Canonical pairs `(u, v)` with `u < v`, in order.
pub const PAIRS: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];

pub fn third(u: usize, v: usize) -> usize {
    3 - u - v
}

pub fn pair_index(u: usize, v: usize) -> usize {
    match (u.min(v), u.max(v)) {
        (0, 1) => 0,
        (0, 2) => 1,
        _ => 2,
    }
}

/// An instance over `F_3` with its prefix tree, orders and depth marks.
#[derive(Clone, Debug)]
pub struct Gs3Context {
    instance: TernaryInstance,
    tree: PrefixTree,
    ranks: [Vec<usize>; 3],
    orders_supplied: bool,
    marks: [Vec<DepthMark>; 3],
    large_levels: BTreeSet<usize>,
}

impl Gs3Context {
    /// `orders[u]` lists the indices of part `u` from lowest to highest.
    pub fn new(instance: TernaryInstance, orders: Option<[Vec<usize>; 3]>) -> Result<Self> {
        if instance.p() != 3 {
            return Err(Error::Unsupported(format!(
                "prefix-tree partition needs p = 3, got {}",
                instance.p()
            )));
        }
        let sizes = instance.sizes();
        let orders_supplied = orders.is_some();
        let orders = orders.unwrap_or_else(|| sizes.map(|s| (0..s).collect()));
        let mut ranks: [Vec<usize>; 3] = Default::default();
        for u in 0..3 {
            ranks[u] = permutation_ranks(&orders[u], sizes[u])
                .ok_or_else(|| Error::Structural(format!("order for part {u} is not a permutation")))?;
        }
        let tree = PrefixTree::new(&instance);
        let mut marks: [Vec<DepthMark>; 3] = Default::default();
        for u in 0..3 {
            marks[u] = (0..sizes[u]).map(|x| compute_ix(&instance, &tree, u, x)).collect::<Result<_>>()?;
        }
        let n = instance.depth();
        let large_levels = (0..n)
            .filter(|&l| (0..3).any(|u| tree.level(u, l).any(|s| tree.is_large_split(u, s))))
            .collect();
        Ok(Self { instance, tree, ranks, orders_supplied, marks, large_levels })
    }

    pub fn instance(&self) -> &TernaryInstance {
        &self.instance
    }

    pub fn tree(&self) -> &PrefixTree {
        &self.tree
    }

    pub fn depth(&self) -> usize {
        self.instance.depth()
    }

    pub fn seq(&self, u: usize, x: usize) -> &[u8] {
        &self.instance.part(u).seqs[x]
    }

    pub fn rank(&self, u: usize, x: usize) -> usize {
        self.ranks[u][x]
    }

    pub fn orders_supplied(&self) -> bool {
        self.orders_supplied
    }

    pub fn mark(&self, u: usize, x: usize) -> DepthMark {
        self.marks[u][x]
    }

    /// Lengths of large splits over all parts.
    pub fn large_levels(&self) -> &BTreeSet<usize> {
        &self.large_levels
    }

    /// Some member of branch `a` lies below some member of branch `b`.
    pub(crate) fn some_below(&self, u: usize, a: &[u8], b: &[u8]) -> bool {
        let lo = self.tree.members(u, a).iter().map(|&x| self.ranks[u][x]).min();
        let hi = self.tree.members(u, b).iter().map(|&x| self.ranks[u][x]).max();
        matches!((lo, hi), (Some(l), Some(h)) if l < h)
    }

    /// Every member of branch `a` lies below every member of branch `b`.
    pub(crate) fn all_below(&self, u: usize, a: &[u8], b: &[u8]) -> bool {
        let hi = self.tree.members(u, a).iter().map(|&x| self.ranks[u][x]).max();
        let lo = self.tree.members(u, b).iter().map(|&x| self.ranks[u][x]).min();
        matches!((hi, lo), (Some(h), Some(l)) if h < l)
    }
}

fn permutation_ranks(order: &[usize], size: usize) -> Option<Vec<usize>> {
    if order.len() != size {
        return None;
    }
    let mut ranks = vec![usize::MAX; size];
    for (r, &x) in order.iter().enumerate() {
        if x >= size || ranks[x] != usize::MAX {
            return None;
        }
        ranks[x] = r;
    }
    Some(ranks)
}
