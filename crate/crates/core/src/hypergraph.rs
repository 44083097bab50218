//! Dense 3-partite 3-hypergraphs and bipartite graphs.

use crate::error::{structural, Result};
use fixedbitset::FixedBitSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph3 {
    labels: [Vec<String>; 3],
    edges: FixedBitSet,
}

impl Hypergraph3 {
    pub fn empty(labels: [Vec<String>; 3]) -> Self {
        let n = labels.iter().map(|l| l.len()).product();
        Self { labels, edges: FixedBitSet::with_capacity(n) }
    }

    pub fn from_fn(labels: [Vec<String>; 3], mut f: impl FnMut(usize, usize, usize) -> bool) -> Self {
        let mut h = Self::empty(labels);
        let [a, b, c] = h.dims();
        for x in 0..a {
            for y in 0..b {
                for z in 0..c {
                    if f(x, y, z) {
                        h.set_edge(x, y, z, true);
                    }
                }
            }
        }
        h
    }

    pub fn unlabeled(dims: [usize; 3], f: impl FnMut(usize, usize, usize) -> bool) -> Self {
        let labels = dims.map(|n| (0..n).map(|i| i.to_string()).collect());
        Self::from_fn(labels, f)
    }

    pub fn dims(&self) -> [usize; 3] {
        [self.labels[0].len(), self.labels[1].len(), self.labels[2].len()]
    }

    pub fn labels(&self, u: usize) -> &[String] {
        &self.labels[u]
    }

    fn idx(&self, x: usize, y: usize, z: usize) -> usize {
        let [_, b, c] = self.dims();
        (x * b + y) * c + z
    }

    pub fn is_edge(&self, x: usize, y: usize, z: usize) -> bool {
        self.edges.contains(self.idx(x, y, z))
    }

    /// Edge test with the coordinates given per part.
    pub fn is_edge_t(&self, t: [usize; 3]) -> bool {
        self.is_edge(t[0], t[1], t[2])
    }

    pub fn set_edge(&mut self, x: usize, y: usize, z: usize, on: bool) {
        let i = self.idx(x, y, z);
        self.edges.set(i, on);
    }

    pub fn edge_count(&self) -> usize {
        self.edges.count_ones(..)
    }

    /// Induced sub-hypergraph on the given index lists.
    pub fn induced(&self, keep: [&[usize]; 3]) -> Result<Self> {
        let dims = self.dims();
        for u in 0..3 {
            if let Some(&bad) = keep[u].iter().find(|&&i| i >= dims[u]) {
                return Err(structural(format!("part {u}: index {bad} out of range")));
            }
        }
        let labels = [0, 1, 2].map(|u| keep[u].iter().map(|&i| self.labels[u][i].clone()).collect());
        Ok(Self::from_fn(labels, |x, y, z| {
            self.is_edge(keep[0][x], keep[1][y], keep[2][z])
        }))
    }

    /// Link of vertex `v` in part `u`: the set of pairs from the other two
    /// parts completing an edge, as a bitset over their product.
    pub fn link(&self, u: usize, v: usize) -> FixedBitSet {
        let dims = self.dims();
        let (p, q) = other_parts(u);
        let mut out = FixedBitSet::with_capacity(dims[p] * dims[q]);
        for a in 0..dims[p] {
            for b in 0..dims[q] {
                let mut t = [0; 3];
                t[u] = v;
                t[p] = a;
                t[q] = b;
                if self.is_edge_t(t) {
                    out.insert(a * dims[q] + b);
                }
            }
        }
        out
    }
}

/// The two parts other than `u`, ascending.
pub fn other_parts(u: usize) -> (usize, usize) {
    match u {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteGraph {
    rows: usize,
    cols: usize,
    edges: FixedBitSet,
}

impl BipartiteGraph {
    pub fn empty(rows: usize, cols: usize) -> Self {
        Self { rows, cols, edges: FixedBitSet::with_capacity(rows * cols) }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut g = Self::empty(rows, cols);
        for a in 0..rows {
            for b in 0..cols {
                if f(a, b) {
                    g.edges.insert(a * cols + b);
                }
            }
        }
        g
    }

    pub fn from_edges(rows: usize, cols: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(rows, cols);
        for &(a, b) in edges {
            if a >= rows || b >= cols {
                return Err(structural(format!("edge ({a},{b}) outside {rows}x{cols}")));
            }
            g.edges.insert(a * cols + b);
        }
        Ok(g)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn has(&self, a: usize, b: usize) -> bool {
        self.edges.contains(a * self.cols + b)
    }

    pub fn edge_count(&self) -> usize {
        self.edges.count_ones(..)
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.edges.ones().map(|i| (i / self.cols, i % self.cols)).collect()
    }

    pub fn complement(&self) -> Self {
        Self::from_fn(self.rows, self.cols, |a, b| !self.has(a, b))
    }
}
