//! Seeded generators. Every stream is a `ChaCha8Rng` seeded with
//! `seed_from_u64(seed)` and consumed in a fixed documented order, so
//! instances are reproducible across platforms.

use super::average::AverageSystem;
use crate::error::{Error, Result};
use crate::hypergraph::BipartiteGraph;
use crate::partition::edge_sets;
use crate::rational::{in_unit, Rational};
use crate::weighted::WeightedPart;
use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Bernoulli trial with exact rational probability: one `u32` draw `r`,
/// success iff `r < p * 2^32`.
pub fn bernoulli(rng: &mut ChaCha8Rng, p: &Rational) -> bool {
    let r = BigInt::from(rng.next_u32());
    r * p.denom() < p.numer() * (BigInt::from(1u64) << 32)
}

/// Random average system with uniform weights everywhere.
///
/// Stream layout: for each `e` in lexicographic order, for each `e`-tuple in
/// row-major order, for each `omega` point in order, one `u32` draw decides
/// membership via [`bernoulli`].
pub fn gen_random_average(
    seed: u64,
    sizes: &[usize],
    d: usize,
    omega_size: usize,
    density: &Rational,
) -> Result<AverageSystem> {
    if sizes.iter().any(|&s| s == 0) || omega_size == 0 {
        return Err(Error::Parameter("sizes must be positive".into()));
    }
    if !in_unit(density) {
        return Err(Error::Parameter(format!("density {density} outside [0,1]")));
    }
    let mut g = rng(seed);
    let parts = sizes.iter().map(|&n| WeightedPart::uniform(n)).collect::<Result<Vec<_>>>()?;
    let omega = WeightedPart::uniform_labeled((0..omega_size).map(|i| format!("w{i}")).collect())?;
    let families = edge_sets(sizes.len(), d)
        .iter()
        .map(|e| {
            let n: usize = e.iter().map(|&i| sizes[i]).product();
            (0..n)
                .map(|_| {
                    let mut s = FixedBitSet::with_capacity(omega_size);
                    for w in 0..omega_size {
                        if bernoulli(&mut g, density) {
                            s.insert(w);
                        }
                    }
                    s
                })
                .collect()
        })
        .collect();
    AverageSystem::new(d, parts, omega, families)
}

/// Random bipartite graph; one draw per cell in row-major order.
pub fn gen_random_bipartite(seed: u64, rows: usize, cols: usize, density: &Rational) -> BipartiteGraph {
    let mut g = rng(seed);
    BipartiteGraph::from_fn(rows, cols, |_, _| bernoulli(&mut g, density))
}
