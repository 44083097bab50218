//! Proportional redistribution of exceptional and small parts of a block.

use crate::error::{Error, Result};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Redistribution {
    /// Same indexing as the input; part 0 and the small parts end up empty.
    pub parts: Vec<Vec<usize>>,
    pub targets: Vec<usize>,
    pub received: Vec<usize>,
    pub pooled: usize,
    /// Per target: `received <= 2 * pooled * own / retained`.
    pub within_bound: Vec<bool>,
}

/// Pools part 0 and every part with fewer than `threshold` atoms, then hands
/// the pooled atoms (in increasing order) to the remaining parts in
/// proportion to their sizes, rounding by largest remainder with ties to the
/// lower index.
pub fn redistribute_exceptional(parts: &[Vec<usize>], threshold: usize) -> Result<Redistribution> {
    let targets: Vec<usize> = (1..parts.len()).filter(|&j| parts[j].len() >= threshold && !parts[j].is_empty()).collect();
    if targets.is_empty() {
        return Err(Error::Degenerate("every part is below the threshold".into()));
    }
    let mut pool: Vec<usize> = Vec::new();
    let mut out: Vec<Vec<usize>> = parts.to_vec();
    for j in 0..parts.len() {
        if !targets.contains(&j) {
            pool.extend(out[j].drain(..));
        }
    }
    pool.sort_unstable();
    let retained: usize = targets.iter().map(|&j| parts[j].len()).sum();
    let n = pool.len();
    let mut share: Vec<usize> = targets.iter().map(|&j| n * parts[j].len() / retained).collect();
    let mut rem: Vec<(usize, usize)> =
        targets.iter().enumerate().map(|(i, &j)| (n * parts[j].len() % retained, i)).collect();
    rem.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    let left = n - share.iter().sum::<usize>();
    for &(_, i) in rem.iter().take(left) {
        share[i] += 1;
    }
    let mut it = pool.into_iter();
    for (i, &j) in targets.iter().enumerate() {
        out[j].extend(it.by_ref().take(share[i]));
    }
    let within_bound = targets
        .iter()
        .zip(&share)
        .map(|(&j, &s)| s * retained <= 2 * n * parts[j].len())
        .collect();
    Ok(Redistribution { parts: out, targets, received: share, pooled: n, within_bound })
}
