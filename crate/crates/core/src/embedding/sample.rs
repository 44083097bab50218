use super::monotone::{check_monotone, Monotonicity};
use crate::error::{Error, Result};
use crate::generators::ternary::{all_sequences, gs_edge_unchecked, TernaryInstance, TernaryPart};
use crate::gs3::{compute_null_Z, Gs3Context};
use crate::hypergraph::Hypergraph3;
use crate::rational::{int, Rational};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Random zero-weight placements tried per sample.
const WEIGHT_TRIALS: usize = 24;

#[derive(Clone, Debug, Serialize)]
pub struct CommonSample {
    #[serde(skip)]
    pub instance: TernaryInstance,
    pub orders: [Vec<usize>; 3],
    pub attempts: usize,
    pub accepted: usize,
    pub restarts: usize,
    pub acceptance_rate: f64,
    pub zero_weights: [usize; 3],
    /// Zero-weight points outside the Z ledger.
    pub zero_outside_z: usize,
}

fn gs_hypergraph(parts: &[Vec<Vec<u8>>; 3]) -> Hypergraph3 {
    let dims = [parts[0].len(), parts[1].len(), parts[2].len()];
    Hypergraph3::unlabeled(dims, |x, y, z| gs_edge_unchecked(3, &parts[0][x], &parts[1][y], &parts[2][z]))
}

/// One growth round, smallest part first; `None` once some part cannot grow.
fn grow(
    rng: &mut ChaCha8Rng,
    pool: &[Vec<u8>],
    sizes: [usize; 3],
    attempts: &mut usize,
    accepted: &mut usize,
    max_attempts: usize,
) -> Option<[Vec<Vec<u8>>; 3]> {
    let mut parts: [Vec<Vec<u8>>; 3] = Default::default();
    while let Some(u) = (0..3).filter(|&u| parts[u].len() < sizes[u]).min_by_key(|&u| (parts[u].len(), u)) {
        let mut cands: Vec<&Vec<u8>> = pool.iter().filter(|s| !parts[u].contains(s)).collect();
        cands.shuffle(rng);
        let mut grown = false;
        for s in cands {
            if *attempts >= max_attempts {
                return None;
            }
            *attempts += 1;
            parts[u].push(s.clone());
            if check_monotone(&gs_hypergraph(&parts)).is_monotone() {
                *accepted += 1;
                grown = true;
                break;
            }
            parts[u].pop();
        }
        if !grown {
            return None;
        }
    }
    Some(parts)
}

fn weigh(rng: &mut ChaCha8Rng, parts: &[Vec<Vec<u8>>; 3], n: usize, zero_fraction: f64) -> Result<TernaryInstance> {
    let mut tparts = Vec::with_capacity(3);
    for seqs in parts {
        let m = seqs.len();
        let zeros = ((zero_fraction * m as f64).ceil() as usize).min(m - 1);
        let mut idx: Vec<usize> = (0..m).collect();
        idx.shuffle(rng);
        let mut raw = vec![0i64; m];
        for &i in &idx[zeros..] {
            raw[i] = rng.gen_range(1..=5);
        }
        let total: i64 = raw.iter().sum();
        let weights: Vec<Rational> = raw.iter().map(|&r| int(r) / int(total)).collect();
        tparts.push(TernaryPart { seqs: seqs.clone(), weights });
    }
    let tparts: [TernaryPart; 3] = tparts.try_into().map_err(|_| Error::Contract("part count".into()))?;
    TernaryInstance::new(3, n, tparts)
}

fn zero_outside_z(inst: &TernaryInstance) -> Result<usize> {
    let ctx = Gs3Context::new(inst.clone(), None)?;
    let z = compute_null_Z(&ctx);
    Ok((0..3)
        .map(|u| {
            let w = &inst.part(u).weights;
            (0..w.len()).filter(|&x| w[x] == int(0) && !z[u].contains(&x)).count()
        })
        .sum())
}

/// Grows three subsets of `F_3^n`, smallest part first, trying unused
/// sequences in random order and keeping one only if the induced
/// sub-hypergraph stays monotone; a stuck round restarts until
/// `max_attempts` candidate tests are spent. A `zero_fraction` share of each
/// part (rounded up, at least one point left positive) gets weight 0, placed
/// to keep as many zero-weight points outside the Z ledger as possible.
pub fn sample_common_sub(
    seed: u64,
    n: usize,
    sizes: [usize; 3],
    zero_fraction: f64,
    max_attempts: usize,
) -> Result<CommonSample> {
    if n == 0 {
        return Err(Error::Parameter("depth must be positive".into()));
    }
    if !(0.0..1.0).contains(&zero_fraction) {
        return Err(Error::Parameter(format!("zero fraction {zero_fraction} outside [0,1)")));
    }
    let pool = all_sequences(3, n);
    if sizes.iter().any(|&s| s == 0 || s > pool.len()) {
        return Err(Error::Parameter(format!("part sizes {sizes:?} not in 1..={}", pool.len())));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut attempts, mut accepted, mut restarts) = (0, 0, 0);
    let parts = loop {
        if let Some(p) = grow(&mut rng, &pool, sizes, &mut attempts, &mut accepted, max_attempts) {
            break p;
        }
        if attempts >= max_attempts {
            return Err(Error::Degenerate(format!(
                "no monotone sample of sizes {sizes:?} after {attempts} attempts, {restarts} restarts (acceptance {:.3})",
                accepted as f64 / attempts.max(1) as f64
            )));
        }
        restarts += 1;
    };
    let mut best: Option<(usize, TernaryInstance)> = None;
    for _ in 0..WEIGHT_TRIALS {
        let inst = weigh(&mut rng, &parts, n, zero_fraction)?;
        let score = zero_outside_z(&inst)?;
        if best.as_ref().map_or(true, |(s, _)| score > *s) {
            best = Some((score, inst));
        }
    }
    let (score, instance) = best.ok_or_else(|| Error::Contract("no weighting".into()))?;
    let orders = match check_monotone(&instance.to_hypergraph()) {
        Monotonicity::Monotone(w) => w.orders,
        Monotonicity::NotMonotone(_) => return Err(Error::Contract("sample lost monotonicity".into())),
    };
    let zero_weights = [0, 1, 2].map(|u| instance.part(u).weights.iter().filter(|w| **w == int(0)).count());
    Ok(CommonSample {
        instance,
        orders,
        attempts,
        accepted,
        restarts,
        acceptance_rate: accepted as f64 / attempts.max(1) as f64,
        zero_weights,
        zero_outside_z: score,
    })
}
