//! Order-property ladders in binary `[0,1]`-valued functions.

use crate::error::{structural, Error, Result};
use crate::function::PartiteFunction;
use crate::generators::random::rng;
use crate::rational::{int, Rational};
use num_traits::Signed;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

pub const DEFAULT_EXACT_CAP: usize = 12;
const HARD_CAP: usize = 64;

/// Sequences `x_1..x_l`, `y_1..y_l` (distinct within each side) with
/// `f(x_i, y_j) < alpha` for `i < j` and `f(x_i, y_j) > alpha + delta` for
/// `j < i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LadderWitness {
    pub xs: Vec<usize>,
    pub ys: Vec<usize>,
    #[serde(with = "crate::rational::as_string")]
    pub alpha: Rational,
    #[serde(with = "crate::rational::as_string")]
    pub delta: Rational,
}

impl LadderWitness {
    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }
}

fn check_binary(f: &PartiteFunction) -> Result<()> {
    if f.arity() != 2 {
        return Err(structural(format!("expected a binary function, arity is {}", f.arity())));
    }
    Ok(())
}

/// Checks the ladder conditions literally.
pub fn validate_ladder(f: &PartiteFunction, w: &LadderWitness) -> bool {
    if f.arity() != 2 || w.xs.len() != w.ys.len() || w.xs.is_empty() || w.delta.is_negative() {
        return false;
    }
    let [nx, ny] = [f.parts()[0].len(), f.parts()[1].len()];
    if w.xs.iter().any(|&x| x >= nx) || w.ys.iter().any(|&y| y >= ny) {
        return false;
    }
    let distinct = |v: &[usize]| {
        let mut s = v.to_vec();
        s.sort_unstable();
        s.windows(2).all(|p| p[0] != p[1])
    };
    if !distinct(&w.xs) || !distinct(&w.ys) {
        return false;
    }
    let hi = &w.alpha + &w.delta;
    for i in 0..w.len() {
        for j in 0..w.len() {
            let v = f.value(&[w.xs[i], w.ys[j]]);
            if i < j && v >= &w.alpha {
                return false;
            }
            if j < i && v <= &hi {
                return false;
            }
        }
    }
    true
}

/// Thresholds `v + eta` for every distinct value `v`, where `eta` is half the
/// least positive `v_b - v_a - delta` (or 1/2 if there is none). Any valid
/// ladder is witnessed by one of these.
pub fn alpha_candidates(f: &PartiteFunction, delta: &Rational) -> Vec<Rational> {
    let mut vals: Vec<Rational> = f.values().to_vec();
    vals.sort();
    vals.dedup();
    let mut gap: Option<Rational> = None;
    for a in &vals {
        for b in &vals {
            let g = b - a - delta;
            if g.is_positive() && gap.as_ref().map_or(true, |m| &g < m) {
                gap = Some(g);
            }
        }
    }
    let eta = gap.unwrap_or_else(|| int(1)) / int(2);
    vals.into_iter().map(|v| v + &eta).collect()
}

struct Masks {
    /// `upper[x]`: bitmask of `y` with `f(x, y) < alpha`.
    upper: Vec<u64>,
    /// `lower_col[y]`: bitmask of `x` with `f(x, y) > alpha + delta`.
    lower_col: Vec<u64>,
    nx: usize,
    ny: usize,
}

impl Masks {
    fn new(f: &PartiteFunction, alpha: &Rational, delta: &Rational) -> Self {
        let (nx, ny) = (f.parts()[0].len(), f.parts()[1].len());
        let hi = alpha + delta;
        let mut upper = vec![0u64; nx];
        let mut lower_col = vec![0u64; ny];
        for x in 0..nx {
            for y in 0..ny {
                let v = f.value(&[x, y]);
                if v < alpha {
                    upper[x] |= 1 << y;
                }
                if v > &hi {
                    lower_col[y] |= 1 << x;
                }
            }
        }
        Self { upper, lower_col, nx, ny }
    }

    fn full(n: usize) -> u64 {
        if n == 64 {
            u64::MAX
        } else {
            (1u64 << n) - 1
        }
    }

    /// Longest ladder by depth-first extension at the end of the sequence.
    fn longest(&self) -> (Vec<usize>, Vec<usize>) {
        let mut best = (Vec::new(), Vec::new());
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        self.dfs(Self::full(self.nx), Self::full(self.ny), &mut xs, &mut ys, &mut best);
        best
    }

    fn dfs(
        &self,
        xc: u64,
        yc: u64,
        xs: &mut Vec<usize>,
        ys: &mut Vec<usize>,
        best: &mut (Vec<usize>, Vec<usize>),
    ) {
        if xs.len() > best.0.len() {
            *best = (xs.clone(), ys.clone());
        }
        let room = xc.count_ones().min(yc.count_ones()) as usize;
        if xs.len() + room <= best.0.len() {
            return;
        }
        let mut xm = xc;
        while xm != 0 {
            let x = xm.trailing_zeros() as usize;
            xm &= xm - 1;
            let mut ym = yc;
            while ym != 0 {
                let y = ym.trailing_zeros() as usize;
                ym &= ym - 1;
                xs.push(x);
                ys.push(y);
                // later x' need f(x', y_i) high for all earlier i, later y'
                // need f(x_i, y') low for all earlier i
                let nxc = (xc & self.lower_col[y]) & !(1 << x);
                let nyc = (yc & self.upper[x]) & !(1 << y);
                self.dfs(nxc, nyc, xs, ys, best);
                xs.pop();
                ys.pop();
                if best.0.len() >= xs.len() + room {
                    return;
                }
            }
        }
    }
}

/// Maximum ladder length by exhaustive search over all threshold candidates.
pub fn max_ladder_exact(f: &PartiteFunction, delta: &Rational, cap: usize) -> Result<(usize, LadderWitness)> {
    check_binary(f)?;
    if delta.is_negative() {
        return Err(Error::Parameter(format!("negative gap {delta}")));
    }
    let cap = cap.min(HARD_CAP);
    for (i, p) in f.parts().iter().enumerate() {
        if p.len() > cap {
            return Err(Error::CapExceeded { what: format!("part {i} size"), size: p.len(), cap });
        }
    }
    let cands = alpha_candidates(f, delta);
    let results: Vec<(usize, LadderWitness)> = cands
        .par_iter()
        .map(|alpha| {
            let (xs, ys) = Masks::new(f, alpha, delta).longest();
            (xs.len(), LadderWitness { xs, ys, alpha: alpha.clone(), delta: delta.clone() })
        })
        .collect();
    let best = results
        .into_iter()
        .reduce(|a, b| if b.0 > a.0 { b } else { a })
        .expect("at least one value");
    debug_assert!(validate_ladder(f, &best.1));
    Ok(best)
}

/// Randomized greedy lower bound; the returned witness always validates.
pub fn max_ladder_greedy(
    f: &PartiteFunction,
    delta: &Rational,
    seed: u64,
    iterations: usize,
) -> Result<(usize, LadderWitness)> {
    check_binary(f)?;
    if delta.is_negative() {
        return Err(Error::Parameter(format!("negative gap {delta}")));
    }
    let (nx, ny) = (f.parts()[0].len(), f.parts()[1].len());
    let cands = alpha_candidates(f, delta);
    let mut g = rng(seed);
    let mut best = LadderWitness { xs: vec![0], ys: vec![0], alpha: cands[0].clone(), delta: delta.clone() };
    for _ in 0..iterations.max(1) {
        let alpha = &cands[g.gen_range(0..cands.len())];
        let hi = alpha + delta;
        let mut xs: Vec<usize> = Vec::new();
        let mut ys: Vec<usize> = Vec::new();
        loop {
            let xc: Vec<usize> = (0..nx)
                .filter(|x| !xs.contains(x) && ys.iter().all(|&y| f.value(&[*x, y]) > &hi))
                .collect();
            let yc: Vec<usize> = (0..ny)
                .filter(|y| !ys.contains(y) && xs.iter().all(|&x| f.value(&[x, *y]) < alpha))
                .collect();
            if xc.is_empty() || yc.is_empty() {
                break;
            }
            xs.push(xc[g.gen_range(0..xc.len())]);
            ys.push(yc[g.gen_range(0..yc.len())]);
        }
        if xs.len() > best.len() {
            best = LadderWitness { xs, ys, alpha: alpha.clone(), delta: delta.clone() };
        }
    }
    if !validate_ladder(f, &best) {
        return Err(Error::Contract("greedy produced an invalid ladder".into()));
    }
    Ok((best.len(), best))
}

