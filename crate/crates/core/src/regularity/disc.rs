//! Bipartite discrepancy: exact subset scan and a spectral proxy.

use crate::error::{Error, Result};
use crate::hypergraph::BipartiteGraph;
use crate::rational::{to_f64, Rational};
use crate::weighted::WeightedPart;
use nalgebra::DMatrix;
use num_traits::{Signed, Zero};
use serde::Serialize;

pub const DISC2_EXACT_CAP: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Disc2 {
    /// Least `eps` with `|w(G cap A'xB') - d w(A') w(B')| <= eps w(A) w(B)` for all subsets.
    #[serde(with = "crate::rational::as_string")]
    pub epsilon: Rational,
    #[serde(with = "crate::rational::as_string")]
    pub density: Rational,
    pub witness_rows: Vec<usize>,
    pub witness_cols: Vec<usize>,
}

fn check_grounds(g: &BipartiteGraph, a: &WeightedPart, b: &WeightedPart) -> Result<()> {
    if g.rows() != a.len() || g.cols() != b.len() {
        return Err(crate::error::structural(format!(
            "graph is {}x{}, weights cover {}x{}",
            g.rows(),
            g.cols(),
            a.len(),
            b.len()
        )));
    }
    Ok(())
}

/// Edge density `w(G) / (w(A) w(B))`.
pub fn weighted_density(g: &BipartiteGraph, a: &WeightedPart, b: &WeightedPart) -> Rational {
    let mut s = Rational::zero();
    for (i, j) in g.edges() {
        s += a.weight(i) * b.weight(j);
    }
    s
}

/// Exact `disc_2` by enumerating every subset of the smaller side; for each,
/// the optimal subset of the other side collects all columns of one sign.
pub fn disc2_exact(g: &BipartiteGraph, a: &WeightedPart, b: &WeightedPart) -> Result<Disc2> {
    check_grounds(g, a, b)?;
    let small = g.rows().min(g.cols());
    if small > DISC2_EXACT_CAP {
        return Err(Error::CapExceeded {
            what: "smaller side (use disc2_proxy)".into(),
            size: small,
            cap: DISC2_EXACT_CAP,
        });
    }
    let transpose = g.rows() > g.cols();
    let (rows, cols) = if transpose { (g.cols(), g.rows()) } else { (g.rows(), g.cols()) };
    let (wr, wc) = if transpose { (b, a) } else { (a, b) };
    let has = |r: usize, c: usize| if transpose { g.has(c, r) } else { g.has(r, c) };
    let d = weighted_density(g, a, b);
    // h[r][c] = w_r w_c (G_rc - d)
    let h: Vec<Vec<Rational>> = (0..rows)
        .map(|r| {
            (0..cols)
                .map(|c| {
                    let e = if has(r, c) { Rational::from_integer(1.into()) } else { Rational::zero() };
                    wr.weight(r) * wc.weight(c) * (e - &d)
                })
                .collect()
        })
        .collect();
    let mut best = (Rational::zero(), 0u64, Vec::new());
    let mut col = vec![Rational::zero(); cols];
    for mask in 0u64..(1u64 << rows) {
        for (c, v) in col.iter_mut().enumerate() {
            *v = (0..rows).filter(|r| mask >> r & 1 == 1).map(|r| &h[r][c]).sum();
        }
        let pos: Rational = col.iter().filter(|v| v.is_positive()).sum();
        let neg: Rational = -col.iter().filter(|v| v.is_negative()).sum::<Rational>();
        let (val, take_pos) = if pos >= neg { (pos, true) } else { (neg, false) };
        if val > best.0 {
            let cs = (0..cols)
                .filter(|&c| if take_pos { col[c].is_positive() } else { col[c].is_negative() })
                .collect();
            best = (val, mask, cs);
        }
    }
    let rs: Vec<usize> = (0..rows).filter(|r| best.1 >> r & 1 == 1).collect();
    let (witness_rows, witness_cols) = if transpose { (best.2, rs) } else { (rs, best.2) };
    Ok(Disc2 { epsilon: best.0, density: d, witness_rows, witness_cols })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Disc2Proxy {
    /// Largest singular value of `sqrt(w_a w_b) (G_ab - d)`; `disc_2 <= proxy`.
    pub proxy: f64,
    pub density: f64,
    pub approximate: bool,
}

/// Spectral upper bound: for indicator vectors `u`, `v`,
/// `sum_{A'xB'} w_a w_b (G - d) = (sqrt(w) 1_A')^T M (sqrt(w) 1_B') <= sigma_1`.
pub fn disc2_proxy(g: &BipartiteGraph, a: &WeightedPart, b: &WeightedPart) -> Result<Disc2Proxy> {
    check_grounds(g, a, b)?;
    let d = to_f64(&weighted_density(g, a, b));
    let sa: Vec<f64> = a.weights().iter().map(|w| to_f64(w).sqrt()).collect();
    let sb: Vec<f64> = b.weights().iter().map(|w| to_f64(w).sqrt()).collect();
    let m = DMatrix::from_fn(g.rows(), g.cols(), |i, j| {
        sa[i] * sb[j] * (if g.has(i, j) { 1.0 } else { 0.0 } - d)
    });
    let sv = m.singular_values();
    let proxy = sv.iter().cloned().fold(0.0, f64::max);
    Ok(Disc2Proxy { proxy, density: d, approximate: true })
}
