//! Ternary discrepancy of an edge set relative to a triad of bipartite graphs.

use crate::error::{structural, Error, Result};
use crate::generators::random::rng;
use crate::hypergraph::{BipartiteGraph, Hypergraph3};
use crate::rational::Rational;
use rand::Rng;
use serde::Serialize;

pub const TRIAD_EXACT_CAP: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TriadMode {
    Exact,
    Sampled { samples: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TriadStats {
    pub triangles: u64,
    pub edge_triangles: u64,
    /// `|E cap T| / |T|` (zero when there are no triangles).
    #[serde(with = "crate::rational::as_string")]
    pub density: Rational,
    /// Densities of the three bipartite graphs.
    #[serde(with = "crate::rational::as_string_vec")]
    pub graph_densities: Vec<Rational>,
    /// `max | |E cap C_0| - d |C_0| | / (|X||Y||Z|)` over the subtriads examined.
    #[serde(with = "crate::rational::as_string")]
    pub deviation: Rational,
    pub witness: [Vec<usize>; 3],
    pub exact: bool,
    /// `deviation <= eps_1 d_P d_Q d_R`.
    pub pass: bool,
}

fn check(e: &Hypergraph3, p: &BipartiteGraph, q: &BipartiteGraph, r: &BipartiteGraph) -> Result<()> {
    let [a, b, c] = e.dims();
    if (p.rows(), p.cols()) != (a, b) || (q.rows(), q.cols()) != (a, c) || (r.rows(), r.cols()) != (b, c) {
        return Err(structural("triad graphs do not match the hypergraph parts"));
    }
    Ok(())
}

fn ratio(n: i64, d: i64) -> Rational {
    if d == 0 {
        Rational::from_integer(0.into())
    } else {
        Rational::new(n.into(), d.into())
    }
}

/// Deviation scaled by `|T|`: for the subtriad on `X' x Y' x Z'`,
/// `|T| |E cap C_0| - |E cap T| |C_0|`.
fn scaled(
    e: &Hypergraph3,
    tri: &dyn Fn(usize, usize, usize) -> bool,
    xs: &[bool],
    ys: &[bool],
    zs: &[bool],
    t: i64,
    et: i64,
) -> i64 {
    let [a, b, c] = e.dims();
    let mut s = 0;
    for x in (0..a).filter(|&x| xs[x]) {
        for y in (0..b).filter(|&y| ys[y]) {
            for z in (0..c).filter(|&z| zs[z]) {
                if tri(x, y, z) {
                    s += if e.is_edge(x, y, z) { t - et } else { -et };
                }
            }
        }
    }
    s
}

/// Exact mode enumerates every `X' x Y'` and picks the best `Z'` by sign;
/// sampled mode draws random vertex subsets.
pub fn verify_disc23_triad(
    e: &Hypergraph3,
    p: &BipartiteGraph,
    q: &BipartiteGraph,
    r: &BipartiteGraph,
    eps1: &Rational,
    mode: TriadMode,
) -> Result<TriadStats> {
    check(e, p, q, r)?;
    let [a, b, c] = e.dims();
    let tri = |x: usize, y: usize, z: usize| p.has(x, y) && q.has(x, z) && r.has(y, z);
    let mut t = 0i64;
    let mut et = 0i64;
    for x in 0..a {
        for y in 0..b {
            for z in 0..c {
                if tri(x, y, z) {
                    t += 1;
                    et += e.is_edge(x, y, z) as i64;
                }
            }
        }
    }
    let mut best = (0i64, [Vec::new(), Vec::new(), Vec::new()]);
    let exact = matches!(mode, TriadMode::Exact);
    match mode {
        TriadMode::Exact => {
            if a + b > TRIAD_EXACT_CAP {
                return Err(Error::CapExceeded { what: "|X| + |Y|".into(), size: a + b, cap: TRIAD_EXACT_CAP });
            }
            let mut col = vec![0i64; c];
            for mx in 0u64..(1 << a) {
                for my in 0u64..(1 << b) {
                    col.iter_mut().for_each(|v| *v = 0);
                    for x in (0..a).filter(|x| mx >> x & 1 == 1) {
                        for y in (0..b).filter(|y| my >> y & 1 == 1) {
                            if !p.has(x, y) {
                                continue;
                            }
                            for (z, v) in col.iter_mut().enumerate() {
                                if q.has(x, z) && r.has(y, z) {
                                    *v += if e.is_edge(x, y, z) { t - et } else { -et };
                                }
                            }
                        }
                    }
                    let pos: i64 = col.iter().filter(|v| **v > 0).sum();
                    let neg: i64 = -col.iter().filter(|v| **v < 0).sum::<i64>();
                    let (val, sign) = if pos >= neg { (pos, 1) } else { (neg, -1) };
                    if val > best.0 {
                        let zs = (0..c).filter(|&z| col[z] * sign > 0).collect();
                        let xs = (0..a).filter(|x| mx >> x & 1 == 1).collect();
                        let ys = (0..b).filter(|y| my >> y & 1 == 1).collect();
                        best = (val, [xs, ys, zs]);
                    }
                }
            }
        }
        TriadMode::Sampled { samples, seed } => {
            let mut g = rng(seed);
            for _ in 0..samples {
                let xs: Vec<bool> = (0..a).map(|_| g.gen()).collect();
                let ys: Vec<bool> = (0..b).map(|_| g.gen()).collect();
                let zs: Vec<bool> = (0..c).map(|_| g.gen()).collect();
                let v = scaled(e, &tri, &xs, &ys, &zs, t, et).abs();
                if v > best.0 {
                    let pick = |s: &[bool]| (0..s.len()).filter(|&i| s[i]).collect();
                    best = (v, [pick(&xs), pick(&ys), pick(&zs)]);
                }
            }
        }
    }
    let vol = (a * b * c) as i64;
    let deviation = if t == 0 || vol == 0 {
        Rational::from_integer(0.into())
    } else {
        Rational::new(best.0.into(), (t * vol).into())
    };
    let dens = |g: &BipartiteGraph| ratio(g.edge_count() as i64, (g.rows() * g.cols()) as i64);
    let graph_densities = vec![dens(p), dens(q), dens(r)];
    let pass = deviation <= eps1 * &graph_densities[0] * &graph_densities[1] * &graph_densities[2];
    Ok(TriadStats {
        triangles: t as u64,
        edge_triangles: et as u64,
        density: ratio(et, t),
        graph_densities,
        deviation,
        witness: best.1,
        exact,
        pass,
    })
}
