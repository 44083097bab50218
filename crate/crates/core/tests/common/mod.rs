#![allow(dead_code)]

use avgreg::generators::random::rng;
use avgreg::generators::ternary::{all_sequences, TernaryInstance};
use avgreg::gs3::{Rect, RectKind};
use avgreg::hypergraph::{BipartiteGraph, Hypergraph3};
use avgreg::rational::{int, rat};
use avgreg::{BudgetFn, GradedPartition, PartiteFunction, Rational, WeightedPart};
use num_traits::{Signed, Zero};
use rand::Rng;
use std::collections::BTreeSet;

/// Direct transcription of the edge rule: scan for the first nonzero sum.
pub fn naive_gs(p: u8, x: &[u8], y: &[u8], z: &[u8]) -> bool {
    let mut i = 0;
    while i < x.len() {
        let s = (u32::from(x[i]) + u32::from(y[i]) + u32::from(z[i])) % u32::from(p);
        if s > 0 {
            return s == 1;
        }
        i += 1;
    }
    false
}

pub fn random_function(seed: u64, n: usize, m: usize, levels: i64) -> PartiteFunction {
    let mut g = rng(seed);
    let parts = vec![WeightedPart::uniform(n).unwrap(), WeightedPart::uniform(m).unwrap()];
    PartiteFunction::from_fn(parts, |_| rat(g.gen_range(0..=levels), levels)).unwrap()
}

/// Thresholds covering every region between the breakpoints `v` and `v - delta`.
fn oracle_alphas(f: &PartiteFunction, delta: &Rational) -> Vec<Rational> {
    let mut b: Vec<Rational> = f.values().iter().flat_map(|v| [v.clone(), v - delta]).collect();
    b.sort();
    b.dedup();
    let mut out = vec![&b[0] - int(1), &b[b.len() - 1] + int(1)];
    out.extend(b.iter().cloned());
    out.extend(b.windows(2).map(|w| (&w[0] + &w[1]) / int(2)));
    out
}

fn extend(f: &PartiteFunction, alpha: &Rational, hi: &Rational, xs: &mut Vec<usize>, ys: &mut Vec<usize>) -> usize {
    let (n, m) = (f.parts()[0].len(), f.parts()[1].len());
    let mut best = xs.len();
    for x in 0..n {
        if xs.contains(&x) || !ys.iter().all(|&y| f.value(&[x, y]) > hi) {
            continue;
        }
        for y in 0..m {
            if ys.contains(&y) || !xs.iter().all(|&xi| f.value(&[xi, y]) < alpha) {
                continue;
            }
            xs.push(x);
            ys.push(y);
            best = best.max(extend(f, alpha, hi, xs, ys));
            xs.pop();
            ys.pop();
        }
    }
    best
}

/// Longest ladder over every threshold region, by depth-first extension.
pub fn ladder_oracle(f: &PartiteFunction, delta: &Rational) -> usize {
    oracle_alphas(f, delta)
        .iter()
        .map(|a| extend(f, a, &(a + delta), &mut Vec::new(), &mut Vec::new()))
        .max()
        .unwrap()
}

pub fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u32..1 << n).map(move |m| (0..n).filter(|i| m >> i & 1 == 1).collect())
}

/// Maximum over all subset pairs of `|w(G cap A'xB') - d w(A') w(B')|`.
pub fn disc2_oracle(g: &BipartiteGraph, a: &WeightedPart, b: &WeightedPart) -> Rational {
    let mut d = Rational::zero();
    for (i, j) in g.edges() {
        d += a.weight(i) * b.weight(j);
    }
    let mut best = Rational::zero();
    for ra in subsets(g.rows()) {
        for cb in subsets(g.cols()) {
            let mut s = Rational::zero();
            for &i in &ra {
                for &j in &cb {
                    let e = if g.has(i, j) { int(1) } else { int(0) };
                    s += a.weight(i) * b.weight(j) * (e - &d);
                }
            }
            best = best.max(s.abs());
        }
    }
    best
}

/// Maximum over all vertex-subset subtriads of `| |E cap C0| - d |C0| | / |X||Y||Z|`.
pub fn triad_oracle(e: &Hypergraph3, p: &BipartiteGraph, q: &BipartiteGraph, r: &BipartiteGraph) -> Rational {
    let [a, b, c] = e.dims();
    let tri = |x: usize, y: usize, z: usize| p.has(x, y) && q.has(x, z) && r.has(y, z);
    let (mut t, mut et) = (0i64, 0i64);
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
    if t == 0 {
        return Rational::zero();
    }
    let d = Rational::new(et.into(), t.into());
    let mut best = Rational::zero();
    for xs in subsets(a) {
        for ys in subsets(b) {
            for zs in subsets(c) {
                let (mut c0, mut ec0) = (0i64, 0i64);
                for &x in &xs {
                    for &y in &ys {
                        for &z in &zs {
                            if tri(x, y, z) {
                                c0 += 1;
                                ec0 += e.is_edge(x, y, z) as i64;
                            }
                        }
                    }
                }
                best = best.max((int(ec0) - &d * int(c0)).abs());
            }
        }
    }
    best / int((a * b * c) as i64)
}

/// Strong-regularity verdict from the definition, over all value windows.
pub fn strong_oracle(f: &PartiteFunction, p: &GradedPartition, eps: &Rational, fb: &BudgetFn) -> bool {
    let budget = fb.eval(p.max_b());
    for s in p.sides() {
        if &s.part_mass(f.parts(), 0) >= eps {
            return false;
        }
    }
    for (key, members) in p.cells() {
        if key.contains(&0) {
            continue;
        }
        let vals: Vec<(Rational, Rational)> = members
            .iter()
            .map(|&i| (f.value_at(i).clone(), f.tuple_weight(&f.grid().decode(i))))
            .collect();
        let mass: Rational = vals.iter().map(|v| &v.1).sum();
        if mass.is_zero() {
            continue;
        }
        let ok = vals.iter().any(|(lo, _)| {
            vals.iter().any(|(hi, _)| {
                let out: Rational = vals.iter().filter(|(v, _)| v < lo || v > hi).map(|v| &v.1).sum();
                hi >= lo && &(hi - lo) < eps && out < &budget * &mass
            })
        });
        if !ok {
            return false;
        }
    }
    true
}

pub fn naive_mass(inst: &TernaryInstance, u: usize, sigma: &[u8]) -> Rational {
    let p = inst.part(u);
    p.seqs.iter().zip(&p.weights).filter(|(s, _)| s.starts_with(sigma)).map(|(_, w)| w.clone()).sum()
}

pub fn naive_children(inst: &TernaryInstance, u: usize, sigma: &[u8]) -> Vec<u8> {
    let p = inst.part(u);
    let mut c: Vec<u8> =
        p.seqs.iter().filter(|s| s.len() > sigma.len() && s.starts_with(sigma)).map(|s| s[sigma.len()]).collect();
    c.sort();
    c.dedup();
    c
}

fn neg_sum(a: &[u8], b: &[u8]) -> Vec<u8> {
    a.iter().zip(b).map(|(&x, &y)| (9 - x - y) % 3).collect()
}

/// The R and sR conditions evaluated from the raw point lists.
fn naive_rect(inst: &TernaryInstance, u: usize, v: usize, s: &[u8], t: &[u8]) -> Option<Rect> {
    let l = s.len();
    let w = 3 - u - v;
    let rho = neg_sum(&s[..l - 1], &t[..l - 1]);
    let zero = int(0);
    if naive_mass(inst, u, s) == zero || naive_mass(inst, v, t) == zero || naive_mass(inst, w, &rho) == zero {
        return None;
    }
    let cs = [naive_children(inst, u, &s[..l - 1]), naive_children(inst, v, &t[..l - 1]), naive_children(inst, w, &rho)];
    if cs.iter().all(|c| c.len() >= 2) {
        return Some(Rect { kind: RectKind::SR, sigma: s.to_vec(), tau: t.to_vec(), j0: None });
    }
    if cs[2].len() != 1 {
        return None;
    }
    let j0 = (s[l - 1] + t[l - 1] + cs[2][0]) % 3;
    (j0 != 0).then(|| Rect { kind: RectKind::R, sigma: s.to_vec(), tau: t.to_vec(), j0: Some(j0) })
}

/// Every R and sR rectangle on `(u, v)`, scanning all of `F_3^l x F_3^l`.
pub fn naive_enumerate(inst: &TernaryInstance, u: usize, v: usize) -> Vec<Rect> {
    let mut out = Vec::new();
    for l in 1..=inst.depth() {
        for s in all_sequences(3, l) {
            for t in all_sequences(3, l) {
                if let Some(r) = naive_rect(inst, u, v, &s, &t) {
                    out.push(r);
                }
            }
        }
    }
    out
}

/// Minimal sR rectangles, then R rectangles outside every selected sR one.
pub fn family_oracle(all: &[Rect]) -> BTreeSet<Rect> {
    let sr: Vec<&Rect> = all.iter().filter(|r| r.kind == RectKind::SR).collect();
    let chosen: Vec<&Rect> =
        sr.iter().copied().filter(|r| !sr.iter().any(|m| m.len() < r.len() && m.contains(r))).collect();
    let rs = all.iter().filter(|r| r.kind == RectKind::R && !chosen.iter().any(|m| m.contains(r)));
    chosen.iter().copied().chain(rs).cloned().collect()
}
