//! Measure-zero sets: the Z points and the RZ and sRZ rectangles.

use super::family::{enumerate_R_sR, RFamily, RectKind};
use super::tree::{child, i_sum_unchecked};
use super::{pair_index, third, Gs3Context, PAIRS};
use crate::error::{Error, Result};
use crate::rational::{zero, Rational};
use serde::Serialize;
use std::collections::{BTreeSet, HashMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum NullKind {
    RZ,
    SRZ,
}

/// `[sigma] x [tau]` on the canonical pair `(u, v)`, `u < v`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct NullRect {
    pub kind: NullKind,
    pub u: usize,
    pub v: usize,
    #[serde(serialize_with = "super::ser_seq")]
    pub sigma: Vec<u8>,
    #[serde(serialize_with = "super::ser_seq")]
    pub tau: Vec<u8>,
    pub source: String,
}

/// Points `x` with `i(x) - 1` a large-split length.
#[allow(non_snake_case)]
pub fn compute_null_Z(ctx: &Gs3Context) -> [BTreeSet<usize>; 3] {
    let levels = ctx.large_levels();
    let sizes = ctx.instance().sizes();
    let mut z: [BTreeSet<usize>; 3] = Default::default();
    for u in 0..3 {
        z[u] = (0..sizes[u])
            .filter(|&x| ctx.mark(u, x).finite().is_some_and(|i| levels.contains(&(i - 1))))
            .collect();
    }
    z
}

fn push_rect(
    out: &mut Vec<NullRect>,
    kind: NullKind,
    (a, sa): (usize, &[u8]),
    (b, sb): (usize, &[u8]),
    source: &str,
) {
    let (u, v, sigma, tau) = if a < b { (a, b, sa, sb) } else { (b, a, sb, sa) };
    out.push(NullRect { kind, u, v, sigma: sigma.to_vec(), tau: tau.to_vec(), source: source.to_string() });
}

/// RZ rectangles next to every R rectangle and the three sRZ kinds next to
/// every sR member; only rectangles meeting both parts are listed.
#[allow(non_snake_case)]
pub fn compute_RZ(ctx: &Gs3Context, families: &[RFamily; 3]) -> Result<Vec<NullRect>> {
    let t = ctx.tree();
    let mut out = Vec::new();
    for (k, &(u, v)) in PAIRS.iter().enumerate() {
        if (families[k].u, families[k].v) != (u, v) {
            return Err(Error::Parameter("families must follow the canonical pair order".into()));
        }
        for r in enumerate_R_sR(ctx, u, v)?.iter().filter(|r| r.kind == RectKind::R) {
            let l = r.len();
            let label = r.label();
            let (s0, t0) = (&r.sigma[..l - 1], &r.tau[..l - 1]);
            for a in t.present_children(u, s0) {
                for b in t.present_children(v, t0) {
                    let (s1, t1) = (child(s0, a), child(t0, b));
                    if !t.positive(u, &s1) || !t.positive(v, &t1) {
                        push_rect(&mut out, NullKind::RZ, (u, &s1), (v, &t1), &label);
                    }
                }
            }
        }
        let w = third(u, v);
        for r in families[k].members.iter().filter(|r| r.kind == RectKind::SR) {
            let l = r.len();
            let label = r.label();
            let (s0, t0) = (&r.sigma[..l - 1], &r.tau[..l - 1]);
            let r0 = i_sum_unchecked(t0, s0);
            let sides = [(u, s0.to_vec()), (v, t0.to_vec()), (w, r0)];
            for (p, q) in [(0, 1), (0, 2), (1, 2)] {
                let (pu, ps) = &sides[p];
                let (qu, qs) = &sides[q];
                for a in t.present_children(*pu, ps) {
                    for b in t.present_children(*qu, qs) {
                        let (s1, t1) = (child(ps, a), child(qs, b));
                        if !t.positive(*pu, &s1) || !t.positive(*qu, &t1) {
                            push_rect(&mut out, NullKind::SRZ, (*pu, &s1), (*qu, &t1), &label);
                        }
                    }
                }
            }
        }
    }
    out.sort();
    out.dedup_by(|a, b| a.u == b.u && a.v == b.v && a.sigma == b.sigma && a.tau == b.tau && a.kind == b.kind);
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct NullLedger {
    pub large_levels: Vec<usize>,
    pub z: [BTreeSet<usize>; 3],
    pub rects: Vec<NullRect>,
    #[serde(skip)]
    index: [HashMap<(Vec<u8>, Vec<u8>), NullKind>; 3],
}

impl NullLedger {
    pub fn new(ctx: &Gs3Context, families: &[RFamily; 3]) -> Result<Self> {
        let z = compute_null_Z(ctx);
        let rects = compute_RZ(ctx, families)?;
        let mut index: [HashMap<(Vec<u8>, Vec<u8>), NullKind>; 3] = Default::default();
        for r in &rects {
            index[pair_index(r.u, r.v)].entry((r.sigma.clone(), r.tau.clone())).or_insert(r.kind);
        }
        Ok(Self { large_levels: ctx.large_levels().iter().copied().collect(), z, rects, index })
    }

    /// The rectangle kind containing `(x, y)` on canonical pair `(u, v)`.
    pub fn rect_of(&self, u: usize, v: usize, x: &[u8], y: &[u8]) -> Option<NullKind> {
        let idx = &self.index[pair_index(u, v)];
        (1..=x.len().min(y.len())).find_map(|l| idx.get(&(x[..l].to_vec(), y[..l].to_vec())).copied())
    }

    /// Exact product measure of every listed rectangle, summed.
    pub fn rect_measure(&self, ctx: &Gs3Context) -> Rational {
        let t = ctx.tree();
        self.rects.iter().fold(zero(), |acc, r| acc + t.mass(r.u, &r.sigma) * t.mass(r.v, &r.tau))
    }

    pub fn z_measure(&self, ctx: &Gs3Context) -> Rational {
        let mut total = zero();
        for u in 0..3 {
            for &x in &self.z[u] {
                total += &ctx.instance().part(u).weights[x];
            }
        }
        total
    }
}
