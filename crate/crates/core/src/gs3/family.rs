//! R and sR rectangles and the disjoint family built from them.

use super::tree::{add3, i_sum_unchecked, is_prefix};
use super::{third, Gs3Context};
use crate::error::{Error, Result};
use crate::generators::ternary::seq_string;
use serde::Serialize;
use std::collections::HashMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum RectKind {
    R,
    SR,
}

/// `[sigma] x [tau]` on parts `(u, v)`; `j0` is set for R rectangles.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Rect {
    pub kind: RectKind,
    #[serde(serialize_with = "super::ser_seq")]
    pub sigma: Vec<u8>,
    #[serde(serialize_with = "super::ser_seq")]
    pub tau: Vec<u8>,
    pub j0: Option<u8>,
}

impl Rect {
    pub fn len(&self) -> usize {
        self.sigma.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sigma.is_empty()
    }

    pub fn contains(&self, other: &Rect) -> bool {
        is_prefix(&self.sigma, &other.sigma) && is_prefix(&self.tau, &other.tau)
    }

    pub fn contains_point(&self, x: &[u8], y: &[u8]) -> bool {
        is_prefix(&self.sigma, x) && is_prefix(&self.tau, y)
    }

    pub fn meets(&self, other: &Rect) -> bool {
        comparable(&self.sigma, &other.sigma) && comparable(&self.tau, &other.tau)
    }

    pub fn label(&self) -> String {
        format!("{:?}[{}]x[{}]", self.kind, seq_string(&self.sigma), seq_string(&self.tau))
    }
}

fn comparable(a: &[u8], b: &[u8]) -> bool {
    is_prefix(a, b) || is_prefix(b, a)
}

/// Tests the defining conditions of an R or sR rectangle on parts `(u, v)`.
pub fn rect_at(ctx: &Gs3Context, u: usize, v: usize, sigma: &[u8], tau: &[u8]) -> Option<Rect> {
    let l = sigma.len();
    if l == 0 || tau.len() != l || l > ctx.depth() {
        return None;
    }
    let t = ctx.tree();
    let w = third(u, v);
    let (s0, t0) = (&sigma[..l - 1], &tau[..l - 1]);
    let rho = i_sum_unchecked(s0, t0);
    if !(t.positive(u, sigma) && t.positive(v, tau) && t.positive(w, &rho)) {
        return None;
    }
    if t.splits(u, s0) && t.splits(v, t0) && t.splits(w, &rho) {
        return Some(Rect { kind: RectKind::SR, sigma: sigma.to_vec(), tau: tau.to_vec(), j0: None });
    }
    let j = t.extension(w, &rho)?;
    let j0 = add3(sigma[l - 1], tau[l - 1], j);
    (j0 != 0).then(|| Rect { kind: RectKind::R, sigma: sigma.to_vec(), tau: tau.to_vec(), j0: Some(j0) })
}

/// Every R and sR rectangle on `(u, v)`, by length then lexicographically.
#[allow(non_snake_case)]
pub fn enumerate_R_sR(ctx: &Gs3Context, u: usize, v: usize) -> Result<Vec<Rect>> {
    check_pair(u, v)?;
    let t = ctx.tree();
    let mut out = Vec::new();
    for l in 1..=ctx.depth() {
        let sigmas: Vec<&Vec<u8>> = t.level(u, l).filter(|s| t.positive(u, s)).collect();
        let taus: Vec<&Vec<u8>> = t.level(v, l).filter(|s| t.positive(v, s)).collect();
        for s in &sigmas {
            for tau in &taus {
                if let Some(r) = rect_at(ctx, u, v, s, tau) {
                    out.push(r);
                }
            }
        }
    }
    Ok(out)
}

fn check_pair(u: usize, v: usize) -> Result<()> {
    if u >= 3 || v >= 3 || u == v {
        return Err(Error::Parameter(format!("({u}, {v}) is not a pair of distinct parts")));
    }
    Ok(())
}

#[derive(Clone, Debug, Serialize)]
pub struct RFamily {
    pub u: usize,
    pub v: usize,
    pub members: Vec<Rect>,
    #[serde(skip)]
    index: HashMap<(Vec<u8>, Vec<u8>), usize>,
}

impl RFamily {
    /// The member containing `(x, y)`, if any.
    pub fn member_of(&self, x: &[u8], y: &[u8]) -> Option<usize> {
        (1..=x.len().min(y.len())).find_map(|l| self.index.get(&(x[..l].to_vec(), y[..l].to_vec())).copied())
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// sR rectangles by increasing length unless inside an earlier one, then R
/// rectangles not inside a selected sR rectangle.
#[allow(non_snake_case)]
pub fn build_R_family(ctx: &Gs3Context, u: usize, v: usize) -> Result<RFamily> {
    let all = enumerate_R_sR(ctx, u, v)?;
    let mut members: Vec<Rect> = Vec::new();
    for r in all.iter().filter(|r| r.kind == RectKind::SR) {
        if !members.iter().any(|m| m.len() < r.len() && m.contains(r)) {
            members.push(r.clone());
        }
    }
    let selected_sr = members.len();
    for r in all.iter().filter(|r| r.kind == RectKind::R) {
        if !members[..selected_sr].iter().any(|m| m.contains(r)) {
            members.push(r.clone());
        }
    }
    let index = members.iter().enumerate().map(|(i, m)| ((m.sigma.clone(), m.tau.clone()), i)).collect();
    Ok(RFamily { u, v, members, index })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyCheck {
    pub disjoint: bool,
    pub positive: bool,
    pub complete: bool,
    pub violations: Vec<String>,
}

impl FamilyCheck {
    pub fn pass(&self) -> bool {
        self.disjoint && self.positive && self.complete
    }
}

/// Pairwise disjointness, positive measure, and containment of every
/// rectangle of `oracle` in some member.
pub fn check_family(ctx: &Gs3Context, fam: &RFamily, oracle: &[Rect]) -> FamilyCheck {
    let t = ctx.tree();
    let mut violations = Vec::new();
    let ms = &fam.members;
    for i in 0..ms.len() {
        for j in i + 1..ms.len() {
            if ms[i].meets(&ms[j]) {
                violations.push(format!("{} meets {}", ms[i].label(), ms[j].label()));
            }
        }
    }
    let disjoint = violations.is_empty();
    let before = violations.len();
    for m in ms {
        let measure = t.mass(fam.u, &m.sigma) * t.mass(fam.v, &m.tau);
        if measure == crate::rational::zero() {
            violations.push(format!("{} has measure 0", m.label()));
        }
    }
    let positive = violations.len() == before;
    let before = violations.len();
    for r in oracle {
        if !ms.iter().any(|m| m.contains(r)) {
            violations.push(format!("{} not covered", r.label()));
        }
    }
    let complete = violations.len() == before;
    FamilyCheck { disjoint, positive, complete, violations }
}
