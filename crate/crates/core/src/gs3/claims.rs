//! The split-direction property of aligned prefix triples and the general
//! principle for triples off the zero-sum diagonal.

use super::family::{rect_at, RectKind};
use super::tree::{child, i_sum_unchecked};
use super::Gs3Context;
use crate::error::{Error, Result};
use crate::generators::ternary::seq_string;
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ViolationKind {
    /// Part `part` splits in `directions.len() != 2` directions.
    Directions { part: usize, directions: Vec<u8> },
    /// Neither branch of part `part` lies entirely below the other.
    Unordered { part: usize, branches: Vec<u8> },
    /// Sign pattern `t` (entries 1 or 2) sums to 0 with no dominating pattern.
    Dominance { t: [u8; 3], j: [[u8; 2]; 3] },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwoDirectionViolation {
    pub length: usize,
    pub prefixes: [String; 3],
    #[serde(flatten)]
    pub kind: ViolationKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwoDirectionReport {
    pub orders_supplied: bool,
    pub triples: usize,
    pub non_splitting: usize,
    pub all_split: usize,
    pub violations: Vec<TwoDirectionViolation>,
    pub pass: bool,
}

/// `(j1, j2)` with every member of branch `j1` below every member of
/// branch `j2`, if one exists.
fn ordered_branches(ctx: &Gs3Context, u: usize, sigma: &[u8], dirs: &[u8]) -> Option<[u8; 2]> {
    let (a, b) = (dirs[0], dirs[1]);
    if ctx.all_below(u, &child(sigma, a), &child(sigma, b)) {
        Some([a, b])
    } else if ctx.all_below(u, &child(sigma, b), &child(sigma, a)) {
        Some([b, a])
    } else {
        None
    }
}

fn patterns() -> impl Iterator<Item = [u8; 3]> {
    (0..8u8).map(|m| [1 + (m >> 2 & 1), 1 + (m >> 1 & 1), 1 + (m & 1)])
}

fn sum_at(j: &[[u8; 2]; 3], t: [u8; 3]) -> u8 {
    (0..3).map(|u| j[u][(t[u] - 1) as usize]).sum::<u8>() % 3
}

/// For every sign pattern summing to 0, some pattern below sums to 1 or
/// some pattern above sums to 2; returns the first pattern without one.
pub fn dominance_gap(j: &[[u8; 2]; 3]) -> Option<[u8; 3]> {
    patterns().find(|&t| {
        sum_at(j, t) == 0
            && !patterns().any(|t2| {
                let below = (0..3).all(|u| t2[u] <= t[u]);
                let above = (0..3).all(|u| t2[u] >= t[u]);
                (below && sum_at(j, t2) == 1) || (above && sum_at(j, t2) == 2)
            })
    })
}

/// Checks every aligned present triple `(s1, s2, I(s1, s2))` of length below
/// the depth: either some prefix is non-splitting, or all split in exactly
/// two ordered directions with the dominance property.
pub fn verify_two_direction_claim(ctx: &Gs3Context) -> TwoDirectionReport {
    let t = ctx.tree();
    let mut report = TwoDirectionReport {
        orders_supplied: ctx.orders_supplied(),
        triples: 0,
        non_splitting: 0,
        all_split: 0,
        violations: Vec::new(),
        pass: true,
    };
    for l in 0..ctx.depth() {
        for s1 in t.level(0, l) {
            for s2 in t.level(1, l) {
                let s3 = i_sum_unchecked(s1, s2);
                if !t.present(2, &s3) {
                    continue;
                }
                report.triples += 1;
                let sig = [s1.clone(), s2.clone(), s3];
                if (0..3).any(|u| !t.splits(u, &sig[u])) {
                    report.non_splitting += 1;
                    continue;
                }
                report.all_split += 1;
                let prefixes = [0, 1, 2].map(|u| seq_string(&sig[u]));
                let mut push = |kind| {
                    report.violations.push(TwoDirectionViolation { length: l, prefixes: prefixes.clone(), kind })
                };
                let dirs: Vec<Vec<u8>> = (0..3).map(|u| t.present_children(u, &sig[u])).collect();
                let mut shape_ok = true;
                for u in 0..3 {
                    if dirs[u].len() != 2 {
                        shape_ok = false;
                        push(ViolationKind::Directions { part: u, directions: dirs[u].clone() });
                    }
                }
                if !shape_ok {
                    continue;
                }
                let mut j = [[0u8; 2]; 3];
                for u in 0..3 {
                    match ordered_branches(ctx, u, &sig[u], &dirs[u]) {
                        Some(p) => j[u] = p,
                        None => {
                            shape_ok = false;
                            push(ViolationKind::Unordered { part: u, branches: dirs[u].clone() });
                        }
                    }
                }
                if !shape_ok {
                    continue;
                }
                if let Some(tt) = dominance_gap(&j) {
                    push(ViolationKind::Dominance { t: tt, j });
                }
            }
        }
    }
    report.pass = report.violations.is_empty();
    report
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "case", rename_all = "kebab-case")]
pub enum Principle {
    /// The level rectangle on `pair` is an R rectangle.
    R { pair: (usize, usize) },
    /// All three level rectangles are sR rectangles.
    SR,
    Inapplicable { reason: String },
    /// Neither disjunct holds.
    Neither,
}

/// At the first position where the coordinate sum is nonzero, decides which
/// disjunct of the general principle holds for `(x, y, z)`.
pub fn check_general_principle(ctx: &Gs3Context, x: usize, y: usize, z: usize) -> Result<Principle> {
    let sizes = ctx.instance().sizes();
    if x >= sizes[0] || y >= sizes[1] || z >= sizes[2] {
        return Err(Error::Parameter(format!("triple ({x}, {y}, {z}) out of range")));
    }
    let s = [ctx.seq(0, x), ctx.seq(1, y), ctx.seq(2, z)];
    let Some(i) = (0..ctx.depth()).find(|&i| (s[0][i] + s[1][i] + s[2][i]) % 3 != 0) else {
        return Ok(Principle::Inapplicable { reason: "third point is I of the other two".into() });
    };
    let t = ctx.tree();
    if let Some(u) = (0..3).find(|&u| !t.positive(u, &s[u][..=i])) {
        return Ok(Principle::Inapplicable { reason: format!("prefix of part {u} at level {} has mass 0", i + 1) });
    }
    let pairs = [(1, 2), (0, 2), (0, 1)];
    let rects: Vec<Option<RectKind>> =
        pairs.iter().map(|&(a, b)| rect_at(ctx, a, b, &s[a][..=i], &s[b][..=i]).map(|r| r.kind)).collect();
    if let Some(k) = rects.iter().position(|r| *r == Some(RectKind::R)) {
        return Ok(Principle::R { pair: pairs[k] });
    }
    if rects.iter().all(|r| *r == Some(RectKind::SR)) {
        return Ok(Principle::SR);
    }
    Ok(Principle::Neither)
}
