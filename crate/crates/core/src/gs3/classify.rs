//! The class of a pair `(x, y)` on a canonical pair of parts.

use super::family::RFamily;
use super::ledger::{NullKind, NullLedger};
use super::tree::{add3, child, i_sum_unchecked, DepthMark};
use super::{third, Gs3Context};
use crate::error::{Error, Result};
use crate::generators::ternary::seq_string;
use serde::Serialize;

/// Which coordinate has the smaller depth mark.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Lead {
    U,
    V,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(tag = "reason", rename_all = "kebab-case")]
pub enum NullReason {
    Z,
    Rz,
    Srz,
    /// A `C^<` pair whose third prefix has mass 0.
    RzAdjacent { j0: u8 },
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(tag = "class")]
pub enum PairClass {
    InR { member: usize },
    A { x: usize, y: usize },
    CLe { lead: Lead, j0: u8 },
    CLt { lead: Lead, j0: u8 },
    CEq { j0: u8 },
    SCLt { lead: Lead, j1: u8, j2: u8, s: u8, jv: u8, jw1: u8, jw2: u8 },
    SCEq { ju1: u8, ju2: u8, su: u8, jv1: u8, jv2: u8, sv: u8, jw1: u8, jw2: u8 },
    Null(NullReason),
}

impl PairClass {
    pub fn tag(&self) -> &'static str {
        match self {
            PairClass::InR { .. } => "R",
            PairClass::A { .. } => "A",
            PairClass::CLe { .. } => "C<=",
            PairClass::CLt { .. } => "C<",
            PairClass::CEq { .. } => "C=",
            PairClass::SCLt { .. } => "sC<",
            PairClass::SCEq { .. } => "sC=",
            PairClass::Null(_) => "null",
        }
    }

    pub fn is_ledger(&self) -> bool {
        matches!(self, PairClass::Null(_))
    }

    pub fn is_member(&self) -> bool {
        matches!(self, PairClass::InR { .. })
    }

    /// `j0` of a C class.
    pub fn j0(&self) -> Option<u8> {
        match self {
            PairClass::CLe { j0, .. } | PairClass::CLt { j0, .. } | PairClass::CEq { j0 } => Some(*j0),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairClassification {
    pub x: usize,
    pub y: usize,
    pub class: PairClass,
    pub ix: DepthMark,
    pub iy: DepthMark,
    /// Positive extension of the leading coordinate's prefix.
    pub j_prime: Option<u8>,
    /// Positive extension of the other coordinate's prefix.
    pub j_dprime: Option<u8>,
    /// Unique extension of the third prefix.
    pub j: Option<u8>,
    /// Equal depth marks in a `C<=` class: set aside when checking triples.
    pub fubini: bool,
}

fn lex_pair(ctx: &Gs3Context, w: usize, rho: &[u8]) -> Option<(u8, u8)> {
    for a in 0..3u8 {
        for b in 0..3u8 {
            if a != b && ctx.some_below(w, &child(rho, a), &child(rho, b)) {
                return Some((a, b));
            }
        }
    }
    None
}

/// `(j1, j2, s)` for point `x` of part `u` at level `p` with sibling branch `jp`.
fn order_signature(ctx: &Gs3Context, u: usize, x: usize, p: usize, jp: u8) -> (u8, u8, u8) {
    let xs = ctx.seq(u, x);
    let rx = ctx.rank(u, x);
    let branch = child(&xs[..p], jp);
    let above = ctx.tree().members(u, &branch).iter().any(|&x2| rx < ctx.rank(u, x2));
    if above {
        (xs[p], jp, 1)
    } else {
        (jp, xs[p], 2)
    }
}

fn unique_positive(ctx: &Gs3Context, u: usize, prefix: &[u8], who: &str) -> Result<u8> {
    match ctx.tree().positive_children(u, prefix).as_slice() {
        [j] => Ok(*j),
        other => Err(Error::Contract(format!(
            "{who}: prefix {} of part {u} has positive children {other:?}",
            seq_string(prefix)
        ))),
    }
}

/// Classifies `(x, y)` on the canonical pair `(u, v)`: family membership
/// first, then the ledger, then the depth-mark case analysis.
pub fn classify_pair(
    ctx: &Gs3Context,
    u: usize,
    v: usize,
    x: usize,
    y: usize,
    family: &RFamily,
    ledger: &NullLedger,
) -> Result<PairClassification> {
    if u >= v || v >= 3 || (family.u, family.v) != (u, v) {
        return Err(Error::Parameter(format!("({u}, {v}) is not a canonical pair for this family")));
    }
    let sizes = ctx.instance().sizes();
    if x >= sizes[u] || y >= sizes[v] {
        return Err(Error::Parameter(format!("pair ({x}, {y}) out of range")));
    }
    let (xs, ys) = (ctx.seq(u, x), ctx.seq(v, y));
    let (ix, iy) = (ctx.mark(u, x), ctx.mark(v, y));
    let mut out = PairClassification {
        x,
        y,
        class: PairClass::A { x, y },
        ix,
        iy,
        j_prime: None,
        j_dprime: None,
        j: None,
        fubini: false,
    };
    if let Some(m) = family.member_of(xs, ys) {
        out.class = PairClass::InR { member: m };
        return Ok(out);
    }
    if ledger.z[u].contains(&x) || ledger.z[v].contains(&y) {
        out.class = PairClass::Null(NullReason::Z);
        return Ok(out);
    }
    if let Some(kind) = ledger.rect_of(u, v, xs, ys) {
        out.class = PairClass::Null(match kind {
            NullKind::RZ => NullReason::Rz,
            NullKind::SRZ => NullReason::Srz,
        });
        return Ok(out);
    }
    let w = third(u, v);
    let t = ctx.tree();
    match (ix, iy) {
        (DepthMark::Infinite, DepthMark::Infinite) => Ok(out),
        (DepthMark::Successor(a), DepthMark::Successor(b)) if a == b => {
            let p = a - 1;
            let jp = unique_positive(ctx, u, &xs[..p], "first coordinate")?;
            let jpp = unique_positive(ctx, v, &ys[..p], "second coordinate")?;
            out.j_prime = Some(jp);
            out.j_dprime = Some(jpp);
            let rho = i_sum_unchecked(&xs[..p], &ys[..p]);
            out.class = if !t.present(w, &rho) {
                PairClass::CEq { j0: 1 }
            } else if let Some(j) = t.extension(w, &rho) {
                out.j = Some(j);
                let a1 = add3(xs[p], jpp, j);
                let b1 = add3(jp, ys[p], j);
                if a1 != 0 {
                    out.fubini = true;
                    PairClass::CLe { lead: Lead::U, j0: a1 }
                } else if b1 != 0 {
                    out.fubini = true;
                    PairClass::CLe { lead: Lead::V, j0: b1 }
                } else {
                    let j0 = add3(xs[p], ys[p], j);
                    if j0 == 0 {
                        return Err(Error::Contract(format!("pair ({x}, {y}) on ({u}, {v}): C= index 0")));
                    }
                    PairClass::CEq { j0 }
                }
            } else {
                let (ju1, ju2, su) = order_signature(ctx, u, x, p, jp);
                let (jv1, jv2, sv) = order_signature(ctx, v, y, p, jpp);
                let (jw1, jw2) = lex_pair(ctx, w, &rho)
                    .ok_or_else(|| Error::Contract(format!("no ordered branch pair under {}", seq_string(&rho))))?;
                PairClass::SCEq { ju1, ju2, su, jv1, jv2, sv, jw1, jw2 }
            };
            Ok(out)
        }
        _ => {
            let (lead, fu, fx, fs, gu, gs, i) = match (ix, iy) {
                (DepthMark::Successor(a), DepthMark::Successor(b)) if a < b => (Lead::U, u, x, xs, v, ys, a),
                (DepthMark::Successor(a), DepthMark::Infinite) => (Lead::U, u, x, xs, v, ys, a),
                (_, DepthMark::Successor(b)) => (Lead::V, v, y, ys, u, xs, b),
                _ => unreachable!(),
            };
            let p = i - 1;
            let jp = unique_positive(ctx, fu, &fs[..p], "leading coordinate")?;
            if !t.positive(gu, &gs[..=p]) {
                return Err(Error::Contract(format!("pair ({x}, {y}): trailing prefix has mass 0")));
            }
            let jpp = gs[p];
            out.j_prime = Some(jp);
            out.j_dprime = Some(jpp);
            let rho = i_sum_unchecked(&fs[..p], &gs[..p]);
            out.class = if !t.present(w, &rho) {
                PairClass::CLt { lead, j0: 1 }
            } else if let Some(j) = t.extension(w, &rho) {
                out.j = Some(j);
                let s = add3(fs[p], gs[p], j);
                if s != 0 {
                    PairClass::CLe { lead, j0: s }
                } else if t.positive(w, &rho) {
                    return Err(Error::Contract(format!(
                        "pair ({x}, {y}) on ({u}, {v}) lies next to an R rectangle but outside the ledger"
                    )));
                } else {
                    PairClass::Null(NullReason::RzAdjacent { j0: add3(jp, gs[p], j) })
                }
            } else {
                let (j1, j2, s) = order_signature(ctx, fu, fx, p, jp);
                let (jw1, jw2) = lex_pair(ctx, w, &rho)
                    .ok_or_else(|| Error::Contract(format!("no ordered branch pair under {}", seq_string(&rho))))?;
                PairClass::SCLt { lead, j1, j2, s, jv: gs[p], jw1, jw2 }
            };
            Ok(out)
        }
    }
}
