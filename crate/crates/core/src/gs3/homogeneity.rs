//! Edge homogeneity of cylinder intersections of the three pair partitions.

use super::classify::PairClass;
use super::partition::{PairCell, PairPartition, PartEntry};
use super::Gs3Context;
use crate::error::{Error, Result};
use crate::rational::zero;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;

type Key = [PairCell; 3];

#[derive(Clone, Debug, Default)]
struct Acc {
    count: usize,
    edge: Option<[usize; 3]>,
    non_edge: Option<[usize; 3]>,
    pos_edge: Option<[usize; 3]>,
    pos_non_edge: Option<[usize; 3]>,
}

impl Acc {
    fn add(&mut self, t: [usize; 3], edge: bool, positive: bool) {
        self.count += 1;
        let (slot, pslot) = if edge {
            (&mut self.edge, &mut self.pos_edge)
        } else {
            (&mut self.non_edge, &mut self.pos_non_edge)
        };
        slot.get_or_insert(t);
        if positive {
            pslot.get_or_insert(t);
        }
    }

    fn merge(&mut self, o: &Acc) {
        self.count += o.count;
        for (a, b) in [
            (&mut self.edge, o.edge),
            (&mut self.non_edge, o.non_edge),
            (&mut self.pos_edge, o.pos_edge),
            (&mut self.pos_non_edge, o.pos_non_edge),
        ] {
            if a.is_none() {
                *a = b;
            }
        }
    }

    fn positive(&self) -> bool {
        self.pos_edge.is_some() || self.pos_non_edge.is_some()
    }

    fn mixed(&self) -> bool {
        self.edge.is_some() && self.non_edge.is_some()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellFailure {
    pub key: Key,
    pub classes: [Option<PairClass>; 3],
    pub size: usize,
    pub positive: bool,
    pub edge: [usize; 3],
    pub non_edge: [usize; 3],
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SubCheck {
    pub cells: usize,
    pub failures: Vec<CellFailure>,
}

impl SubCheck {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TripleHomogeneityReport {
    pub triples: usize,
    pub deleted_ledger: usize,
    pub deleted_fubini: usize,
    pub checked: usize,
    pub cells: usize,
    pub positive_cells: usize,
    /// Cells inside `E` and outside `E` among the homogeneous ones.
    pub edge_cells: usize,
    pub non_edge_cells: usize,
    /// Nonempty cells with remaining triples on both sides of `E`.
    pub strict_failures: Vec<CellFailure>,
    /// Positive-measure cells with remaining triples on both sides.
    pub measure_failures: usize,
    /// Positive-measure cells with positive-weight triples on both sides.
    pub weighted_failures: usize,
    /// Cells with at least two family members, nothing deleted.
    pub two_members: SubCheck,
    /// Cells with exactly one family member, after deletion.
    pub one_member: SubCheck,
    pub pass: bool,
}

fn failure(parts: &[PairPartition; 3], key: Key, acc: &Acc) -> CellFailure {
    CellFailure {
        key,
        classes: [0, 1, 2].map(|k| parts[k].class_of(key[k]).cloned()),
        size: acc.count,
        positive: acc.positive(),
        edge: acc.edge.unwrap_or_default(),
        non_edge: acc.non_edge.unwrap_or_default(),
    }
}

fn check_shapes(ctx: &Gs3Context, parts: &[PairPartition; 3]) -> Result<[usize; 3]> {
    let s = ctx.instance().sizes();
    let want = [(0, 1), (0, 2), (1, 2)];
    for (k, &(u, v)) in want.iter().enumerate() {
        if (parts[k].u, parts[k].v) != (u, v) || parts[k].dims != (s[u], s[v]) {
            return Err(Error::Structural(format!("partition {k} does not match parts ({u}, {v})")));
        }
    }
    Ok(s)
}

/// Groups all triples by the parts of their three pairs and checks each
/// group for a single `E` value, with ledger and Fubini pairs deleted.
pub fn verify_triple_homogeneity(ctx: &Gs3Context, parts: &[PairPartition; 3]) -> Result<TripleHomogeneityReport> {
    let [nx, ny, nz] = check_shapes(ctx, parts)?;
    let inst = ctx.instance();
    let pos: [Vec<bool>; 3] = [0, 1, 2].map(|u| inst.part(u).weights.iter().map(|w| !w.is_zero()).collect());
    let is_member = |k: usize, c: PairCell| parts[k].class_of(c).is_some_and(|c| c.is_member());

    struct Local {
        strict: BTreeMap<Key, Acc>,
        two: BTreeMap<Key, Acc>,
        ledger: usize,
        fubini: usize,
    }
    let locals: Vec<Local> = (0..nx)
        .into_par_iter()
        .map(|x| {
            let mut l = Local { strict: BTreeMap::new(), two: BTreeMap::new(), ledger: 0, fubini: 0 };
            for y in 0..ny {
                let c12 = parts[0].cell(x, y);
                for z in 0..nz {
                    let key = [c12, parts[1].cell(x, z), parts[2].cell(y, z)];
                    let edge = inst.is_edge(x, y, z);
                    let positive = pos[0][x] && pos[1][y] && pos[2][z];
                    let t = [x, y, z];
                    let members = (0..3).filter(|&k| is_member(k, key[k])).count();
                    if members >= 2 {
                        l.two.entry(key).or_default().add(t, edge, positive);
                    }
                    if key.contains(&PairCell::Ledger) {
                        l.ledger += 1;
                        continue;
                    }
                    if parts[0].is_fubini(x, y) || parts[1].is_fubini(x, z) || parts[2].is_fubini(y, z) {
                        l.fubini += 1;
                        continue;
                    }
                    l.strict.entry(key).or_default().add(t, edge, positive);
                }
            }
            l
        })
        .collect();
    let mut strict: BTreeMap<Key, Acc> = BTreeMap::new();
    let mut two: BTreeMap<Key, Acc> = BTreeMap::new();
    let (mut deleted_ledger, mut deleted_fubini) = (0, 0);
    for l in &locals {
        for (k, a) in &l.strict {
            strict.entry(*k).or_default().merge(a);
        }
        for (k, a) in &l.two {
            two.entry(*k).or_default().merge(a);
        }
        deleted_ledger += l.ledger;
        deleted_fubini += l.fubini;
    }
    let mut report = TripleHomogeneityReport {
        triples: nx * ny * nz,
        deleted_ledger,
        deleted_fubini,
        checked: 0,
        cells: strict.len(),
        positive_cells: 0,
        edge_cells: 0,
        non_edge_cells: 0,
        strict_failures: Vec::new(),
        measure_failures: 0,
        weighted_failures: 0,
        two_members: SubCheck { cells: two.len(), failures: Vec::new() },
        one_member: SubCheck::default(),
        pass: false,
    };
    for (key, acc) in &strict {
        report.checked += acc.count;
        let positive = acc.positive();
        report.positive_cells += positive as usize;
        let members = (0..3).filter(|&k| is_member(k, key[k])).count();
        if members == 1 {
            report.one_member.cells += 1;
        }
        if acc.mixed() {
            let f = failure(parts, *key, acc);
            if members == 1 {
                report.one_member.failures.push(f.clone());
            }
            report.strict_failures.push(f);
            report.measure_failures += positive as usize;
            report.weighted_failures += (acc.pos_edge.is_some() && acc.pos_non_edge.is_some()) as usize;
        } else if acc.edge.is_some() {
            report.edge_cells += 1;
        } else {
            report.non_edge_cells += 1;
        }
    }
    for (key, acc) in &two {
        if acc.mixed() {
            report.two_members.failures.push(failure(parts, *key, acc));
        }
    }
    report.pass = report.strict_failures.is_empty() && report.two_members.pass() && report.one_member.pass();
    Ok(report)
}

/// Moves every pair of part `b` into part `a` and drops `b`.
pub fn merge_parts(p: &PairPartition, a: usize, b: usize) -> Result<PairPartition> {
    if a == b || a >= p.parts.len() || b >= p.parts.len() {
        return Err(Error::Parameter(format!("cannot merge parts {a} and {b}")));
    }
    let remap = |i: usize| {
        let i = if i == b { a } else { i };
        if i > b {
            i - 1
        } else {
            i
        }
    };
    let mut out = p.clone();
    let moved = out.parts[b].members.clone();
    let measure = out.parts[b].measure.clone();
    out.parts[a].members.extend(moved);
    out.parts[a].members.sort_unstable();
    out.parts[a].measure += measure;
    out.parts.remove(b);
    for c in out.cells.iter_mut() {
        if let PairCell::Part(i) = c {
            *i = remap(*i);
        }
    }
    debug_assert_eq!(
        out.parts.iter().fold(zero(), |s, e: &PartEntry| s + &e.measure),
        p.parts_measure
    );
    Ok(out)
}
