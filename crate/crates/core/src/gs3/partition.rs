//! Assembly of the pair partitions from families, ledgers and classes.

use super::classify::{classify_pair, PairClass, PairClassification};
use super::family::{build_R_family, RFamily};
use super::ledger::NullLedger;
use super::{Gs3Context, PAIRS};
use crate::error::{Error, Result};
use crate::partition::GradedPartition;
use crate::rational::{one, zero, Rational};
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum PairCell {
    Part(usize),
    Ledger,
}

#[derive(Clone, Debug, Serialize)]
pub struct PartEntry {
    pub class: PairClass,
    pub members: Vec<(usize, usize)>,
    #[serde(with = "crate::rational::as_string")]
    pub measure: Rational,
}

#[derive(Clone, Debug, Serialize)]
pub struct LedgerEntry {
    pub x: usize,
    pub y: usize,
    pub class: PairClass,
}

/// One pair partition; `cells` is row-major over `X^u x X^v`.
#[derive(Clone, Debug, Serialize)]
pub struct PairPartition {
    pub u: usize,
    pub v: usize,
    pub dims: (usize, usize),
    pub parts: Vec<PartEntry>,
    pub ledger: Vec<LedgerEntry>,
    #[serde(skip)]
    pub cells: Vec<PairCell>,
    #[serde(skip)]
    pub fubini: Vec<bool>,
    #[serde(skip)]
    pub classifications: Vec<PairClassification>,
    pub fubini_pairs: usize,
    #[serde(with = "crate::rational::as_string")]
    pub parts_measure: Rational,
    #[serde(with = "crate::rational::as_string")]
    pub ledger_measure: Rational,
    pub census: BTreeMap<String, usize>,
}

impl PairPartition {
    pub fn cell(&self, x: usize, y: usize) -> PairCell {
        self.cells[x * self.dims.1 + y]
    }

    pub fn is_fubini(&self, x: usize, y: usize) -> bool {
        self.fubini[x * self.dims.1 + y]
    }

    pub fn class_of(&self, c: PairCell) -> Option<&PairClass> {
        match c {
            PairCell::Part(i) => Some(&self.parts[i].class),
            PairCell::Ledger => None,
        }
    }

    /// Exact mass conservation: parts and ledger sum to 1, ledger to 0.
    pub fn conserves_mass(&self) -> bool {
        let total = &self.parts_measure + &self.ledger_measure;
        let empty = self.dims.0 == 0 || self.dims.1 == 0;
        self.ledger_measure.is_zero() && (total == one() || (empty && total.is_zero()))
    }
}

/// Classifies every pair of `(u, v)` and groups pairs by class.
#[allow(non_snake_case)]
pub fn build_partition_P(
    ctx: &Gs3Context,
    u: usize,
    v: usize,
    family: &RFamily,
    ledger: &NullLedger,
) -> Result<PairPartition> {
    let sizes = ctx.instance().sizes();
    let (nx, ny) = (sizes[u], sizes[v]);
    let classes: Vec<PairClassification> = (0..nx)
        .into_par_iter()
        .map(|x| (0..ny).map(|y| classify_pair(ctx, u, v, x, y, family, ledger)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let wu = &ctx.instance().part(u).weights;
    let wv = &ctx.instance().part(v).weights;
    let mut groups: BTreeMap<PairClass, Vec<(usize, usize)>> = BTreeMap::new();
    let mut ledger_entries = Vec::new();
    let mut ledger_measure = zero();
    let mut census: BTreeMap<String, usize> = BTreeMap::new();
    let mut fubini = vec![false; nx * ny];
    for c in &classes {
        *census.entry(c.class.tag().to_string()).or_default() += 1;
        fubini[c.x * ny + c.y] = c.fubini;
        if c.class.is_ledger() {
            ledger_measure += &wu[c.x] * &wv[c.y];
            ledger_entries.push(LedgerEntry { x: c.x, y: c.y, class: c.class.clone() });
        } else {
            groups.entry(c.class.clone()).or_default().push((c.x, c.y));
        }
    }
    let fubini_pairs = fubini.iter().filter(|&&f| f).count();
    census.insert("fubini".into(), fubini_pairs);
    let mut cells = vec![PairCell::Ledger; nx * ny];
    let mut parts = Vec::with_capacity(groups.len());
    let mut parts_measure = zero();
    for (i, (class, members)) in groups.into_iter().enumerate() {
        let mut measure = zero();
        for &(x, y) in &members {
            cells[x * ny + y] = PairCell::Part(i);
            measure += &wu[x] * &wv[y];
        }
        parts_measure += &measure;
        parts.push(PartEntry { class, members, measure });
    }
    let out = PairPartition {
        u,
        v,
        dims: (nx, ny),
        parts,
        ledger: ledger_entries,
        cells,
        fubini,
        classifications: classes,
        fubini_pairs,
        parts_measure,
        ledger_measure,
        census,
    };
    if !out.ledger_measure.is_zero() {
        return Err(Error::Contract(format!(
            "ledger on ({u}, {v}) has measure {}",
            out.ledger_measure
        )));
    }
    if !out.conserves_mass() {
        return Err(Error::Contract(format!(
            "parts on ({u}, {v}) have measure {}, not 1",
            out.parts_measure
        )));
    }
    Ok(out)
}

/// Families, ledger and partitions for all three canonical pairs.
#[derive(Clone, Debug, Serialize)]
pub struct Gs3Partitions {
    pub families: [RFamily; 3],
    pub ledger: NullLedger,
    pub partitions: [PairPartition; 3],
}

pub fn build_all(ctx: &Gs3Context) -> Result<Gs3Partitions> {
    let families = [
        build_R_family(ctx, 0, 1)?,
        build_R_family(ctx, 0, 2)?,
        build_R_family(ctx, 1, 2)?,
    ];
    let ledger = NullLedger::new(ctx, &families)?;
    let mut ps = Vec::with_capacity(3);
    for (k, &(u, v)) in PAIRS.iter().enumerate() {
        ps.push(build_partition_P(ctx, u, v, &families[k], &ledger)?);
    }
    let partitions: [PairPartition; 3] = ps.try_into().map_err(|_| Error::Contract("pair count".into()))?;
    Ok(Gs3Partitions { families, ledger, partitions })
}

impl Gs3Partitions {
    /// As a graded partition with `d = 2`: ledger pairs in part 0, classes
    /// from 1.
    pub fn to_graded(&self) -> Result<GradedPartition> {
        let p = &self.partitions;
        let dims = vec![p[0].dims.0, p[0].dims.1, p[1].dims.1];
        let assignments = p
            .iter()
            .map(|pp| {
                pp.cells
                    .iter()
                    .map(|c| match c {
                        PairCell::Ledger => 0,
                        PairCell::Part(i) => i + 1,
                    })
                    .collect()
            })
            .collect();
        GradedPartition::from_assignments(dims, 2, assignments)
    }

    /// Triples with some pair in the ledger or set aside by Fubini.
    pub fn deleted_triples(&self) -> BTreeSet<Vec<usize>> {
        let p = &self.partitions;
        let (nx, ny, nz) = (p[0].dims.0, p[0].dims.1, p[1].dims.1);
        let mut out = BTreeSet::new();
        for x in 0..nx {
            for y in 0..ny {
                for z in 0..nz {
                    if self.deleted(x, y, z) {
                        out.insert(vec![x, y, z]);
                    }
                }
            }
        }
        out
    }

    pub fn deleted(&self, x: usize, y: usize, z: usize) -> bool {
        let p = &self.partitions;
        [(0, x, y), (1, x, z), (2, y, z)]
            .iter()
            .any(|&(k, a, b)| p[k].cell(a, b) == PairCell::Ledger || p[k].is_fubini(a, b))
    }
}
