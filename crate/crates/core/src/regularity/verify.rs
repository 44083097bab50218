//! Exact verifiers for strong and perfect regularity of a partition.

use crate::budget::BudgetFn;
use crate::error::{Error, Result};
use crate::function::{Grid, PartiteFunction};
use crate::interval::{shortest_interval_strict, Interval};
use crate::partition::GradedPartition;
use crate::rational::{fmt_rational, Rational};
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeSet;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TupleValue {
    pub tuple: Vec<usize>,
    #[serde(with = "crate::rational::as_string")]
    pub value: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellReport {
    pub key: Vec<usize>,
    pub size: usize,
    #[serde(with = "crate::rational::as_string")]
    pub measure: Rational,
    pub interval: Option<Interval>,
    #[serde(with = "crate::rational::as_string")]
    pub interval_len: Rational,
    #[serde(with = "crate::rational::as_string")]
    pub exceptional_mass: Rational,
    #[serde(with = "crate::rational::as_string")]
    pub budget: Rational,
    /// Nonempty but of measure zero; passes vacuously.
    pub zero_measure: bool,
    pub pass: bool,
    /// Positive-weight members with the least and greatest value, on failure.
    pub witness: Option<(TupleValue, TupleValue)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SideReport {
    pub edge: Vec<usize>,
    pub b: usize,
    #[serde(with = "crate::rational::as_string")]
    pub exceptional_mass: Rational,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomogeneityReport {
    #[serde(with = "crate::rational::as_string")]
    pub epsilon: Rational,
    pub budget_fn: String,
    pub max_b: usize,
    #[serde(with = "crate::rational::as_string")]
    pub budget: Rational,
    pub sides: Vec<SideReport>,
    pub cells: Vec<CellReport>,
    pub checked_cells: usize,
    pub failed_cells: usize,
    pub zero_measure_cells: usize,
    pub pass: bool,
}

impl HomogeneityReport {
    /// One row per checked cell: indices, measure, interval, exceptional
    /// mass, verdict.
    pub fn to_tsv(&self) -> String {
        let mut s = String::from("cell\tsize\tmeasure\tlo\thi\tlength\texceptional\tbudget\tverdict\n");
        for c in &self.cells {
            let (lo, hi) = match &c.interval {
                Some(i) => (fmt_rational(&i.lo), fmt_rational(&i.hi)),
                None => ("-".into(), "-".into()),
            };
            let key: Vec<String> = c.key.iter().map(|k| k.to_string()).collect();
            s += &format!(
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
                key.join(","),
                c.size,
                fmt_rational(&c.measure),
                lo,
                hi,
                fmt_rational(&c.interval_len),
                fmt_rational(&c.exceptional_mass),
                fmt_rational(&c.budget),
                if c.pass { "pass" } else { "fail" }
            );
        }
        s
    }
}

fn extreme_witness(f: &PartiteFunction, grid: &Grid, members: &[usize]) -> Option<(TupleValue, TupleValue)> {
    let pos: Vec<usize> = members
        .iter()
        .copied()
        .filter(|&i| f.tuple_weight(&grid.decode(i)).is_positive())
        .collect();
    let lo = pos.iter().copied().min_by(|&a, &b| f.value_at(a).cmp(f.value_at(b)).then(a.cmp(&b)))?;
    let hi = pos.iter().copied().max_by(|&a, &b| f.value_at(a).cmp(f.value_at(b)).then(b.cmp(&a)))?;
    let tv = |i: usize| TupleValue { tuple: grid.decode(i), value: f.value_at(i).clone() };
    Some((tv(lo), tv(hi)))
}

/// Every nonempty cell with all indices positive must have an interval of
/// length `< epsilon` outside which lies mass `< F(max b_e) mu(C)`, and every
/// exceptional side must have mass `< epsilon`.
pub fn verify_strong_regularity(
    f: &PartiteFunction,
    partition: &GradedPartition,
    epsilon: &Rational,
    budget_fn: &BudgetFn,
) -> Result<HomogeneityReport> {
    partition.check_grounds(f.parts())?;
    if !epsilon.is_positive() {
        return Err(Error::Parameter(format!("epsilon {epsilon} must be positive")));
    }
    let parts = f.parts();
    let sides: Vec<SideReport> = partition
        .sides()
        .iter()
        .map(|s| {
            let m = s.part_mass(parts, 0);
            SideReport { edge: s.edge.clone(), b: s.b(), pass: &m < epsilon, exceptional_mass: m }
        })
        .collect();
    let max_b = partition.max_b();
    let budget = budget_fn.eval(max_b);
    let grid = f.grid().clone();
    let cells: Vec<(Vec<usize>, Vec<usize>)> =
        partition.cells().into_iter().filter(|(k, _)| k.iter().all(|&j| j > 0)).collect();
    let reports: Vec<CellReport> = cells
        .par_iter()
        .map(|(key, members)| {
            let values: Vec<(Rational, Rational)> = members
                .iter()
                .map(|&i| (f.value_at(i).clone(), f.tuple_weight(&grid.decode(i))))
                .collect();
            let measure: Rational = values.iter().map(|(_, w)| w).sum();
            let cell_budget = &budget * &measure;
            if !measure.is_positive() {
                return CellReport {
                    key: key.clone(),
                    size: members.len(),
                    measure,
                    interval: None,
                    interval_len: Rational::zero(),
                    exceptional_mass: Rational::zero(),
                    budget: cell_budget,
                    zero_measure: true,
                    pass: true,
                    witness: None,
                };
            }
            let (interval, exc) =
                shortest_interval_strict(&values, &cell_budget).expect("positive mass and budget");
            let len = interval.len();
            let pass = &len < epsilon;
            CellReport {
                key: key.clone(),
                size: members.len(),
                measure,
                witness: if pass { None } else { extreme_witness(f, &grid, members) },
                interval: Some(interval),
                interval_len: len,
                exceptional_mass: exc,
                budget: cell_budget,
                zero_measure: false,
                pass,
            }
        })
        .collect();
    let failed = reports.iter().filter(|c| !c.pass).count();
    let zero = reports.iter().filter(|c| c.zero_measure).count();
    let pass = failed == 0 && sides.iter().all(|s| s.pass);
    Ok(HomogeneityReport {
        epsilon: epsilon.clone(),
        budget_fn: budget_fn.to_string(),
        max_b,
        budget,
        sides,
        checked_cells: reports.len(),
        failed_cells: failed,
        zero_measure_cells: zero,
        cells: reports,
        pass,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PerfectCellReport {
    pub key: Vec<usize>,
    pub size: usize,
    pub ledger_members: usize,
    pub interval: Option<Interval>,
    pub pass: bool,
    pub witness: Option<(TupleValue, TupleValue)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PerfectReport {
    #[serde(with = "crate::rational::as_string")]
    pub epsilon: Rational,
    pub indicator: bool,
    pub ledger_size: usize,
    pub cells: Vec<PerfectCellReport>,
    pub failed_cells: usize,
    pub pass: bool,
}

/// On every cell (exceptional indices included), the values at
/// positive-weight tuples outside the ledger lie in an interval of length at
/// most `epsilon`; for indicators they must be constant.
pub fn verify_perfect_regularity(
    f: &PartiteFunction,
    partition: &GradedPartition,
    ledger: &BTreeSet<Vec<usize>>,
    epsilon: &Rational,
) -> Result<PerfectReport> {
    partition.check_grounds(f.parts())?;
    if epsilon.is_negative() {
        return Err(Error::Parameter(format!("epsilon {epsilon} is negative")));
    }
    let grid = f.grid().clone();
    for t in ledger {
        grid.checked_index(t)?;
        let w = f.tuple_weight(t);
        if w.is_positive() {
            return Err(Error::Contract(format!(
                "ledger tuple {t:?} has positive measure {}",
                fmt_rational(&w)
            )));
        }
    }
    let indicator = f.is_indicator();
    let cells: Vec<(Vec<usize>, Vec<usize>)> = partition.cells().into_iter().collect();
    let reports: Vec<PerfectCellReport> = cells
        .par_iter()
        .map(|(key, members)| {
            let mut in_ledger = 0;
            let mut lo: Option<usize> = None;
            let mut hi: Option<usize> = None;
            for &i in members {
                let t = grid.decode(i);
                if ledger.contains(&t) {
                    in_ledger += 1;
                    continue;
                }
                if f.tuple_weight(&t).is_zero() {
                    continue;
                }
                if lo.map_or(true, |l| f.value_at(i) < f.value_at(l)) {
                    lo = Some(i);
                }
                if hi.map_or(true, |h| f.value_at(i) > f.value_at(h)) {
                    hi = Some(i);
                }
            }
            let (interval, pass, witness) = match (lo, hi) {
                (Some(l), Some(h)) => {
                    let iv = Interval { lo: f.value_at(l).clone(), hi: f.value_at(h).clone() };
                    let len = iv.len();
                    let pass = if indicator { len.is_zero() } else { &len <= epsilon };
                    let tv = |i: usize| TupleValue { tuple: grid.decode(i), value: f.value_at(i).clone() };
                    let w = if pass { None } else { Some((tv(l), tv(h))) };
                    (Some(iv), pass, w)
                }
                _ => (None, true, None),
            };
            PerfectCellReport {
                key: key.clone(),
                size: members.len(),
                ledger_members: in_ledger,
                interval,
                pass,
                witness,
            }
        })
        .collect();
    let failed = reports.iter().filter(|c| !c.pass).count();
    Ok(PerfectReport {
        epsilon: epsilon.clone(),
        indicator,
        ledger_size: ledger.len(),
        cells: reports,
        failed_cells: failed,
        pass: failed == 0,
    })
}
