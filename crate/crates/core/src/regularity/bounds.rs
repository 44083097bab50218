//! Lower bounds on cell measures relative to their sides.

use crate::budget::BudgetFn;
use crate::error::{Error, Result};
use crate::partition::GradedPartition;
use crate::rational::{zero, Rational};
use crate::weighted::WeightedPart;
use serde::Serialize;
use std::collections::BTreeMap;

pub const LOWER_BOUND_CELL_CAP: usize = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LowerBoundViolation {
    pub key: Vec<usize>,
    #[serde(with = "crate::rational::as_string")]
    pub measure: Rational,
    #[serde(with = "crate::rational::as_string")]
    pub required: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmallSide {
    pub edge: Vec<usize>,
    pub part: usize,
    #[serde(with = "crate::rational::as_string")]
    pub mass: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LowerBoundReport {
    pub b: usize,
    #[serde(with = "crate::rational::as_string")]
    pub f_b: Rational,
    pub cells_checked: usize,
    pub cell_violations: Vec<LowerBoundViolation>,
    pub side_violations: Vec<SmallSide>,
    pub pass: bool,
}

/// Checks `mu(C) >= F(b) prod_e mu(S_{e,i_e})` for every combination of
/// non-exceptional indices and `mu(S_{e,i}) >= F(b)` for every
/// non-exceptional part.
pub fn verify_cell_lower_bounds(
    partition: &GradedPartition,
    parts: &[WeightedPart],
    budget_fn: &BudgetFn,
) -> Result<LowerBoundReport> {
    partition.check_grounds(parts)?;
    let b = partition.max_b();
    let f_b = budget_fn.eval(b);
    let side_mass: Vec<Vec<Rational>> = partition
        .sides()
        .iter()
        .map(|s| (0..s.num_parts).map(|j| s.part_mass(parts, j)).collect())
        .collect();
    let combos: usize = partition.sides().iter().map(|s| s.b()).product();
    if combos > LOWER_BOUND_CELL_CAP {
        return Err(Error::CapExceeded { what: "index combinations".into(), size: combos, cap: LOWER_BOUND_CELL_CAP });
    }
    let grid = crate::function::Grid::new(partition.dims().to_vec());
    let mut measure: BTreeMap<Vec<usize>, Rational> = BTreeMap::new();
    for (key, mem) in partition.cells() {
        let m: Rational = mem.iter().map(|&i| crate::function::tuple_weight(parts, &grid.decode(i))).sum();
        measure.insert(key, m);
    }
    let mut side_violations = Vec::new();
    for (s, masses) in partition.sides().iter().zip(&side_mass) {
        for (j, m) in masses.iter().enumerate().skip(1) {
            if m < &f_b {
                side_violations.push(SmallSide { edge: s.edge.clone(), part: j, mass: m.clone() });
            }
        }
    }
    let mut cell_violations = Vec::new();
    let bs: Vec<usize> = partition.sides().iter().map(|s| s.b()).collect();
    let mut key: Vec<usize> = vec![1; bs.len()];
    let mut checked = 0;
    if bs.iter().all(|&x| x > 0) {
        'outer: loop {
            checked += 1;
            let mut required = f_b.clone();
            for (e, &j) in key.iter().enumerate() {
                required *= &side_mass[e][j];
            }
            let m = measure.get(&key).cloned().unwrap_or_else(zero);
            if m < required {
                cell_violations.push(LowerBoundViolation { key: key.clone(), measure: m, required });
            }
            let mut pos = key.len();
            loop {
                if pos == 0 {
                    break 'outer;
                }
                pos -= 1;
                if key[pos] < bs[pos] {
                    key[pos] += 1;
                    continue 'outer;
                }
                key[pos] = 1;
            }
        }
    }
    let pass = cell_violations.is_empty() && side_violations.is_empty();
    Ok(LowerBoundReport { b, f_b, cells_checked: checked, cell_violations, side_violations, pass })
}
