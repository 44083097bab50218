//! Constructors for candidate regular partitions of average systems.
//!
//! Each side `P^e` is viewed as a relation on `U_e x Omega` with
//! `U_e = prod_{i in e} X_i`; a partition of `U_e` and of `Omega` is found
//! for it, the blocks are classified as faces, and irregular or tiny parts
//! of `U_e` are collected into the exceptional side.

use super::energy::{block_sums, energy_refine, exact_deviation, search_witness};
use crate::budget::BudgetFn;
use crate::error::{Error, Result};
use crate::function::{Grid, PartiteFunction};
use crate::generators::average::AverageSystem;
use crate::partition::GradedPartition;
use crate::rational::{int, one, to_f64, zero, Rational};
use crate::weighted::WeightedPart;
use num_traits::{Signed, Zero};
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    /// Group tuples with identical subsets; cells are exactly constant.
    Profile,
    /// Energy-increment refinement from the trivial partition.
    Energy,
}

impl std::str::FromStr for Strategy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "profile" => Ok(Self::Profile),
            "energy" => Ok(Self::Energy),
            _ => Err(Error::Parse(format!("unknown strategy {s:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ConstructOptions {
    pub strategy: Strategy,
    /// Relative discrepancy above which a face counts as irregular.
    pub eta: Rational,
    pub max_steps: usize,
}

impl Default for ConstructOptions {
    fn default() -> Self {
        Self { strategy: Strategy::Profile, eta: Rational::new(1.into(), 100.into()), max_steps: 64 }
    }
}

/// A block `A_{e,i} x W_{e,c}` of `U_e x Omega`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceStats {
    pub edge: Vec<usize>,
    pub row_part: usize,
    pub omega_part: usize,
    #[serde(with = "crate::rational::as_string")]
    pub mass: Rational,
    /// `gamma = mu(P^e cap face) / mu(face)`.
    #[serde(with = "crate::rational::as_string")]
    pub density: Rational,
    /// Largest relative discrepancy found inside the face.
    #[serde(with = "crate::rational::as_string")]
    pub deviation: Rational,
}

/// Predicted versus actual average of a base cell.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellStats {
    pub key: Vec<usize>,
    #[serde(with = "crate::rational::as_string")]
    pub measure: Rational,
    /// `sum_C prod_e gamma_{C_e} delta_C` over the common refinement of the
    /// `Omega` partitions.
    #[serde(with = "crate::rational::as_string")]
    pub predicted: Rational,
    #[serde(with = "crate::rational::as_string")]
    pub actual: Rational,
    #[serde(with = "crate::rational::as_string")]
    pub deviation: Rational,
}

#[derive(Clone, Debug, Serialize)]
pub struct SideConstruction {
    pub edge: Vec<usize>,
    pub steps: usize,
    pub converged: bool,
    pub row_parts: usize,
    pub omega_parts: usize,
    pub exceptional_rows: Vec<usize>,
    #[serde(with = "crate::rational::as_string")]
    pub exceptional_mass: Rational,
    pub faces: Vec<FaceStats>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Construction {
    #[serde(skip)]
    pub partition: GradedPartition,
    pub strategy: Strategy,
    pub sides: Vec<SideConstruction>,
    pub cells: Vec<CellStats>,
    #[serde(with = "crate::rational::as_string")]
    pub max_deviation: Rational,
    /// Refinement did not converge or irregular parts exceeded the exceptional budget.
    pub partial: bool,
}

const SCOPE: [(usize, usize); 5] = [(2, 1), (3, 1), (3, 2), (4, 2), (4, 3)];

/// The side relation `P^e` as an indicator on `U_e x Omega`.
pub fn side_relation(sys: &AverageSystem, e: usize) -> Result<PartiteFunction> {
    let edge = &sys.edges()[e];
    let grid = sys.grid(e);
    let mut labels = Vec::with_capacity(grid.size());
    let mut weights = Vec::with_capacity(grid.size());
    for t in grid.tuples() {
        labels.push(t.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","));
        let mut w = one();
        for (&i, &x) in edge.iter().zip(&t) {
            w *= sys.parts()[i].weight(x);
        }
        weights.push(w);
    }
    let u = WeightedPart::new(labels, weights)?;
    let fam = sys.family(e);
    PartiteFunction::from_fn(vec![u, sys.omega().clone()], |x| {
        if fam[x[0]].contains(x[1]) {
            one()
        } else {
            zero()
        }
    })
}

fn group_by<K: std::hash::Hash + Eq + Clone>(keys: impl Iterator<Item = K>) -> Vec<usize> {
    let mut ids: HashMap<K, usize> = HashMap::new();
    keys.map(|k| {
        let n = ids.len();
        *ids.entry(k).or_insert(n)
    })
    .collect()
}

fn profile_partition(sys: &AverageSystem, e: usize) -> (Vec<usize>, Vec<usize>) {
    let fam = sys.family(e);
    let rows = group_by(fam.iter().cloned());
    let nrows = rows.iter().copied().max().map_or(0, |m| m + 1);
    let mut reps = vec![usize::MAX; nrows];
    for (t, &r) in rows.iter().enumerate() {
        if reps[r] == usize::MAX {
            reps[r] = t;
        }
    }
    let cols = group_by((0..sys.omega().len()).map(|w| reps.iter().map(|&t| fam[t].contains(w)).collect::<Vec<_>>()));
    (rows, cols)
}

fn members(a: &[usize], j: usize) -> Vec<usize> {
    a.iter().enumerate().filter(|(_, &p)| p == j).map(|(i, _)| i).collect()
}

/// Builds sides from per-`e` partitions of `U_e` and `Omega`, sends irregular
/// or tiny parts to the exceptional side when their mass allows, and reports
/// per-cell predictions.
pub fn build_regular_partition_avg(
    sys: &AverageSystem,
    epsilon: &Rational,
    budget_fn: &BudgetFn,
    opts: &ConstructOptions,
) -> Result<Construction> {
    let (k, d) = (sys.k(), sys.d());
    if !SCOPE.contains(&(k, d)) {
        return Err(Error::Unsupported(format!("constructor supports (k,d) in {SCOPE:?}, got ({k},{d})")));
    }
    if !epsilon.is_positive() {
        return Err(Error::Parameter(format!("epsilon {epsilon} must be positive")));
    }
    let mut sides = Vec::new();
    let mut assignments = Vec::new();
    let mut side_rows: Vec<(Vec<usize>, Vec<usize>, BTreeMap<usize, usize>)> = Vec::new();
    let mut gammas: Vec<BTreeMap<(usize, usize), Rational>> = Vec::new();
    let mut partial = false;
    for e in 0..sys.edges().len() {
        let g = side_relation(sys, e)?;
        let (rows, cols, steps, converged) = match opts.strategy {
            Strategy::Profile => {
                let (r, c) = profile_partition(sys, e);
                (r, c, 0, true)
            }
            Strategy::Energy => {
                let run = energy_refine(&g, vec![0; g.parts()[0].len()], vec![0; g.parts()[1].len()], &opts.eta, opts.max_steps)?;
                let last = run.last().clone();
                (last.row_parts, last.col_parts, run.steps.len() - 1, run.converged)
            }
        };
        partial |= !converged;
        let sums = block_sums(&g, &rows, &cols);
        let mut faces = Vec::new();
        let mut gamma = BTreeMap::new();
        let mut irregular = vec![false; sums.len()];
        let row_members: Vec<Vec<usize>> = (0..sums.len()).map(|i| members(&rows, i)).collect();
        let col_members: Vec<Vec<usize>> =
            (0..sums.first().map_or(0, |r| r.len())).map(|c| members(&cols, c)).collect();
        for (i, row) in sums.iter().enumerate() {
            for (c, (m, s)) in row.iter().enumerate() {
                if !m.is_positive() {
                    continue;
                }
                let gm = s / m;
                let (rs, cs) = search_witness(&g, &row_members[i], &col_members[c], to_f64(&gm));
                let dev = if rs.is_empty() || cs.is_empty() {
                    Rational::zero()
                } else {
                    exact_deviation(&g, &rs, &cs, &gm).abs() / m
                };
                if dev > opts.eta {
                    irregular[i] = true;
                }
                gamma.insert((i, c), gm.clone());
                faces.push(FaceStats {
                    edge: sys.edges()[e].clone(),
                    row_part: i,
                    omega_part: c,
                    mass: m.clone(),
                    density: gm,
                    deviation: dev,
                });
            }
        }
        let upart = &g.parts()[0];
        let row_mass: Vec<Rational> = row_members.iter().map(|m| upart.mass(m)).collect();
        let mut exceptional: Vec<usize> = Vec::new();
        if opts.strategy == Strategy::Energy {
            let b = sums.len().max(1);
            let tiny = budget_fn.eval(b) * epsilon / int(b as i64);
            let small: Vec<usize> = (0..sums.len()).filter(|&i| row_mass[i] < tiny).collect();
            let bad: Vec<usize> = (0..sums.len()).filter(|&i| irregular[i] || row_mass[i] < tiny).collect();
            let bad_mass: Rational = bad.iter().map(|&i| &row_mass[i]).sum();
            exceptional = if &bad_mass < epsilon {
                bad
            } else {
                partial = true;
                small
            };
        }
        // compact numbering: exceptional rows to 0, the rest 1.. in order
        let mut index = BTreeMap::new();
        for i in 0..sums.len() {
            if !exceptional.contains(&i) {
                let n = index.len() + 1;
                index.insert(i, n);
            }
        }
        let assign: Vec<usize> = rows.iter().map(|r| index.get(r).copied().unwrap_or(0)).collect();
        let exc_mass: Rational = exceptional.iter().map(|&i| &row_mass[i]).sum();
        sides.push(SideConstruction {
            edge: sys.edges()[e].clone(),
            steps,
            converged,
            row_parts: sums.len(),
            omega_parts: sums.first().map_or(0, |r| r.len()),
            exceptional_rows: exceptional,
            exceptional_mass: exc_mass,
            faces,
        });
        let inverse: BTreeMap<usize, usize> = index.iter().map(|(&r, &n)| (n, r)).collect();
        side_rows.push((rows, cols, inverse));
        gammas.push(gamma);
        assignments.push(assign);
    }
    let partition = GradedPartition::from_assignments(
        sys.parts().iter().map(|p| p.len()).collect(),
        d,
        assignments,
    )?;
    partition.validate()?;

    // common refinement of the Omega partitions
    let mut atoms: BTreeMap<Vec<usize>, Rational> = BTreeMap::new();
    for w in 0..sys.omega().len() {
        let key: Vec<usize> = side_rows.iter().map(|(_, cols, _)| cols[w]).collect();
        *atoms.entry(key).or_insert_with(zero) += sys.omega().weight(w);
    }
    let f = sys.to_function();
    let grid = Grid::new(partition.dims().to_vec());
    let mut cells = Vec::new();
    let mut max_dev = Rational::zero();
    for (key, mem) in partition.cells() {
        if key.iter().any(|&j| j == 0) {
            continue;
        }
        let mut measure = Rational::zero();
        let mut total = Rational::zero();
        for &i in &mem {
            let w = f.tuple_weight(&grid.decode(i));
            total += &w * f.value_at(i);
            measure += w;
        }
        let mut predicted = Rational::zero();
        for (atom, mu) in &atoms {
            let mut prod = mu.clone();
            for (e, (_, _, inverse)) in side_rows.iter().enumerate() {
                let row = inverse[&key[e]];
                prod *= gammas[e].get(&(row, atom[e])).cloned().unwrap_or_else(zero);
                if prod.is_zero() {
                    break;
                }
            }
            predicted += prod;
        }
        let actual = if measure.is_positive() { total / &measure } else { predicted.clone() };
        let deviation = (&predicted - &actual).abs();
        if deviation > max_dev {
            max_dev = deviation.clone();
        }
        cells.push(CellStats { key, measure, predicted, actual, deviation });
    }
    Ok(Construction { partition, strategy: opts.strategy, sides, cells, max_deviation: max_dev, partial })
}
