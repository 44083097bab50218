//! Graded partitions of `d`-ary sub-products and their cylinder cells.

use crate::error::{structural, Error, Result};
use crate::function::{tuple_weight, Grid};
use crate::rational::Rational;
use crate::weighted::WeightedPart;
use std::collections::BTreeMap;

/// All `d`-subsets of `0..k` in lexicographic order.
pub fn edge_sets(k: usize, d: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, k: usize, d: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for i in start..k {
            cur.push(i);
            rec(i + 1, k, d, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if d <= k {
        rec(0, k, d, &mut Vec::new(), &mut out);
    }
    out
}

pub fn project(t: &[usize], e: &[usize]) -> Vec<usize> {
    e.iter().map(|&i| t[i]).collect()
}

/// One `e`-side: a part index for every tuple of `prod_{i in e} X_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Side {
    pub edge: Vec<usize>,
    pub grid: Grid,
    pub assignment: Vec<usize>,
    pub num_parts: usize,
}

impl Side {
    pub fn part_of(&self, full: &[usize]) -> usize {
        let mut idx = 0;
        for (&i, &d) in self.edge.iter().zip(self.grid.dims()) {
            idx = idx * d + full[i];
        }
        self.assignment[idx]
    }

    /// Non-exceptional part count `b_e`.
    pub fn b(&self) -> usize {
        self.num_parts - 1
    }

    pub fn members(&self, j: usize) -> Vec<Vec<usize>> {
        self.assignment
            .iter()
            .enumerate()
            .filter(|(_, &a)| a == j)
            .map(|(i, _)| self.grid.decode(i))
            .collect()
    }

    pub fn part_mass(&self, parts: &[WeightedPart], j: usize) -> Rational {
        let sub: Vec<WeightedPart> = self.edge.iter().map(|&i| parts[i].clone()).collect();
        self.assignment
            .iter()
            .enumerate()
            .filter(|(_, &a)| a == j)
            .map(|(i, _)| tuple_weight(&sub, &self.grid.decode(i)))
            .sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPartition {
    k: usize,
    d: usize,
    dims: Vec<usize>,
    sides: Vec<Side>,
}

impl GradedPartition {
    /// Builds from explicit part lists; part 0 of every side is the
    /// exceptional side and may be empty.
    pub fn from_parts(dims: Vec<usize>, d: usize, parts: Vec<Vec<Vec<Vec<usize>>>>) -> Result<Self> {
        let k = dims.len();
        check_kd(k, d)?;
        let edges = edge_sets(k, d);
        if parts.len() != edges.len() {
            return Err(structural(format!("{} sides for {} index sets", parts.len(), edges.len())));
        }
        let mut sides = Vec::with_capacity(edges.len());
        for (e, ps) in edges.into_iter().zip(parts) {
            validate_side_parts(&dims, &e, &ps)?;
            let grid = Grid::new(e.iter().map(|&i| dims[i]).collect());
            let mut assignment = vec![0; grid.size()];
            for (j, p) in ps.iter().enumerate() {
                for t in p {
                    assignment[grid.index(t)] = j;
                }
            }
            sides.push(Side { edge: e, grid, num_parts: ps.len().max(1), assignment });
        }
        Ok(Self { k, d, dims, sides })
    }

    /// Builds from per-side assignment vectors (row-major over each sub-product).
    pub fn from_assignments(dims: Vec<usize>, d: usize, assignments: Vec<Vec<usize>>) -> Result<Self> {
        let k = dims.len();
        check_kd(k, d)?;
        let edges = edge_sets(k, d);
        if assignments.len() != edges.len() {
            return Err(structural(format!(
                "{} sides for {} index sets",
                assignments.len(),
                edges.len()
            )));
        }
        let mut sides = Vec::with_capacity(edges.len());
        for (e, a) in edges.into_iter().zip(assignments) {
            let grid = Grid::new(e.iter().map(|&i| dims[i]).collect());
            if a.len() != grid.size() {
                return Err(structural(format!(
                    "side {e:?} has {} entries, expected {}",
                    a.len(),
                    grid.size()
                )));
            }
            let num_parts = a.iter().copied().max().map_or(1, |m| m + 1);
            sides.push(Side { edge: e, grid, assignment: a, num_parts });
        }
        Ok(Self { k, d, dims, sides })
    }

    /// Every side a single non-exceptional part.
    pub fn trivial(dims: Vec<usize>, d: usize) -> Result<Self> {
        let k = dims.len();
        check_kd(k, d)?;
        let a = edge_sets(k, d)
            .iter()
            .map(|e| vec![1; e.iter().map(|&i| dims[i]).product()])
            .collect();
        Self::from_assignments(dims, d, a)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn sides(&self) -> &[Side] {
        &self.sides
    }

    pub fn side(&self, e: usize) -> &Side {
        &self.sides[e]
    }

    /// `max_e b_e`, floored at 1 so budgets are evaluated on positive integers.
    pub fn max_b(&self) -> usize {
        self.sides.iter().map(|s| s.b()).max().unwrap_or(0).max(1)
    }

    pub fn key_of(&self, t: &[usize]) -> Vec<usize> {
        self.sides.iter().map(|s| s.part_of(t)).collect()
    }

    /// Nonempty cylinder cells keyed by part indices, members as flat tuple
    /// indices into the full product grid.
    pub fn cells(&self) -> BTreeMap<Vec<usize>, Vec<usize>> {
        let grid = Grid::new(self.dims.clone());
        let mut out: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for (idx, t) in grid.tuples().enumerate() {
            out.entry(self.key_of(&t)).or_default().push(idx);
        }
        out
    }

    pub fn cell(&self, key: &[usize]) -> CylinderCell {
        let grid = Grid::new(self.dims.clone());
        let members = grid.tuples().filter(|t| self.key_of(t) == key).collect();
        CylinderCell { key: key.to_vec(), members }
    }

    pub fn check_grounds(&self, parts: &[WeightedPart]) -> Result<()> {
        let dims: Vec<usize> = parts.iter().map(|p| p.len()).collect();
        if dims != self.dims {
            return Err(structural(format!(
                "partition grounds {:?} do not match function grounds {:?}",
                self.dims, dims
            )));
        }
        Ok(())
    }

    /// Recomputes the disjoint-and-covering invariant from the part lists.
    pub fn validate(&self) -> Result<()> {
        for s in &self.sides {
            let parts: Vec<Vec<Vec<usize>>> = (0..s.num_parts).map(|j| s.members(j)).collect();
            validate_side_parts(&self.dims, &s.edge, &parts)?;
        }
        Ok(())
    }

    /// Part lists for side `e`, index 0 first.
    pub fn side_parts(&self, e: usize) -> Vec<Vec<Vec<usize>>> {
        let s = &self.sides[e];
        (0..s.num_parts).map(|j| s.members(j)).collect()
    }
}

fn check_kd(k: usize, d: usize) -> Result<()> {
    if d == 0 || d >= k {
        return Err(Error::Parameter(format!("need 1 <= d < k, got d={d}, k={k}")));
    }
    Ok(())
}

/// Checks that `parts` are pairwise disjoint and cover `prod_{i in e} X_i`.
pub fn validate_side_parts(dims: &[usize], e: &[usize], parts: &[Vec<Vec<usize>>]) -> Result<()> {
    let sub: Vec<usize> = e.iter().map(|&i| dims[i]).collect();
    let grid = Grid::new(sub);
    let mut owner: Vec<Option<usize>> = vec![None; grid.size()];
    for (j, p) in parts.iter().enumerate() {
        for t in p {
            let idx = grid
                .checked_index(t)
                .map_err(|err| structural(format!("side {e:?} part {j}: {err}")))?;
            if let Some(prev) = owner[idx] {
                return Err(structural(format!(
                    "side {e:?}: tuple {t:?} in parts {prev} and {j}"
                )));
            }
            owner[idx] = Some(j);
        }
    }
    if let Some(miss) = owner.iter().position(|o| o.is_none()) {
        return Err(structural(format!(
            "side {e:?}: tuple {:?} not covered",
            grid.decode(miss)
        )));
    }
    Ok(())
}

/// Materialized cylinder intersection `cap_e {x : x_e in S_{e, key_e}}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CylinderCell {
    pub key: Vec<usize>,
    pub members: Vec<Vec<usize>>,
}

/// Product measure of the cell's member tuples.
pub fn cell_measure(cell: &CylinderCell, parts: &[WeightedPart]) -> Result<Rational> {
    let mut total = Rational::from_integer(0.into());
    for t in &cell.members {
        if t.len() != parts.len() {
            return Err(structural(format!("tuple {t:?} has wrong arity")));
        }
        for (i, &x) in t.iter().enumerate() {
            if x >= parts[i].len() {
                return Err(structural(format!("coordinate {i}: index {x} not in part")));
            }
        }
        total += tuple_weight(parts, t);
    }
    Ok(total)
}
