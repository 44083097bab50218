//! Energy-increment refinement of a pair of vertex partitions for a binary
//! `[0,1]`-valued function. Witnesses are searched in floating point and
//! every accepted split is confirmed with exact arithmetic.

use crate::error::{structural, Error, Result};
use crate::function::PartiteFunction;
use crate::rational::{to_f64, Rational};
use num_traits::{Signed, Zero};
use serde::Serialize;

const SEARCH_STARTS: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitRecord {
    pub row_part: usize,
    pub col_part: usize,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    /// `|sum_{A'xB'} w (g - gamma)|` for the witness.
    #[serde(with = "crate::rational::as_string")]
    pub discrepancy: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EnergyStep {
    #[serde(with = "crate::rational::as_string")]
    pub energy: Rational,
    pub row_parts: Vec<usize>,
    pub col_parts: Vec<usize>,
    /// The split that produced this partition (absent for the initial one).
    pub split: Option<SplitRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EnergyRun {
    pub steps: Vec<EnergyStep>,
    /// No block pair has a witness above the threshold at the last step.
    pub converged: bool,
}

impl EnergyRun {
    pub fn last(&self) -> &EnergyStep {
        self.steps.last().expect("run has an initial step")
    }

    pub fn energies(&self) -> Vec<Rational> {
        self.steps.iter().map(|s| s.energy.clone()).collect()
    }
}

fn check(g: &PartiteFunction, rows: &[usize], cols: &[usize]) -> Result<()> {
    if g.arity() != 2 {
        return Err(structural(format!("expected a binary function, arity is {}", g.arity())));
    }
    if rows.len() != g.parts()[0].len() || cols.len() != g.parts()[1].len() {
        return Err(structural("partition does not cover the grounds"));
    }
    Ok(())
}

fn num_parts(a: &[usize]) -> usize {
    a.iter().copied().max().map_or(0, |m| m + 1)
}

/// Per block pair `(mass, sum of weighted values)`.
pub fn block_sums(g: &PartiteFunction, rows: &[usize], cols: &[usize]) -> Vec<Vec<(Rational, Rational)>> {
    let (pr, pc) = (num_parts(rows), num_parts(cols));
    let mut out = vec![vec![(Rational::zero(), Rational::zero()); pc]; pr];
    let (wa, wb) = (g.parts()[0].weights(), g.parts()[1].weights());
    for (a, &ra) in rows.iter().enumerate() {
        for (b, &cb) in cols.iter().enumerate() {
            let w = &wa[a] * &wb[b];
            let cell = &mut out[ra][cb];
            cell.1 += &w * g.value(&[a, b]);
            cell.0 += w;
        }
    }
    out
}

/// `sum_blocks mu(block) * avg(block)^2`.
pub fn energy(g: &PartiteFunction, rows: &[usize], cols: &[usize]) -> Result<Rational> {
    check(g, rows, cols)?;
    let mut e = Rational::zero();
    for row in block_sums(g, rows, cols) {
        for (m, s) in row {
            if m.is_positive() {
                e += &s * &s / m;
            }
        }
    }
    Ok(e)
}

/// Exact `sum_{A' x B'} w_a w_b (g_ab - gamma)`.
pub fn exact_deviation(g: &PartiteFunction, rows: &[usize], cols: &[usize], gamma: &Rational) -> Rational {
    let (wa, wb) = (g.parts()[0].weights(), g.parts()[1].weights());
    let mut s = Rational::zero();
    for &a in rows {
        for &b in cols {
            s += &wa[a] * &wb[b] * (g.value(&[a, b]) - gamma);
        }
    }
    s
}

/// Alternating sign search for a large-discrepancy rectangle inside
/// `p x q`. Returns the best rectangle found (possibly empty).
pub fn search_witness(g: &PartiteFunction, p: &[usize], q: &[usize], gamma: f64) -> (Vec<usize>, Vec<usize>) {
    let wa: Vec<f64> = g.parts()[0].weights().iter().map(to_f64).collect();
    let wb: Vec<f64> = g.parts()[1].weights().iter().map(to_f64).collect();
    let h: Vec<Vec<f64>> = p
        .iter()
        .map(|&a| q.iter().map(|&b| wa[a] * wb[b] * (to_f64(g.value(&[a, b])) - gamma)).collect())
        .collect();
    let mut best = (0.0f64, Vec::new(), Vec::new());
    let starts = q.len().min(SEARCH_STARTS);
    for sign in [1.0f64, -1.0] {
        for s in 0..=starts {
            let mut colset: Vec<bool> = if s < starts {
                (0..q.len()).map(|j| j == s * q.len() / starts).collect()
            } else {
                vec![true; q.len()]
            };
            let mut rowset = vec![false; p.len()];
            for _ in 0..32 {
                let new_rows: Vec<bool> = h
                    .iter()
                    .map(|r| sign * r.iter().zip(&colset).filter(|(_, &c)| c).map(|(v, _)| v).sum::<f64>() > 0.0)
                    .collect();
                let new_cols: Vec<bool> = (0..q.len())
                    .map(|j| sign * (0..p.len()).filter(|&i| new_rows[i]).map(|i| h[i][j]).sum::<f64>() > 0.0)
                    .collect();
                let stable = new_rows == rowset && new_cols == colset;
                rowset = new_rows;
                colset = new_cols;
                if stable {
                    break;
                }
            }
            let val: f64 = sign
                * (0..p.len())
                    .filter(|&i| rowset[i])
                    .map(|i| (0..q.len()).filter(|&j| colset[j]).map(|j| h[i][j]).sum::<f64>())
                    .sum::<f64>();
            if val > best.0 {
                let rs = (0..p.len()).filter(|&i| rowset[i]).map(|i| p[i]).collect();
                let cs = (0..q.len()).filter(|&j| colset[j]).map(|j| q[j]).collect();
                best = (val, rs, cs);
            }
        }
    }
    (best.1, best.2)
}

fn members(a: &[usize], j: usize) -> Vec<usize> {
    a.iter().enumerate().filter(|(_, &p)| p == j).map(|(i, _)| i).collect()
}

/// The block pair with the largest confirmed witness whose discrepancy
/// exceeds `eta * mu(P) * mu(Q)`.
pub fn find_split(
    g: &PartiteFunction,
    rows: &[usize],
    cols: &[usize],
    eta: &Rational,
) -> Result<Option<SplitRecord>> {
    check(g, rows, cols)?;
    let sums = block_sums(g, rows, cols);
    let mut best: Option<(Rational, SplitRecord)> = None;
    for (i, row) in sums.iter().enumerate() {
        for (j, (m, s)) in row.iter().enumerate() {
            if !m.is_positive() {
                continue;
            }
            let gamma = s / m;
            let (p, q) = (members(rows, i), members(cols, j));
            let (rs, cs) = search_witness(g, &p, &q, to_f64(&gamma));
            if rs.is_empty() || cs.is_empty() {
                continue;
            }
            let disc = exact_deviation(g, &rs, &cs, &gamma).abs();
            if disc <= eta * m {
                continue;
            }
            let rel = &disc / m;
            if best.as_ref().map_or(true, |(r, _)| &rel > r) {
                best = Some((rel, SplitRecord { row_part: i, col_part: j, rows: rs, cols: cs, discrepancy: disc }));
            }
        }
    }
    Ok(best.map(|b| b.1))
}

fn apply(assign: &mut [usize], part: usize, subset: &[usize]) {
    let all = members(assign, part);
    if subset.is_empty() || subset.len() == all.len() {
        return;
    }
    let fresh = num_parts(assign);
    for i in all {
        if !subset.contains(&i) {
            assign[i] = fresh;
        }
    }
}

/// Repeatedly splits the block pair with the largest confirmed witness.
pub fn energy_refine(
    g: &PartiteFunction,
    rows: Vec<usize>,
    cols: Vec<usize>,
    eta: &Rational,
    max_steps: usize,
) -> Result<EnergyRun> {
    if eta.is_negative() {
        return Err(Error::Parameter(format!("negative threshold {eta}")));
    }
    let e0 = energy(g, &rows, &cols)?;
    let mut steps = vec![EnergyStep { energy: e0, row_parts: rows, col_parts: cols, split: None }];
    for _ in 0..max_steps {
        let cur = steps.last().expect("nonempty");
        let Some(split) = find_split(g, &cur.row_parts, &cur.col_parts, eta)? else {
            return Ok(EnergyRun { steps, converged: true });
        };
        let mut r = cur.row_parts.clone();
        let mut c = cur.col_parts.clone();
        apply(&mut r, split.row_part, &split.rows);
        apply(&mut c, split.col_part, &split.cols);
        let e = energy(g, &r, &c)?;
        steps.push(EnergyStep { energy: e, row_parts: r, col_parts: c, split: Some(split) });
    }
    let last = steps.last().expect("nonempty");
    let converged = find_split(g, &last.row_parts, &last.col_parts, eta)?.is_none();
    Ok(EnergyRun { steps, converged })
}
