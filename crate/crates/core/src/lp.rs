//! Exact two-phase simplex over rationals with Bland's anti-cycling rule.

use crate::rational::Rational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cmp {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub cmp: Cmp,
    pub rhs: Rational,
}

/// Maximize `objective . x` over `x >= 0` subject to the constraints.
#[derive(Clone, Debug, Default)]
pub struct LinearProgram {
    pub num_vars: usize,
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { x: Vec<Rational>, value: Rational },
}

impl LinearProgram {
    pub fn new(num_vars: usize) -> Self {
        Self { num_vars, objective: vec![Rational::zero(); num_vars], constraints: Vec::new() }
    }

    /// Adds `sum coeffs[i] * x[i] cmp rhs` from sparse `(index, coefficient)` terms.
    pub fn add(&mut self, terms: &[(usize, Rational)], cmp: Cmp, rhs: Rational) {
        let mut coeffs = vec![Rational::zero(); self.num_vars];
        for (i, c) in terms {
            coeffs[*i] += c;
        }
        self.constraints.push(Constraint { coeffs, cmp, rhs });
    }

    pub fn solve(&self) -> LpOutcome {
        Tableau::build(self).run(self)
    }
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    ncols: usize,
    first_art: usize,
}

enum Step {
    Optimal,
    Unbounded,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Self {
        let n = lp.num_vars;
        let m = lp.constraints.len();
        let slacks = lp.constraints.iter().filter(|c| c.cmp != Cmp::Eq).count();
        let arts = lp
            .constraints
            .iter()
            .filter(|c| {
                let neg = c.rhs.is_negative();
                match c.cmp {
                    Cmp::Eq => true,
                    Cmp::Le => neg,
                    Cmp::Ge => !neg,
                }
            })
            .count();
        let first_art = n + slacks;
        let ncols = first_art + arts;
        let mut rows = Vec::with_capacity(m);
        let mut rhs = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let (mut s, mut a) = (n, first_art);
        for c in &lp.constraints {
            let flip = c.rhs.is_negative();
            let mut row = vec![Rational::zero(); ncols];
            for (j, v) in c.coeffs.iter().enumerate() {
                row[j] = if flip { -v } else { v.clone() };
            }
            let cmp = match (c.cmp, flip) {
                (Cmp::Le, true) => Cmp::Ge,
                (Cmp::Ge, true) => Cmp::Le,
                (x, _) => x,
            };
            match cmp {
                Cmp::Le => {
                    row[s] = Rational::one();
                    basis.push(s);
                    s += 1;
                }
                Cmp::Ge => {
                    row[s] = -Rational::one();
                    s += 1;
                    row[a] = Rational::one();
                    basis.push(a);
                    a += 1;
                }
                Cmp::Eq => {
                    row[a] = Rational::one();
                    basis.push(a);
                    a += 1;
                }
            }
            rows.push(row);
            rhs.push(if flip { -c.rhs.clone() } else { c.rhs.clone() });
        }
        Self { rows, rhs, basis, ncols, first_art }
    }

    fn reduced(&self, cost: &[Rational]) -> Vec<Rational> {
        let mut d = cost.to_vec();
        for (i, row) in self.rows.iter().enumerate() {
            let cb = &cost[self.basis[i]];
            if cb.is_zero() {
                continue;
            }
            for (dj, t) in d.iter_mut().zip(row) {
                if !t.is_zero() {
                    *dj -= cb * t;
                }
            }
        }
        d
    }

    fn pivot(&mut self, r: usize, j: usize, d: &mut [Rational]) {
        let p = self.rows[r][j].clone();
        if !p.is_one() {
            for v in self.rows[r].iter_mut() {
                if !v.is_zero() {
                    *v /= &p;
                }
            }
            self.rhs[r] /= &p;
        }
        let prow = self.rows[r].clone();
        let prhs = self.rhs[r].clone();
        let nz: Vec<usize> = (0..prow.len()).filter(|&c| !prow[c].is_zero()).collect();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][j].is_zero() {
                continue;
            }
            let f = self.rows[i][j].clone();
            for &c in &nz {
                let delta = &f * &prow[c];
                self.rows[i][c] -= delta;
            }
            self.rhs[i] -= &f * &prhs;
        }
        if !d[j].is_zero() {
            let f = d[j].clone();
            for &c in &nz {
                d[c] -= &f * &prow[c];
            }
        }
        self.basis[r] = j;
    }

    /// Bland's rule: lowest-index improving column, lowest-index basic
    /// variable among ratio ties.
    fn optimize(&mut self, d: &mut Vec<Rational>, allowed: usize) -> Step {
        loop {
            let Some(j) = (0..allowed).find(|&j| d[j].is_positive()) else {
                return Step::Optimal;
            };
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][j];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            let Some((r, _)) = best else {
                return Step::Unbounded;
            };
            self.pivot(r, j, d);
        }
    }

    fn run(mut self, lp: &LinearProgram) -> LpOutcome {
        let n = lp.num_vars;
        if self.ncols > self.first_art {
            let mut cost = vec![Rational::zero(); self.ncols];
            for c in cost.iter_mut().skip(self.first_art) {
                *c = -Rational::one();
            }
            let mut d = self.reduced(&cost);
            self.optimize(&mut d, self.ncols);
            let infeas = self
                .basis
                .iter()
                .zip(&self.rhs)
                .any(|(&b, v)| b >= self.first_art && v.is_positive());
            if infeas {
                return LpOutcome::Infeasible;
            }
            let mut i = 0;
            while i < self.rows.len() {
                if self.basis[i] >= self.first_art {
                    if let Some(j) = (0..self.first_art).find(|&j| !self.rows[i][j].is_zero()) {
                        let mut dummy = vec![Rational::zero(); self.ncols];
                        self.pivot(i, j, &mut dummy);
                    } else {
                        self.rows.remove(i);
                        self.rhs.remove(i);
                        self.basis.remove(i);
                        continue;
                    }
                }
                i += 1;
            }
        }
        let mut cost = vec![Rational::zero(); self.ncols];
        cost[..n].clone_from_slice(&lp.objective);
        let mut d = self.reduced(&cost);
        match self.optimize(&mut d, self.first_art) {
            Step::Unbounded => LpOutcome::Unbounded,
            Step::Optimal => {
                let mut x = vec![Rational::zero(); n];
                for (i, &b) in self.basis.iter().enumerate() {
                    if b < n {
                        x[b] = self.rhs[i].clone();
                    }
                }
                let value = x.iter().zip(&lp.objective).map(|(a, b)| a * b).sum();
                LpOutcome::Optimal { x, value }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn textbook_maximum() {
        // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18 -> (2, 6), 36
        let mut lp = LinearProgram::new(2);
        lp.objective = vec![int(3), int(5)];
        lp.add(&[(0, int(1))], Cmp::Le, int(4));
        lp.add(&[(1, int(2))], Cmp::Le, int(12));
        lp.add(&[(0, int(3)), (1, int(2))], Cmp::Le, int(18));
        assert_eq!(lp.solve(), LpOutcome::Optimal { x: vec![int(2), int(6)], value: int(36) });
    }

    #[test]
    fn infeasible_and_unbounded() {
        let mut lp = LinearProgram::new(1);
        lp.add(&[(0, int(1))], Cmp::Ge, int(2));
        lp.add(&[(0, int(1))], Cmp::Le, int(1));
        assert_eq!(lp.solve(), LpOutcome::Infeasible);
        let mut lp = LinearProgram::new(1);
        lp.objective = vec![int(1)];
        lp.add(&[(0, int(1))], Cmp::Ge, int(1));
        assert_eq!(lp.solve(), LpOutcome::Unbounded);
    }

    #[test]
    fn equality_and_negative_rhs() {
        // max x - y, x + y = 1, -x <= -1/3 -> x = 1, value 1
        let mut lp = LinearProgram::new(2);
        lp.objective = vec![int(1), int(-1)];
        lp.add(&[(0, int(1)), (1, int(1))], Cmp::Eq, int(1));
        lp.add(&[(0, int(-1))], Cmp::Le, rat(-1, 3));
        assert_eq!(lp.solve(), LpOutcome::Optimal { x: vec![int(1), int(0)], value: int(1) });
    }

    #[test]
    fn redundant_equalities() {
        let mut lp = LinearProgram::new(2);
        lp.objective = vec![int(1), int(0)];
        lp.add(&[(0, int(1)), (1, int(1))], Cmp::Eq, int(2));
        lp.add(&[(0, int(2)), (1, int(2))], Cmp::Eq, int(4));
        lp.add(&[(1, int(1))], Cmp::Ge, rat(1, 2));
        assert_eq!(lp.solve(), LpOutcome::Optimal { x: vec![rat(3, 2), rat(1, 2)], value: rat(3, 2) });
    }
}
