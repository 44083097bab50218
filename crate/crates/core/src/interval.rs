//! Shortest intervals covering all but a budgeted amount of mass.

use crate::error::{Error, Result};
use crate::rational::Rational;
use num_traits::{Signed, Zero};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Interval {
    #[serde(with = "crate::rational::as_string")]
    pub lo: Rational,
    #[serde(with = "crate::rational::as_string")]
    pub hi: Rational,
}

impl Interval {
    pub fn len(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, v: &Rational) -> bool {
        &self.lo <= v && v <= &self.hi
    }
}

/// Merges equal values and sorts ascending.
fn collapse(values: &[(Rational, Rational)]) -> Result<(Vec<(Rational, Rational)>, Rational)> {
    if values.is_empty() {
        return Err(Error::Degenerate("empty value multiset".into()));
    }
    let mut v: Vec<(Rational, Rational)> = values.to_vec();
    if let Some((_, m)) = v.iter().find(|(_, m)| m.is_negative()) {
        return Err(Error::Degenerate(format!("negative mass {m}")));
    }
    v.sort_by(|a, b| a.0.cmp(&b.0));
    let mut out: Vec<(Rational, Rational)> = Vec::with_capacity(v.len());
    for (x, m) in v {
        match out.last_mut() {
            Some((y, n)) if *y == x => *n += m,
            _ => out.push((x, m)),
        }
    }
    let total: Rational = out.iter().map(|(_, m)| m).sum();
    Ok((out, total))
}

fn search(values: &[(Rational, Rational)], budget: &Rational, strict: bool) -> Result<(Interval, Rational)> {
    let (v, total) = collapse(values)?;
    if !total.is_positive() {
        return Err(Error::Degenerate("total mass is zero".into()));
    }
    if budget.is_negative() || budget > &total {
        return Err(Error::Degenerate(format!("budget {budget} outside [0, {total}]")));
    }
    let need = &total - budget;
    let ok = |covered: &Rational| if strict { covered > &need } else { covered >= &need };
    let mut best: Option<(usize, usize)> = None;
    let mut covered = Rational::zero();
    let mut r = 0;
    for l in 0..v.len() {
        if r < l {
            r = l;
            covered = Rational::zero();
        }
        while r < v.len() && (r == l || !ok(&covered)) {
            covered += &v[r].1;
            r += 1;
        }
        if !ok(&covered) {
            break;
        }
        let len = &v[r - 1].0 - &v[l].0;
        let better = match best {
            None => true,
            Some((bl, br)) => len < &v[br].0 - &v[bl].0,
        };
        if better {
            best = Some((l, r - 1));
        }
        covered -= &v[l].1;
    }
    let (l, r) = best.ok_or_else(|| Error::Degenerate("no interval meets the budget".into()))?;
    let inside: Rational = v[l..=r].iter().map(|(_, m)| m).sum();
    Ok((
        Interval { lo: v[l].0.clone(), hi: v[r].0.clone() },
        total - inside,
    ))
}

/// Shortest closed interval whose outside mass is at most `budget`; ties go
/// to the leftmost interval. Returns the interval and the outside mass.
pub fn shortest_covering_interval(
    values: &[(Rational, Rational)],
    budget: &Rational,
) -> Result<(Interval, Rational)> {
    search(values, budget, false)
}

/// As [`shortest_covering_interval`] but with outside mass strictly below
/// `budget` (requires `budget > 0`).
pub fn shortest_interval_strict(
    values: &[(Rational, Rational)],
    budget: &Rational,
) -> Result<(Interval, Rational)> {
    if !budget.is_positive() {
        return Err(Error::Degenerate("strict budget must be positive".into()));
    }
    search(values, budget, true)
}
