//! Dense `[0,1]`-valued functions on finite products of weighted parts.

use crate::error::{structural, Result};
use crate::rational::{in_unit, one, Rational};
use crate::weighted::WeightedPart;
use num_traits::{One, Zero};

/// Row-major mixed-radix indexing of a finite product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grid {
    dims: Vec<usize>,
}

impl Grid {
    pub fn new(dims: Vec<usize>) -> Self {
        Self { dims }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn size(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn index(&self, t: &[usize]) -> usize {
        debug_assert_eq!(t.len(), self.dims.len());
        t.iter().zip(&self.dims).fold(0, |acc, (&x, &d)| acc * d + x)
    }

    pub fn checked_index(&self, t: &[usize]) -> Result<usize> {
        if t.len() != self.dims.len() {
            return Err(structural(format!(
                "tuple of length {} for arity {}",
                t.len(),
                self.dims.len()
            )));
        }
        for (i, (&x, &d)) in t.iter().zip(&self.dims).enumerate() {
            if x >= d {
                return Err(structural(format!("coordinate {i} index {x} out of range {d}")));
            }
        }
        Ok(self.index(t))
    }

    pub fn decode(&self, mut idx: usize) -> Vec<usize> {
        let mut t = vec![0; self.dims.len()];
        for i in (0..self.dims.len()).rev() {
            t[i] = idx % self.dims[i];
            idx /= self.dims[i];
        }
        t
    }

    pub fn tuples(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        (0..self.size()).map(move |i| self.decode(i))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PartiteFunction {
    parts: Vec<WeightedPart>,
    grid: Grid,
    values: Vec<Rational>,
}

impl PartiteFunction {
    pub fn new(parts: Vec<WeightedPart>, values: Vec<Rational>) -> Result<Self> {
        if parts.is_empty() {
            return Err(structural("arity must be positive"));
        }
        let grid = Grid::new(parts.iter().map(|p| p.len()).collect());
        if values.len() != grid.size() {
            return Err(structural(format!(
                "{} values for a product of size {}",
                values.len(),
                grid.size()
            )));
        }
        if let Some(v) = values.iter().find(|v| !in_unit(v)) {
            return Err(structural(format!("value {v} outside [0,1]")));
        }
        Ok(Self { parts, grid, values })
    }

    pub fn from_fn(parts: Vec<WeightedPart>, mut f: impl FnMut(&[usize]) -> Rational) -> Result<Self> {
        let grid = Grid::new(parts.iter().map(|p| p.len()).collect());
        let values = grid.tuples().map(|t| f(&t)).collect();
        Self::new(parts, values)
    }

    pub fn arity(&self) -> usize {
        self.parts.len()
    }

    pub fn parts(&self) -> &[WeightedPart] {
        &self.parts
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn value(&self, t: &[usize]) -> &Rational {
        &self.values[self.grid.index(t)]
    }

    pub fn value_at(&self, idx: usize) -> &Rational {
        &self.values[idx]
    }

    /// Product of coordinate weights.
    pub fn tuple_weight(&self, t: &[usize]) -> Rational {
        tuple_weight(&self.parts, t)
    }

    pub fn is_indicator(&self) -> bool {
        self.values.iter().all(|v| v.is_zero() || v.is_one())
    }

    /// Integral of the function against the product measure.
    pub fn mean(&self) -> Rational {
        self.grid
            .tuples()
            .zip(&self.values)
            .map(|(t, v)| v * self.tuple_weight(&t))
            .sum()
    }

    pub fn same_grounds(&self, parts: &[WeightedPart]) -> bool {
        self.parts == parts
    }

    /// Pointwise complement `1 - f`.
    pub fn complement(&self) -> Self {
        Self {
            parts: self.parts.clone(),
            grid: self.grid.clone(),
            values: self.values.iter().map(|v| one() - v).collect(),
        }
    }
}

pub fn tuple_weight(parts: &[WeightedPart], t: &[usize]) -> Rational {
    t.iter().enumerate().fold(Rational::one(), |acc, (i, &x)| acc * parts[i].weight(x))
}
