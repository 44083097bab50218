//! Finite labeled vertex sets carrying exact probability weights.

use crate::error::{structural, Result};
use crate::rational::{int, one, Rational};
use num_traits::{Signed, Zero};
use std::collections::HashSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedPart {
    labels: Vec<String>,
    weights: Vec<Rational>,
}

impl WeightedPart {
    /// Validates nonnegative weights summing to exactly 1 and distinct labels.
    pub fn new(labels: Vec<String>, weights: Vec<Rational>) -> Result<Self> {
        if labels.len() != weights.len() {
            return Err(structural(format!(
                "{} labels but {} weights",
                labels.len(),
                weights.len()
            )));
        }
        if labels.is_empty() {
            return Err(structural("empty part"));
        }
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(structural(format!("duplicate label {l:?}")));
            }
        }
        if let Some(w) = weights.iter().find(|w| w.is_negative()) {
            return Err(structural(format!("negative weight {w}")));
        }
        let total: Rational = weights.iter().sum();
        if total != one() {
            return Err(structural(format!("weights sum to {total}, not 1")));
        }
        Ok(Self { labels, weights })
    }

    /// `n` points labeled `0..n` with weight `1/n` each.
    pub fn uniform(n: usize) -> Result<Self> {
        Self::uniform_labeled((0..n).map(|i| i.to_string()).collect())
    }

    pub fn uniform_labeled(labels: Vec<String>) -> Result<Self> {
        if labels.is_empty() {
            return Err(structural("empty part"));
        }
        let w = one() / int(labels.len() as i64);
        let weights = vec![w; labels.len()];
        Self::new(labels, weights)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn weight(&self, i: usize) -> &Rational {
        &self.weights[i]
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Total weight of a set of indices.
    pub fn mass<'a>(&self, idx: impl IntoIterator<Item = &'a usize>) -> Rational {
        idx.into_iter().map(|&i| &self.weights[i]).sum()
    }

    pub fn has_zero_weights(&self) -> bool {
        self.weights.iter().any(|w| w.is_zero())
    }
}
