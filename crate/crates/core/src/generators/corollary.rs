//! Discretization of function families onto the dyadic grid and level-set
//! decomposition of continuous combinations.

use super::average::AverageSystem;
use crate::error::{structural, Error, Result};
use crate::function::Grid;
use crate::partition::{edge_sets, project};
use crate::rational::{in_unit, int, inv_pow2, Rational};
use crate::weighted::WeightedPart;
use fixedbitset::FixedBitSet;
use num_traits::{One, ToPrimitive, Zero};
use std::collections::{BTreeMap, BTreeSet};

/// Families `f^e_{x_e}: Omega -> [0,1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct FunctionFamily {
    d: usize,
    parts: Vec<WeightedPart>,
    omega: WeightedPart,
    edges: Vec<Vec<usize>>,
    grids: Vec<Grid>,
    values: Vec<Vec<Vec<Rational>>>,
}

impl FunctionFamily {
    /// `values[e][i][w]` is `f^e` at the `i`-th `e`-tuple and point `w`.
    pub fn new(d: usize, parts: Vec<WeightedPart>, omega: WeightedPart, values: Vec<Vec<Vec<Rational>>>) -> Result<Self> {
        let k = parts.len();
        if d == 0 || d >= k {
            return Err(Error::Parameter(format!("need 1 <= d < k, got d={d}, k={k}")));
        }
        let edges = edge_sets(k, d);
        if values.len() != edges.len() {
            return Err(structural("one family per index set required"));
        }
        let mut grids = Vec::new();
        for (e, fam) in edges.iter().zip(&values) {
            let grid = Grid::new(e.iter().map(|&i| parts[i].len()).collect());
            if fam.len() != grid.size() {
                return Err(structural(format!("family for {e:?} has wrong size")));
            }
            for row in fam {
                if row.len() != omega.len() {
                    return Err(structural("function row does not match omega"));
                }
                if let Some(v) = row.iter().find(|v| !in_unit(v)) {
                    return Err(structural(format!("value {v} outside [0,1]")));
                }
            }
            grids.push(grid);
        }
        Ok(Self { d, parts, omega, edges, grids, values })
    }

    /// Indicator functions of an average system's subsets.
    pub fn from_average(sys: &AverageSystem) -> Self {
        let values = (0..sys.edges().len())
            .map(|e| {
                sys.family(e)
                    .iter()
                    .map(|s| (0..sys.omega().len()).map(|w| int(s.contains(w) as i64)).collect())
                    .collect()
            })
            .collect();
        Self::new(sys.d(), sys.parts().to_vec(), sys.omega().clone(), values).expect("indicator family is valid")
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn parts(&self) -> &[WeightedPart] {
        &self.parts
    }

    pub fn omega(&self) -> &WeightedPart {
        &self.omega
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn value(&self, e: usize, sub: &[usize], w: usize) -> &Rational {
        &self.values[e][self.grids[e].index(sub)][w]
    }

    pub fn full_grid(&self) -> Grid {
        Grid::new(self.parts.iter().map(|p| p.len()).collect())
    }

    /// Direct integral `int h((f^e_{x_e}(w))_e) dmu(w)`.
    pub fn direct_integral(&self, h: &dyn Fn(&[Rational]) -> Rational, x: &[usize]) -> Rational {
        (0..self.omega.len())
            .map(|w| {
                let args: Vec<Rational> = (0..self.edges.len())
                    .map(|e| self.value(e, &project(x, &self.edges[e]), w).clone())
                    .collect();
                h(&args) * self.omega.weight(w)
            })
            .sum()
    }
}

/// Simple functions `s^e = floor(f^e 2^n) / 2^n`, stored as grid levels in
/// `0..=2^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Discretized {
    pub n: u32,
    pub levels: Vec<Vec<Vec<u32>>>,
}

impl Discretized {
    pub fn step(&self) -> Rational {
        inv_pow2(self.n)
    }

    pub fn level_value(&self, level: u32) -> Rational {
        int(level as i64) * self.step()
    }
}

pub const MAX_RESOLUTION: u32 = 30;

fn floor_level(v: &Rational, n: u32) -> u32 {
    let scaled = v * Rational::from_integer((1u64 << n).into());
    scaled.floor().to_integer().to_u32().expect("level fits in u32")
}

pub fn discretize_function_family(ff: &FunctionFamily, n: u32) -> Result<Discretized> {
    if n == 0 || n > MAX_RESOLUTION {
        return Err(Error::Parameter(format!("resolution {n} outside 1..={MAX_RESOLUTION}")));
    }
    let levels = ff
        .values
        .iter()
        .map(|fam| fam.iter().map(|row| row.iter().map(|v| floor_level(v, n)).collect()).collect())
        .collect();
    Ok(Discretized { n, levels })
}

/// For each output level `i`, the set `J_i` of input-level combinations whose
/// combined value falls in `[i/2^{n'}, (i+1)/2^{n'})` (the top level is closed).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelDecomposition {
    pub n_in: u32,
    pub n_out: u32,
    pub classes: BTreeMap<u32, BTreeSet<Vec<u32>>>,
}

impl LevelDecomposition {
    pub fn level_of(&self, combo: &[u32]) -> Option<u32> {
        self.classes.iter().find(|(_, s)| s.contains(combo)).map(|(&i, _)| i)
    }
}

fn combo_at(ff: &FunctionFamily, disc: &Discretized, x: &[usize], w: usize) -> Vec<u32> {
    (0..ff.edges.len())
        .map(|e| disc.levels[e][ff.grids[e].index(&project(x, &ff.edges[e]))][w])
        .collect()
}

fn eval_level(h: &dyn Fn(&[Rational]) -> Rational, disc: &Discretized, combo: &[u32], n_out: u32) -> Result<u32> {
    let args: Vec<Rational> = combo.iter().map(|&l| disc.level_value(l)).collect();
    let v = h(&args);
    if !in_unit(&v) {
        return Err(Error::Contract(format!("combiner value {v} outside [0,1]")));
    }
    Ok(floor_level(&v, n_out))
}

/// Collects the realized input-level combinations and groups them by output
/// level.
pub fn level_set_decompose(
    h: &dyn Fn(&[Rational]) -> Rational,
    ff: &FunctionFamily,
    disc: &Discretized,
    n_out: u32,
) -> Result<LevelDecomposition> {
    if n_out == 0 || n_out > MAX_RESOLUTION {
        return Err(Error::Parameter(format!("resolution {n_out} outside 1..={MAX_RESOLUTION}")));
    }
    let mut realized: BTreeSet<Vec<u32>> = BTreeSet::new();
    for x in ff.full_grid().tuples() {
        for w in 0..ff.omega.len() {
            realized.insert(combo_at(ff, disc, &x, w));
        }
    }
    let mut classes: BTreeMap<u32, BTreeSet<Vec<u32>>> = BTreeMap::new();
    for c in realized {
        let i = eval_level(h, disc, &c, n_out)?;
        classes.entry(i).or_default().insert(c);
    }
    Ok(LevelDecomposition { n_in: disc.n, n_out, classes })
}

/// Exhaustively checks, for every tuple and output level, that the level set
/// of the combined simple function equals the union over `J_i` of the
/// intersections of input level sets. Returns the number of checked pairs.
pub fn validate_decomposition(
    h: &dyn Fn(&[Rational]) -> Rational,
    ff: &FunctionFamily,
    disc: &Discretized,
    dec: &LevelDecomposition,
) -> Result<usize> {
    let m = ff.omega.len();
    let mut checked = 0;
    for x in ff.full_grid().tuples() {
        let combos: Vec<Vec<u32>> = (0..m).map(|w| combo_at(ff, disc, &x, w)).collect();
        for (&i, js) in &dec.classes {
            let mut direct = FixedBitSet::with_capacity(m);
            let mut union = FixedBitSet::with_capacity(m);
            for w in 0..m {
                if eval_level(h, disc, &combos[w], dec.n_out)? == i {
                    direct.insert(w);
                }
            }
            for c in js {
                let mut inter = FixedBitSet::with_capacity(m);
                inter.insert_range(..);
                for (e, &ce) in c.iter().enumerate() {
                    let row = &disc.levels[e][ff.grids[e].index(&project(&x, &ff.edges[e]))];
                    let mut s = FixedBitSet::with_capacity(m);
                    for w in 0..m {
                        if row[w] == ce {
                            s.insert(w);
                        }
                    }
                    inter.intersect_with(&s);
                }
                if !union.is_disjoint(&inter) {
                    return Err(Error::Contract("level combinations overlap".into()));
                }
                union.union_with(&inter);
            }
            if direct != union {
                return Err(Error::Contract(format!("level set {i} mismatch at tuple {x:?}")));
            }
            checked += 1;
        }
    }
    Ok(checked)
}

/// Values produced by the discretize-decompose chain at one tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PipelineValue {
    /// `sum_c h(c / 2^n) mu(cap_e {s^e = c_e})`
    pub pipeline: Rational,
    /// `sum_i (i / 2^{n'}) mu(level set i)`
    pub quantized: Rational,
    /// Direct integral of `h` composed with the original functions.
    pub direct: Rational,
}

pub fn pipeline_value(
    h: &dyn Fn(&[Rational]) -> Rational,
    ff: &FunctionFamily,
    disc: &Discretized,
    dec: &LevelDecomposition,
    x: &[usize],
) -> Result<PipelineValue> {
    let mut by_combo: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
    for w in 0..ff.omega.len() {
        *by_combo.entry(combo_at(ff, disc, x, w)).or_insert_with(Rational::zero) += ff.omega.weight(w);
    }
    let mut pipeline = Rational::zero();
    let mut quantized = Rational::zero();
    for (c, mass) in &by_combo {
        let args: Vec<Rational> = c.iter().map(|&l| disc.level_value(l)).collect();
        pipeline += h(&args) * mass;
        let i = dec
            .level_of(c)
            .ok_or_else(|| Error::Contract(format!("combination {c:?} missing from decomposition")))?;
        quantized += int(i as i64) * inv_pow2(dec.n_out) * mass;
    }
    Ok(PipelineValue { pipeline, quantized, direct: ff.direct_integral(h, x) })
}

/// Built-in continuous combiners with their sup-norm Lipschitz constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Combiner {
    Product,
    Min,
    Projection(usize),
    Zero,
}

impl Combiner {
    pub fn eval(&self, args: &[Rational]) -> Rational {
        match self {
            Self::Product => args.iter().fold(Rational::one(), |a, b| a * b),
            Self::Min => args.iter().min().cloned().unwrap_or_else(Rational::one),
            Self::Projection(i) => args[*i].clone(),
            Self::Zero => Rational::zero(),
        }
    }

    pub fn lipschitz(&self, arity: usize) -> Rational {
        match self {
            Self::Product => int(arity as i64),
            Self::Min | Self::Projection(_) => Rational::one(),
            Self::Zero => Rational::zero(),
        }
    }
}

/// `|a - b|`.
pub fn abs_diff(a: &Rational, b: &Rational) -> Rational {
    if a > b {
        a - b
    } else {
        b - a
    }
}
