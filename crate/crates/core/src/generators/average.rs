use crate::error::{structural, Result};
use crate::function::{Grid, PartiteFunction};
use crate::hypergraph::BipartiteGraph;
use crate::partition::{edge_sets, project};
use crate::rational::Rational;
use crate::weighted::WeightedPart;
use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Families `P^e_{x_e}` of subsets of a finite weighted `Omega`, one per
/// `e`-tuple for every `d`-subset `e` of the coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct AverageSystem {
    k: usize,
    d: usize,
    parts: Vec<WeightedPart>,
    omega: WeightedPart,
    edges: Vec<Vec<usize>>,
    grids: Vec<Grid>,
    families: Vec<Vec<FixedBitSet>>,
    omega_num: Vec<BigInt>,
    omega_den: BigInt,
}

impl AverageSystem {
    /// `families[e][i]` is the subset for the `i`-th `e`-tuple in row-major
    /// order, with `e` ranging over [`edge_sets`]`(k, d)`.
    pub fn new(
        d: usize,
        parts: Vec<WeightedPart>,
        omega: WeightedPart,
        families: Vec<Vec<FixedBitSet>>,
    ) -> Result<Self> {
        let k = parts.len();
        if d == 0 || d >= k {
            return Err(crate::Error::Parameter(format!("need 1 <= d < k, got d={d}, k={k}")));
        }
        let edges = edge_sets(k, d);
        if families.len() != edges.len() {
            return Err(structural(format!("{} families for {} index sets", families.len(), edges.len())));
        }
        let mut grids = Vec::with_capacity(edges.len());
        for (e, fam) in edges.iter().zip(&families) {
            let grid = Grid::new(e.iter().map(|&i| parts[i].len()).collect());
            if fam.len() != grid.size() {
                return Err(structural(format!(
                    "family for {e:?} has {} entries, expected {}",
                    fam.len(),
                    grid.size()
                )));
            }
            if let Some(s) = fam.iter().find(|s| s.len() != omega.len()) {
                return Err(structural(format!("subset over {} points, omega has {}", s.len(), omega.len())));
            }
            grids.push(grid);
        }
        let omega_den = omega.weights().iter().fold(BigInt::one(), |acc, w| acc.lcm(w.denom()));
        let omega_num = omega
            .weights()
            .iter()
            .map(|w| w.numer() * (&omega_den / w.denom()))
            .collect();
        Ok(Self { k, d, parts, omega, edges, grids, families, omega_num, omega_den })
    }

    pub fn k(&self) -> usize {
        self.k
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

    pub fn grid(&self, e: usize) -> &Grid {
        &self.grids[e]
    }

    pub fn family(&self, e: usize) -> &[FixedBitSet] {
        &self.families[e]
    }

    pub fn subset(&self, e: usize, sub: &[usize]) -> &FixedBitSet {
        &self.families[e][self.grids[e].index(sub)]
    }

    /// `mu(S)` for a subset of `Omega`.
    pub fn measure(&self, s: &FixedBitSet) -> Rational {
        let n: BigInt = s.ones().map(|i| &self.omega_num[i]).sum();
        Rational::new(n, self.omega_den.clone())
    }

    /// Intersection `cap_e P^e_{x_e}` for an in-range tuple.
    pub fn intersection(&self, x: &[usize]) -> FixedBitSet {
        let mut acc = FixedBitSet::with_capacity(self.omega.len());
        acc.insert_range(..);
        for (e, edge) in self.edges.iter().enumerate() {
            acc.intersect_with(self.subset(e, &project(x, edge)));
        }
        acc
    }

    pub fn to_function(&self) -> PartiteFunction {
        PartiteFunction::from_fn(self.parts.clone(), |t| self.measure(&self.intersection(t)))
            .expect("average values lie in [0,1]")
    }
}

/// `mu(cap_e P^e_{x_e})`.
pub fn eval_average(system: &AverageSystem, x: &[usize]) -> Result<Rational> {
    if x.len() != system.k {
        return Err(structural(format!("tuple of length {} for k = {}", x.len(), system.k)));
    }
    for (i, &xi) in x.iter().enumerate() {
        if xi >= system.parts[i].len() {
            return Err(structural(format!("coordinate {i}: index {xi} has no family entry")));
        }
    }
    Ok(system.measure(&system.intersection(x)))
}

fn set_of(n: usize, members: &[usize]) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(n);
    for &m in members {
        s.insert(m);
    }
    s
}

/// Four-point parity encoding: the average is `1/4` exactly on triples
/// spanning an odd number of edges of the three graphs, and 0 otherwise.
pub fn gen_parity_system(
    parts: [WeightedPart; 3],
    graphs: [&BipartiteGraph; 3],
) -> Result<AverageSystem> {
    let sizes = [parts[0].len(), parts[1].len(), parts[2].len()];
    let pairs = [(0, 1), (0, 2), (1, 2)];
    for (g, &(a, b)) in graphs.iter().zip(&pairs) {
        if g.rows() != sizes[a] || g.cols() != sizes[b] {
            return Err(structural(format!(
                "graph on parts {a},{b} is {}x{}, expected {}x{}",
                g.rows(),
                g.cols(),
                sizes[a],
                sizes[b]
            )));
        }
    }
    // a=0, b=1, c=2, d=3
    let on_edge = [[0, 1], [0, 2], [0, 3]];
    let off_edge = [[2, 3], [1, 3], [1, 2]];
    let omega = WeightedPart::uniform_labeled(["a", "b", "c", "d"].map(String::from).to_vec())?;
    let families = (0..3)
        .map(|e| {
            let (a, b) = pairs[e];
            let mut fam = Vec::with_capacity(sizes[a] * sizes[b]);
            for x in 0..sizes[a] {
                for y in 0..sizes[b] {
                    let m = if graphs[e].has(x, y) { &on_edge[e] } else { &off_edge[e] };
                    fam.push(set_of(4, m));
                }
            }
            fam
        })
        .collect();
    AverageSystem::new(2, parts.to_vec(), omega, families)
}

/// Ground-truth helper: the number of graph edges spanned by a triple.
pub fn parity_edge_count(graphs: [&BipartiteGraph; 3], x: usize, y: usize, z: usize) -> usize {
    graphs[0].has(x, y) as usize + graphs[1].has(x, z) as usize + graphs[2].has(y, z) as usize
}

impl AverageSystem {
    /// Constant family: every subset equal to `s`.
    pub fn constant(d: usize, parts: Vec<WeightedPart>, omega: WeightedPart, s: &FixedBitSet) -> Result<Self> {
        let k = parts.len();
        let fams = edge_sets(k, d)
            .iter()
            .map(|e| vec![s.clone(); e.iter().map(|&i| parts[i].len()).product()])
            .collect();
        Self::new(d, parts, omega, fams)
    }

    pub fn is_density_zero(&self) -> bool {
        self.families.iter().all(|f| f.iter().all(|s| s.is_clear()))
            || self.to_function().values().iter().all(|v| v.is_zero())
    }
}
