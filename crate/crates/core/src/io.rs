//! JSON instance and partition files.
//!
//! Instances are objects with a `kind` (`average`, `ternary` or `function`),
//! a list of `parts` (`labels` plus `[num, den]` weights) and a kind-specific
//! payload. Partitions store one row-major assignment per side.

use crate::error::{structural, Result};
use crate::function::PartiteFunction;
use crate::generators::average::AverageSystem;
use crate::generators::ternary::{parse_seq, seq_string, TernaryInstance, TernaryPart};
use crate::partition::GradedPartition;
use crate::rational::{as_pair, Rational};
use crate::weighted::WeightedPart;
use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use std::path::Path;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pair(#[serde(with = "as_pair")] pub Rational);

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartFile {
    pub labels: Vec<String>,
    pub weights: Vec<Pair>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyFile {
    pub edge: Vec<usize>,
    /// Omega labels of each subset, one entry per tuple in row-major order.
    pub sets: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum InstanceFile {
    Average {
        parts: Vec<PartFile>,
        d: usize,
        omega: PartFile,
        families: Vec<FamilyFile>,
    },
    Ternary {
        parts: Vec<PartFile>,
        p: u8,
        n: usize,
        /// Optional per-part linear orders (positions of labels, lowest first).
        #[serde(default, skip_serializing_if = "Option::is_none")]
        orders: Option<Vec<Vec<usize>>>,
    },
    Function {
        parts: Vec<PartFile>,
        values: Vec<Pair>,
    },
}

#[derive(Clone, Debug)]
pub enum Instance {
    Average(AverageSystem),
    Ternary { instance: TernaryInstance, orders: Option<[Vec<usize>; 3]> },
    Function(PartiteFunction),
}

impl Instance {
    pub fn kind(&self) -> &'static str {
        match self {
            Instance::Average(_) => "average",
            Instance::Ternary { .. } => "ternary",
            Instance::Function(_) => "function",
        }
    }

    /// The `[0,1]`-valued function the instance induces.
    pub fn to_function(&self) -> Result<PartiteFunction> {
        match self {
            Instance::Average(s) => Ok(s.to_function()),
            Instance::Function(f) => Ok(f.clone()),
            Instance::Ternary { instance, .. } => ternary_function(instance),
        }
    }
}

/// The edge indicator of a ternary instance as a function on weighted parts.
pub fn ternary_function(t: &TernaryInstance) -> Result<PartiteFunction> {
    let parts = (0..3)
        .map(|u| {
            let p = t.part(u);
            WeightedPart::new((0..p.len()).map(|i| p.label(i)).collect(), p.weights.clone())
        })
        .collect::<Result<Vec<_>>>()?;
    PartiteFunction::from_fn(parts, |x| {
        if t.is_edge(x[0], x[1], x[2]) {
            crate::rational::one()
        } else {
            crate::rational::zero()
        }
    })
}

fn part_to_file(p: &WeightedPart) -> PartFile {
    PartFile { labels: p.labels().to_vec(), weights: p.weights().iter().cloned().map(Pair).collect() }
}

fn part_from_file(p: PartFile) -> Result<WeightedPart> {
    WeightedPart::new(p.labels, p.weights.into_iter().map(|w| w.0).collect())
}

pub fn to_file(inst: &Instance) -> InstanceFile {
    match inst {
        Instance::Average(s) => {
            let families = s
                .edges()
                .iter()
                .enumerate()
                .map(|(ei, e)| FamilyFile {
                    edge: e.clone(),
                    sets: s
                        .family(ei)
                        .iter()
                        .map(|set| set.ones().map(|w| s.omega().label(w).to_string()).collect())
                        .collect(),
                })
                .collect();
            InstanceFile::Average {
                parts: s.parts().iter().map(part_to_file).collect(),
                d: s.d(),
                omega: part_to_file(s.omega()),
                families,
            }
        }
        Instance::Ternary { instance, orders } => InstanceFile::Ternary {
            parts: instance
                .parts()
                .iter()
                .map(|p| PartFile {
                    labels: p.seqs.iter().map(|s| seq_string(s)).collect(),
                    weights: p.weights.iter().cloned().map(Pair).collect(),
                })
                .collect(),
            p: instance.p(),
            n: instance.depth(),
            orders: orders.as_ref().map(|o| o.to_vec()),
        },
        Instance::Function(f) => InstanceFile::Function {
            parts: f.parts().iter().map(part_to_file).collect(),
            values: f.values().iter().cloned().map(Pair).collect(),
        },
    }
}

fn check_order(o: &[usize], n: usize, u: usize) -> Result<()> {
    let mut seen = vec![false; n];
    if o.len() != n {
        return Err(structural(format!("order for part {u} has {} entries, part has {n}", o.len())));
    }
    for &i in o {
        if i >= n || std::mem::replace(&mut seen[i], true) {
            return Err(structural(format!("order for part {u} is not a permutation")));
        }
    }
    Ok(())
}

pub fn from_file(file: InstanceFile) -> Result<Instance> {
    match file {
        InstanceFile::Average { parts, d, omega, families } => {
            let parts = parts.into_iter().map(part_from_file).collect::<Result<Vec<_>>>()?;
            let omega = part_from_file(omega)?;
            if d == 0 || d >= parts.len() {
                return Err(crate::Error::Parameter(format!("need 1 <= d < k, got d={d}, k={}", parts.len())));
            }
            let edges = crate::partition::edge_sets(parts.len(), d);
            if families.len() != edges.len() {
                return Err(structural(format!("{} families for {} index sets", families.len(), edges.len())));
            }
            let mut fams = Vec::with_capacity(families.len());
            for (f, e) in families.into_iter().zip(&edges) {
                if &f.edge != e {
                    return Err(structural(format!("family edge {:?}, expected {:?}", f.edge, e)));
                }
                let mut sets = Vec::with_capacity(f.sets.len());
                for s in f.sets {
                    let mut b = FixedBitSet::with_capacity(omega.len());
                    for l in s {
                        let i = omega
                            .index_of(&l)
                            .ok_or_else(|| structural(format!("unknown omega label {l:?}")))?;
                        b.insert(i);
                    }
                    sets.push(b);
                }
                fams.push(sets);
            }
            Ok(Instance::Average(AverageSystem::new(d, parts, omega, fams)?))
        }
        InstanceFile::Ternary { parts, p, n, orders } => {
            if parts.len() != 3 {
                return Err(structural(format!("ternary instance needs 3 parts, got {}", parts.len())));
            }
            let mut tp = Vec::with_capacity(3);
            for pf in parts {
                if pf.labels.len() != pf.weights.len() {
                    return Err(structural("labels and weights differ in length"));
                }
                let seqs = pf.labels.iter().map(|l| parse_seq(l)).collect::<Result<Vec<_>>>()?;
                tp.push(TernaryPart { seqs, weights: pf.weights.into_iter().map(|w| w.0).collect() });
            }
            let tp: [TernaryPart; 3] = tp.try_into().expect("three parts");
            let instance = TernaryInstance::new(p, n, tp)?;
            let orders = match orders {
                None => None,
                Some(o) => {
                    if o.len() != 3 {
                        return Err(structural("orders must list three permutations"));
                    }
                    for (u, ou) in o.iter().enumerate() {
                        check_order(ou, instance.part(u).len(), u)?;
                    }
                    Some(o.try_into().expect("three orders"))
                }
            };
            Ok(Instance::Ternary { instance, orders })
        }
        InstanceFile::Function { parts, values } => {
            let parts = parts.into_iter().map(part_from_file).collect::<Result<Vec<_>>>()?;
            Ok(Instance::Function(PartiteFunction::new(parts, values.into_iter().map(|v| v.0).collect())?))
        }
    }
}

pub fn instance_from_str(s: &str) -> Result<Instance> {
    let file: InstanceFile = serde_json::from_str(s)?;
    from_file(file)
}

pub fn instance_to_string(inst: &Instance) -> Result<String> {
    Ok(serde_json::to_string_pretty(&to_file(inst))?)
}

pub fn read_instance(path: &Path) -> Result<Instance> {
    instance_from_str(&std::fs::read_to_string(path)?)
}

pub fn write_instance(path: &Path, inst: &Instance) -> Result<()> {
    std::fs::write(path, instance_to_string(inst)? + "\n")?;
    Ok(())
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SideFile {
    pub edge: Vec<usize>,
    pub assignment: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartitionFile {
    pub d: usize,
    pub dims: Vec<usize>,
    pub sides: Vec<SideFile>,
}

pub fn partition_to_file(p: &GradedPartition) -> PartitionFile {
    PartitionFile {
        d: p.d(),
        dims: p.dims().to_vec(),
        sides: p
            .sides()
            .iter()
            .map(|s| SideFile { edge: s.edge.clone(), assignment: s.assignment.clone() })
            .collect(),
    }
}

pub fn partition_from_file(f: PartitionFile) -> Result<GradedPartition> {
    let edges = crate::partition::edge_sets(f.dims.len(), f.d);
    if f.sides.len() != edges.len() {
        return Err(structural(format!("{} sides for {} index sets", f.sides.len(), edges.len())));
    }
    for (s, e) in f.sides.iter().zip(&edges) {
        if &s.edge != e {
            return Err(structural(format!("side edge {:?}, expected {:?}", s.edge, e)));
        }
    }
    let p = GradedPartition::from_assignments(f.dims, f.d, f.sides.into_iter().map(|s| s.assignment).collect())?;
    p.validate()?;
    Ok(p)
}

pub fn read_partition(path: &Path) -> Result<GradedPartition> {
    let f: PartitionFile = serde_json::from_str(&std::fs::read_to_string(path)?)?;
    partition_from_file(f)
}

pub fn write_partition(path: &Path, p: &GradedPartition) -> Result<()> {
    std::fs::write(path, serde_json::to_string_pretty(&partition_to_file(p))? + "\n")?;
    Ok(())
}
