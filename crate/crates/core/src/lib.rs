//! Exact constructions and verifiers for stable regularity of averaged
//! hypergraphs: weighted partite grounds, average systems, ladders,
//! discrepancy oracles, strong and perfect regularity checks, the ternary
//! prefix-tree partition of monotone GS_3 instances, and embedding tests.

pub mod budget;
pub mod error;
pub mod function;
pub mod hypergraph;
pub mod interval;
pub mod io;
pub mod lp;
pub mod partition;
pub mod rational;
pub mod weighted;

pub mod embedding;
pub mod generators;
pub mod gs3;
pub mod regularity;
pub mod stability;

pub use budget::BudgetFn;
pub use error::{Error, Result};
pub use function::PartiteFunction;
pub use interval::{shortest_covering_interval, Interval};
pub use partition::{cell_measure, edge_sets, CylinderCell, GradedPartition};
pub use rational::Rational;
pub use weighted::WeightedPart;
