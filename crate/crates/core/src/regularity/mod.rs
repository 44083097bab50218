//! Quasi-randomness oracles, energy refinement, and verifiers and
//! constructors for strong and perfect regularity.

pub mod bounds;
pub mod construct;
pub mod disc;
pub mod energy;
pub mod redistribute;
pub mod triad;
pub mod verify;

pub use bounds::{verify_cell_lower_bounds, LowerBoundReport};
pub use construct::{build_regular_partition_avg, CellStats, ConstructOptions, Construction, FaceStats, Strategy};
pub use disc::{disc2_exact, disc2_proxy, Disc2, Disc2Proxy};
pub use energy::{energy, energy_refine, EnergyRun, EnergyStep};
pub use redistribute::{redistribute_exceptional, Redistribution};
pub use triad::{verify_disc23_triad, TriadMode, TriadStats};
pub use verify::{verify_perfect_regularity, verify_strong_regularity, HomogeneityReport, PerfectReport};
