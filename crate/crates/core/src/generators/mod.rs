//! Instance families: average systems, parity encodings, GS_p(n),
//! half-simplex grids, seeded random systems and the discretization
//! pipeline for continuous combinations.

pub mod average;
pub mod corollary;
pub mod halfsimplex;
pub mod random;
pub mod ternary;

pub use average::{eval_average, gen_parity_system, AverageSystem};
pub use corollary::{discretize_function_family, level_set_decompose, Discretized, FunctionFamily, LevelDecomposition};
pub use halfsimplex::{gen_halfsimplex_grid, grid_points, halfsimplex_edge};
pub use random::{gen_random_average, gen_random_bipartite};
pub use ternary::{gen_gs_instance, gs_edge, TernaryInstance, TernaryPart};
