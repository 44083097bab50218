//! Monotonicity, half-simplex realizability, induced embeddings into
//! `GS_3(n)`, and sampling of common induced sub-hypergraphs.

pub mod embed;
pub mod monotone;
pub mod realize;
pub mod sample;

pub use embed::{embed_into_gs3, validate_embedding, Embedding, EMBED_CAP};
pub use monotone::{check_monotone, validate_monotone, Monotonicity, MonotonicityWitness, Obstruction};
pub use realize::{check_halfsimplex_realizable, validate_realization, Realizability, RealizabilityWitness};
pub use sample::{sample_common_sub, CommonSample};
