//! Sensitivity and block sensitivity of Boolean functions and hypergraph
//! properties.
//!
//! The crate provides finite-field arithmetic and the low-intersection set
//! families built from it, k-uniform hypergraphs over colex-ranked edge
//! slots, the isolated-clique family of properties with Rubinstein-style
//! reference functions, exact sensitivity engines, explicit lower-bound
//! witnesses and a small experiment harness.
//!
//! Random inputs throughout use `ChaCha8Rng::seed_from_u64(seed)` from
//! `rand_chacha`, so streams are portable.

pub mod bits;
pub mod boolfn;
pub mod error;
pub mod experiments;
pub mod family;
pub mod field;
pub mod fit;
pub mod hypergraph;
pub mod packing;
pub mod property;
pub mod sensitivity;
pub mod witness;

pub use bits::BitString;
pub use boolfn::{BooleanFunction, TruthTable};
pub use error::{Error, Result};
pub use family::{generate_family, trim_sets, verify_family, SetFamily};
pub use field::{make_field, FieldSpec};
pub use fit::{fit_exponent, FitResult};
pub use hypergraph::{binomial, rank_subset, unrank_subset, EdgeId, Hypergraph, VertexSet};
pub use property::{CliqueSpec, PropertySpec};
pub use sensitivity::{
    block_sensitivity_exact, block_sensitivity_global, certify_blocks, enumerate_sensitive_tuples,
    minimal_sensitive_blocks, sensitivity_at, sensitivity_global,
};
pub use witness::{build_s0_witness, build_s1_witness, clique_packing, triangle_packing, Packing};

/// Exponent fit in double precision.
pub type Fit = FitResult<f64>;

/// Deterministic RNG used for every seeded run.
pub type Rng = rand_chacha::ChaCha8Rng;

/// `Rng` seeded from a 64-bit seed.
pub fn seeded_rng(seed: u64) -> Rng {
    use rand::SeedableRng;
    Rng::seed_from_u64(seed)
}
