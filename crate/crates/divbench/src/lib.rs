//! Diversity-preserving evolutionary algorithms on dynamic bitstring
//! benchmarks.
//!
//! The crate provides a (μ+λ) evolutionary algorithm with eight variants
//! (plain, fitness sharing, clearing, deterministic crowding, incest
//! prevention, duplicate-genotype removal, an island model, and a
//! clearing + unique-survivor hybrid), a family of static and moving-peak
//! bitstring landscapes, diversity and tracking metrics, and a fully
//! deterministic experiment harness that replays byte-identically from a
//! seed.

pub mod error;
pub mod genome;
pub mod landscape;
pub mod mechanism;
pub mod metrics;
pub mod variation;

pub use error::{Error, Result};
pub use genome::{hamming_distance, random_genome, Genome, Individual, Population, RandomSource};
pub use landscape::{make_preset, ChangeEvent, Landscape, LandscapeKind, Peak, ProblemPreset};
pub use mechanism::{AlgorithmState, Mechanism, MechanismConfig, MechanismKind};
pub use metrics::{GenerationRecord, RunSummary};
pub use variation::{
    bit_flip_mutation, generate_offspring, tournament_select, two_point_crossover, VariationConfig,
};
