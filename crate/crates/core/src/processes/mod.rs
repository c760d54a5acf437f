//! Randomized and combinatorial procedures: greedy independent sets,
//! decomposition, degree split, deletion, matching, and the product
//! pipeline.

mod decompose;
mod greedy;
mod pipeline;

pub use decompose::{
    containment_holds, decompose, default_split_threshold, degree_split, deletion_lower_bound,
    greedy_matching, matching_floor, DecompositionResult, DeletionResult, Member, Split,
};
pub use greedy::{containment_probe, greedy_independent_set, greedy_with_rng, ContainmentEstimate, GreedyStep, GreedyTrace};
pub use pipeline::{product_pipeline, PipelineConfig, PipelineResult};
