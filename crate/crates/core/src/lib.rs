//! Influence analysis for cognitive maps: weighted signed digraphs whose
//! edges encode causal influence between concepts.
//!
//! The main entry point is [`influence::influence_matrix`], the accumulated
//! mutual-influence matrix over all simple paths, with
//! [`influence::general_influence`] turning it into per-vertex scores and a
//! ranking. The impulse-process method ([`impulse`]) and Kosko's min-max
//! influence ([`kosko`]) are provided as baselines.

pub mod cli;
pub mod eigen;
pub mod error;
pub mod fixtures;
pub mod impulse;
pub mod influence;
pub mod kosko;
pub mod map;
pub mod paths;

pub use error::{Error, ErrorKind, Result};
pub use impulse::{
    characteristic_constants, impulse_general_influence, simulate, stability_check, ImpulseReport,
    ImpulseTrace, SimulationOptions, StabilityVerdict,
};
pub use influence::{
    alpha, general_influence, influence_matrix, influence_matrix_with, InfluenceMatrix,
    InfluenceOptions, InfluenceReport,
};
pub use kosko::{total_influence, KoskoInfluence, WeightMode};
pub use map::{load_map, save_map, CognitiveMap, LoadOptions, MapFormat, ReachabilityMatrix};
pub use paths::{
    count_paths_complete, enumerate_simple_paths, enumerate_with_budget, PathBudget, PathSet,
    SimplePath,
};
