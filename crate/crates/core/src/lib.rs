//! Edge-colorings of complete graphs in Gallai-Ramsey theory.
//!
//! The crate builds the extremal colorings that witness the lower bound
//! `GR_k(W_4) >= f(k) + 1`, checks them for rainbow triangles and
//! monochromatic wheels, computes Gallai partitions and reduced graphs, and
//! searches for small base colorings by backtracking.

pub mod bitset;
pub mod coloring;
pub mod construct;
pub mod detect;
pub mod error;
pub mod format;
mod kernel;
mod matcher;
pub mod pattern;
pub mod search;
pub mod structure;

pub use coloring::{Color, EdgeColoring};
pub use construct::{
    base14, build_lower_bound_witness, f_value, pentagon_coloring, random_gallai, ConstructionTrace, Schedule,
};
pub use detect::{
    find_mono, find_rainbow_triangle, has_mono_p3_in_color, is_gallai, mono_complete_between, wheel_from_mono_pair,
};
pub use error::{Error, Result};
pub use pattern::{Embedding, PatternSpec};
pub use search::{
    search_witness, search_witness_parallel, verify_unavoidable, EdgeOrder, Forbidden, Scope, SearchOutcome,
    SearchStats, SearchStatus, SearchTask, Symmetry, Unavoidability,
};
pub use structure::{
    check_apex_color_distinctness, cross_color_profile, find_gallai_partition, peel_apex_sequence, reduced_graph,
    verify_gallai_partition, ApexSequence, CrossProfile, GallaiPartition, PartitionReport,
};
