//! Shared fixtures for the benchmarks.

use gallai::{base14, build_lower_bound_witness, random_gallai, EdgeColoring};

/// The `k`-colored lower-bound witness built from the pinned base.
pub fn witness(k: usize) -> EdgeColoring {
    build_lower_bound_witness(k, &base14(), 4).expect("pinned base is valid").0
}

/// Seeded random Gallai colorings of order `n`.
pub fn gallai_instances(n: usize, k: usize, count: u64) -> Vec<EdgeColoring> {
    (0..count).map(|seed| random_gallai(n, k, seed).expect("valid parameters")).collect()
}
