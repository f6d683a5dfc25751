//! Shared inputs for the benchmarks.

use barbed_core::graph::{random_connected_graph, RandomGraphParams};
use barbed_core::WeightedGraph;

/// Seeded integer-weighted graph of the given size and density.
pub fn workload(n: usize, p: f64, seed: u64) -> WeightedGraph {
    random_connected_graph(&RandomGraphParams::integer(n, p, 1, 10), seed).expect("valid benchmark parameters")
}
