//! Shared fixtures for the kernel benchmarks.

use turan_forge::generators::random_graph;
use turan_forge::Graph;

/// Dense bipartite host: the regime the builders are meant for.
pub fn dense_host(n: usize, seed: u64) -> Graph {
    random_graph(n, 0.5, seed, true)
}

/// Sparse general host for counting kernels.
pub fn sparse_host(n: usize, seed: u64) -> Graph {
    random_graph(n, 8.0 / n as f64, seed, false)
}

/// Cycle on `n` vertices, used as an oracle pattern.
pub fn cycle(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("valid cycle")
}
