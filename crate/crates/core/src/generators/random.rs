use crate::graph::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// G(n,p) from a ChaCha8 stream, visiting candidate pairs in lexicographic
/// order. With `bipartite`, candidates are the pairs across the split
/// `0..n/2` | `n/2..n`.
pub fn random_graph(n: usize, p: f64, seed: u64, bipartite: bool) -> Graph {
    let p = p.clamp(0.0, 1.0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let half = n / 2;
    let mut adj = vec![Vec::new(); n];
    for u in 0..n {
        let start = if bipartite { half.max(u + 1) } else { u + 1 };
        if bipartite && u >= half {
            break;
        }
        for v in start..n {
            if rng.random::<f64>() < p {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
    }
    // lists are built in ascending order already
    Graph::from_sorted_adjacency(adj, vec![false; n])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extremes() {
        let g = random_graph(9, 1.0, 3, false);
        assert_eq!(g.edge_count(), 36);
        assert_eq!(random_graph(9, 0.0, 3, true).edge_count(), 0);
        assert_eq!(random_graph(9, 1.0, 3, true).edge_count(), 4 * 5);
    }

    #[test]
    fn deterministic_and_bipartite() {
        let a = random_graph(60, 0.3, 11, true);
        assert_eq!(a, random_graph(60, 0.3, 11, true));
        assert_ne!(a, random_graph(60, 0.3, 12, true));
        assert!(a.edges().all(|(u, v)| u < 30 && v >= 30));
    }

    #[test]
    fn adjacency_is_sorted() {
        let g = random_graph(40, 0.5, 1, false);
        for v in 0..40 {
            assert!(g.neighbors(v).windows(2).all(|w| w[0] < w[1]));
        }
    }
}
