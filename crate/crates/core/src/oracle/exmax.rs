use super::canon::{canonical, Rows};
use super::contains;
use crate::error::{input, Result};
use crate::graph::Graph;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Clone, Debug, Serialize)]
pub struct Extremal {
    pub n: usize,
    pub max_edges: usize,
    /// the extremal graph with the smallest canonical code
    #[serde(skip)]
    pub witness: Graph,
    pub witness_edges: Vec<(usize, usize)>,
    /// number of pattern-free graphs up to isomorphism on `1..=n` vertices
    pub classes: Vec<usize>,
}

fn to_graph(rows: &Rows) -> Graph {
    let n = rows.len();
    Graph::from_edges(n, (0..n).flat_map(|v| (v + 1..n).filter(move |&w| rows[v] >> w & 1 == 1).map(move |w| (v, w))))
        .expect("rows are symmetric")
}

/// Largest edge count of a graph on `n <= 9` vertices without `pattern`.
/// Pattern-free graphs are closed under deleting a vertex, so every class
/// on `m + 1` vertices extends a class on `m` vertices by one vertex and a
/// neighbourhood; classes are kept once per canonical code.
pub fn max_edges_exhaustive(n: usize, pattern: &Graph) -> Result<Extremal> {
    if n == 0 || n > 9 {
        return input("exhaustive extremal search supports 1 <= n <= 9");
    }
    if pattern.edge_count() == 0 {
        return input("pattern must have an edge");
    }
    let free = |rows: &Rows| rows.len() < pattern.n() || !contains(&to_graph(rows), pattern);
    let mut level: BTreeMap<u64, Rows> = BTreeMap::new();
    level.insert(0, vec![0]);
    let mut classes = vec![1];
    for m in 1..n {
        let parents: Vec<&Rows> = level.values().collect();
        let children: Vec<(u64, Rows)> = parents
            .par_iter()
            .flat_map_iter(|&rows| {
                (0u16..1 << m).filter_map(move |s| {
                    let mut r = rows.clone();
                    for (v, row) in r.iter_mut().enumerate() {
                        *row |= (s >> v & 1) << m;
                    }
                    r.push(s);
                    free(&r).then(|| canonical(&r))
                })
            })
            .collect();
        level = children.into_iter().collect();
        classes.push(level.len());
    }
    let edges = |r: &Rows| r.iter().map(|x| x.count_ones() as usize).sum::<usize>() / 2;
    let max_edges = level.values().map(edges).max().unwrap_or(0);
    let witness = level.values().find(|r| edges(r) == max_edges).map(to_graph).expect("level is non-empty");
    let witness_edges = witness.edges().collect();
    Ok(Extremal { n, max_edges, witness, witness_edges, classes })
}
