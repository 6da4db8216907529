//! Simple undirected graphs with sorted adjacency and tombstoned deletions.

mod codegree;
mod io;

pub use codegree::{fingerprint, set_spill_dir, CodegreeTable, DEFAULT_CAP as CODEGREE_CAP};
pub use io::{read_edge_list, write_edge_list};

use crate::error::{input, Result};
use serde::{Deserialize, Serialize};

/// Sorted set of distinct vertex ids.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(Vec::new())
    }

    pub fn from_sorted_unchecked(v: Vec<usize>) -> Self {
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]));
        VertexSet(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut v: Vec<usize> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }
}

/// Immutable simple graph. Vertex ids are `0..n()`; removed vertices stay
/// in the id range as isolated tombstones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    dead: Vec<bool>,
    edges: usize,
}

/// Number of common elements of two ascending slices.
pub fn intersection_size(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut c) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                c += 1;
                i += 1;
                j += 1;
            }
        }
    }
    c
}

pub fn intersection(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

impl Graph {
    pub fn empty(n: usize) -> Graph {
        Graph { adj: vec![Vec::new(); n], dead: vec![false; n], edges: 0 }
    }

    /// Builds a graph, collapsing duplicate and reversed pairs.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return input(format!("edge ({u},{v}) has an endpoint outside 0..{n}"));
            }
            if u == v {
                return input(format!("self-loop at vertex {u}"));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut total = 0;
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            total += list.len();
        }
        Ok(Graph { adj, dead: vec![false; n], edges: total / 2 })
    }

    /// Assembles a graph from adjacency lists that are already sorted,
    /// deduplicated and symmetric.
    pub(crate) fn from_sorted_adjacency(adj: Vec<Vec<usize>>, dead: Vec<bool>) -> Graph {
        let edges = adj.iter().map(Vec::len).sum::<usize>() / 2;
        Graph { adj, dead, edges }
    }

    /// Size of the vertex id range, tombstones included.
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    pub fn is_live(&self, v: usize) -> bool {
        !self.dead[v]
    }

    pub fn live_count(&self) -> usize {
        self.dead.iter().filter(|d| !**d).count()
    }

    pub fn live_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n()).filter(|&v| !self.dead[v])
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let (a, b) = if self.adj[u].len() <= self.adj[v].len() { (u, v) } else { (v, u) };
        self.adj[a].binary_search(&b).is_ok()
    }

    /// Number of common neighbours, by sorted merge.
    pub fn codegree(&self, u: usize, v: usize) -> usize {
        intersection_size(&self.adj[u], &self.adj[v])
    }

    pub fn common_neighbors(&self, u: usize, v: usize) -> Result<VertexSet> {
        if u >= self.n() || v >= self.n() {
            return input(format!("vertex out of range: ({u},{v})"));
        }
        if u == v {
            return input("common_neighbors needs two distinct vertices");
        }
        Ok(VertexSet(intersection(&self.adj[u], &self.adj[v])))
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// `G - T` minus the listed edges. Deleted vertices keep their ids.
    pub fn remove(&self, vertices: &VertexSet, edges: &[(usize, usize)]) -> Result<Graph> {
        let n = self.n();
        if let Some(v) = vertices.iter().find(|&v| v >= n) {
            return input(format!("vertex {v} out of range"));
        }
        for &(u, v) in edges {
            if u >= n || v >= n || !self.has_edge(u, v) {
                return input(format!("({u},{v}) is not an edge"));
            }
        }
        let mut dead = self.dead.clone();
        for v in vertices.iter() {
            dead[v] = true;
        }
        let mut drop: Vec<(usize, usize)> = edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        drop.sort_unstable();
        let adj = self
            .adj
            .iter()
            .enumerate()
            .map(|(u, list)| {
                if dead[u] {
                    return Vec::new();
                }
                list.iter()
                    .copied()
                    .filter(|&v| !dead[v] && drop.binary_search(&(u.min(v), u.max(v))).is_err())
                    .collect()
            })
            .collect();
        Ok(Graph::from_sorted_adjacency(adj, dead))
    }

    /// Keeps only the vertices flagged in `keep`; everything else is tombstoned.
    pub fn induced(&self, keep: &[bool]) -> Graph {
        let dead: Vec<bool> = (0..self.n()).map(|v| self.dead[v] || !keep[v]).collect();
        let adj = self
            .adj
            .iter()
            .enumerate()
            .map(|(u, list)| {
                if dead[u] {
                    Vec::new()
                } else {
                    list.iter().copied().filter(|&v| !dead[v]).collect()
                }
            })
            .collect();
        Graph::from_sorted_adjacency(adj, dead)
    }

    /// Same vertex ids, only the edges accepted by `keep`.
    pub fn filter_edges(&self, mut keep: impl FnMut(usize, usize) -> bool) -> Graph {
        let mut adj = vec![Vec::new(); self.n()];
        for (u, v) in self.edges() {
            if keep(u, v) {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph::from_sorted_adjacency(adj, self.dead.clone())
    }

    /// `2e / (number of live vertices)`, zero for a graph with no live vertex.
    pub fn average_degree(&self) -> f64 {
        let m = self.live_count();
        if m == 0 {
            0.0
        } else {
            2.0 * self.edges as f64 / m as f64
        }
    }

    pub fn min_degree(&self) -> usize {
        self.live_vertices().map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Proper 2-colouring (0/1 per vertex) if one exists. Components are
    /// coloured from their smallest vertex, which gets colour 0.
    pub fn two_coloring(&self) -> Option<Vec<u8>> {
        let n = self.n();
        let mut color = vec![u8::MAX; n];
        let mut stack = Vec::new();
        for s in 0..n {
            if color[s] != u8::MAX {
                continue;
            }
            color[s] = 0;
            stack.push(s);
            while let Some(u) = stack.pop() {
                for &v in &self.adj[u] {
                    if color[v] == u8::MAX {
                        color[v] = 1 - color[u];
                        stack.push(v);
                    } else if color[v] == color[u] {
                        return None;
                    }
                }
            }
        }
        Some(color)
    }

    pub fn is_bipartite(&self) -> bool {
        self.two_coloring().is_some()
    }

    /// Number of length-2 paths `u - w - v` counted by brute force; used by tests.
    pub fn codegree_brute(&self, u: usize, v: usize) -> usize {
        (0..self.n()).filter(|&w| w != u && w != v && self.has_edge(u, w) && self.has_edge(w, v)).count()
    }
}
