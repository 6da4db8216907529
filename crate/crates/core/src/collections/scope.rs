use crate::error::{input, Error, Result};
use crate::graph::{Graph, VertexSet};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::sync::atomic::{AtomicU64, Ordering};

/// Restricts the seed enumeration of a builder. Any subcollection of paths
/// or cycles of the host is a legal seed; the process is unchanged.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "scope", rename_all = "snake_case")]
pub enum SeedScope {
    #[default]
    Full,
    /// all vertices inside one set
    Within { vertices: VertexSet },
    /// position `i` drawn from `layers[i]`
    Layered { layers: Vec<VertexSet> },
}

impl SeedScope {
    pub(crate) fn check(&self, g: &Graph, len: usize) -> Result<()> {
        let sets: Vec<&VertexSet> = match self {
            SeedScope::Full => return Ok(()),
            SeedScope::Within { vertices } => vec![vertices],
            SeedScope::Layered { layers } => {
                if layers.len() != len {
                    return input(format!("{} layers for tuples of length {len}", layers.len()));
                }
                layers.iter().collect()
            }
        };
        if sets.iter().any(|s| s.iter().any(|v| v >= g.n())) {
            return input("scope vertex out of range");
        }
        Ok(())
    }

    fn allows(&self, pos: usize, v: usize) -> bool {
        match self {
            SeedScope::Full => true,
            SeedScope::Within { vertices } => vertices.contains(v),
            SeedScope::Layered { layers } => layers[pos].contains(v),
        }
    }

    fn first_candidates(&self, g: &Graph) -> Vec<usize> {
        match self {
            SeedScope::Full => g.live_vertices().collect(),
            SeedScope::Within { vertices } => vertices.iter().collect(),
            SeedScope::Layered { layers } => layers[0].iter().collect(),
        }
    }
}

/// Labelled paths on `len` distinct vertices inside `scope`, flat and in
/// lexicographic order. `extend(prefix, v)` may veto appending `v`.
pub(crate) fn seed_paths<F>(g: &Graph, len: usize, scope: &SeedScope, cap: u64, extend: F) -> Result<Vec<u32>>
where
    F: Fn(&[usize], usize) -> bool + Sync,
{
    scope.check(g, len)?;
    let total = AtomicU64::new(0);
    let per_root: Vec<Option<Vec<u32>>> = scope
        .first_candidates(g)
        .into_par_iter()
        .map(|r| {
            if !g.is_live(r) || !extend(&[], r) {
                return Some(Vec::new());
            }
            let mut out = Vec::new();
            let mut path = vec![r];
            let mut on = vec![false; g.n()];
            on[r] = true;
            walk(g, len, scope, &extend, &mut path, &mut on, &mut out, &total, cap).then_some(out)
        })
        .collect();
    let mut flat = Vec::new();
    for part in per_root {
        match part {
            Some(p) => flat.extend(p),
            None => return Err(Error::Resource(format!("more than {cap} seed paths"))),
        }
    }
    if total.load(Ordering::Relaxed) > cap {
        return Err(Error::Resource(format!("more than {cap} seed paths")));
    }
    Ok(flat)
}

#[allow(clippy::too_many_arguments)]
fn walk<F>(
    g: &Graph,
    len: usize,
    scope: &SeedScope,
    extend: &F,
    path: &mut Vec<usize>,
    on: &mut [bool],
    out: &mut Vec<u32>,
    total: &AtomicU64,
    cap: u64,
) -> bool
where
    F: Fn(&[usize], usize) -> bool,
{
    if path.len() == len {
        out.extend(path.iter().map(|&x| x as u32));
        return total.fetch_add(1, Ordering::Relaxed) < cap;
    }
    let pos = path.len();
    let tail = path[pos - 1];
    // both lists are sorted, so either keeps the output order
    let narrow = match scope {
        SeedScope::Within { vertices } if vertices.len() < g.degree(tail) => Some(vertices.as_slice()),
        SeedScope::Layered { layers } if layers[pos].len() < g.degree(tail) => Some(layers[pos].as_slice()),
        _ => None,
    };
    let cands = narrow.unwrap_or(g.neighbors(tail));
    for &x in cands {
        let linked = narrow.is_none() || g.has_edge(tail, x);
        if !linked || on[x] || !scope.allows(pos, x) || !extend(path, x) {
            continue;
        }
        on[x] = true;
        path.push(x);
        let ok = walk(g, len, scope, extend, path, on, out, total, cap);
        path.pop();
        on[x] = false;
        if !ok || total.load(Ordering::Relaxed) > cap {
            return false;
        }
    }
    true
}

/// Canonical `2*ell`-cycles inside `scope`, flat and sorted.
pub(crate) fn seed_cycles(g: &Graph, ell: usize, scope: &SeedScope, cap: u64) -> Result<Vec<u32>> {
    scope.check(g, 2 * ell)?;
    let host;
    let h = match scope {
        SeedScope::Full => g,
        SeedScope::Within { vertices } => {
            let mut keep = vec![false; g.n()];
            for v in vertices.iter() {
                keep[v] = true;
            }
            host = g.induced(&keep);
            &host
        }
        SeedScope::Layered { .. } => return input("cycle seeds take a full or within scope"),
    };
    let e = crate::counting::enumerate_even_cycles(h, ell, Some(cap));
    if e.truncated {
        return Err(Error::Resource(format!("more than {cap} seed cycles")));
    }
    Ok(e.cycles.into_iter().flatten().map(|x| x as u32).collect())
}
