use crate::error::{input, Result};
use crate::graph::{intersection, Graph};
use crate::matching::{matching_pairs, max_matching};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RichTuple {
    pub rich: bool,
    pub matching_size: usize,
    /// pairwise disjoint link edges `(x, y)`, `x` in N(w) and N(w'),
    /// `y` in N(z) and N(z')
    pub witness: Vec<(usize, usize)>,
}

/// Is `(w, z, w', z')` rich: at least `4*ell` pairwise vertex-disjoint
/// edges `xy` with `wx, xw', zy, yz'` all edges.
pub fn is_rich_tuple(g: &Graph, w: usize, z: usize, w2: usize, z2: usize, ell: usize) -> Result<RichTuple> {
    let ids = [w, z, w2, z2];
    if ids.iter().any(|&v| v >= g.n()) {
        return input("tuple vertex out of range");
    }
    for i in 0..4 {
        for j in i + 1..4 {
            if ids[i] == ids[j] {
                return input("tuple vertices must be distinct");
            }
        }
    }
    if !g.has_edge(w, z) || !g.has_edge(w2, z2) {
        return input("wz and w'z' must be edges");
    }
    let xs = intersection(g.neighbors(w), g.neighbors(w2));
    let ys = intersection(g.neighbors(z), g.neighbors(z2));
    let mut links = Vec::new();
    for &x in &xs {
        for &y in &ys {
            if x != y && g.has_edge(x, y) {
                links.push((x, y));
            }
        }
    }
    // match on compacted ids; a vertex may serve as x in one link and y in another
    let mut verts: Vec<usize> = links.iter().flat_map(|&(x, y)| [x, y]).collect();
    verts.sort_unstable();
    verts.dedup();
    let id = |v: usize| verts.binary_search(&v).unwrap();
    let local: Vec<(usize, usize)> = links.iter().map(|&(x, y)| (id(x), id(y))).collect();
    let mate = max_matching(verts.len(), &local);
    let witness: Vec<(usize, usize)> = matching_pairs(&mate)
        .into_iter()
        .map(|(a, b)| {
            let (a, b) = (verts[a], verts[b]);
            // orient each pair as (x, y)
            if xs.binary_search(&a).is_ok() && ys.binary_search(&b).is_ok() && g.has_edge(a, b) {
                (a, b)
            } else {
                (b, a)
            }
        })
        .collect();
    Ok(RichTuple { rich: witness.len() >= 4 * ell, matching_size: witness.len(), witness })
}
