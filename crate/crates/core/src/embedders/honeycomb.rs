use super::{seal, EmbeddingCertificate, PatternRef, Provenance};
use crate::collections::{CollectionKind, LabeledCollection};
use crate::error::{input, Error, Result};
use crate::generators::{label, PatternSpec};
use crate::graph::Graph;
use std::collections::HashMap;

/// Column of each vertical rung of the spine, `c_1..c_{k-1}` with
/// `c_r = r (mod 2)`, starting at `1,2,1,2,..`.
fn start_columns(k: usize) -> Vec<usize> {
    (1..k).map(|r| if r % 2 == 1 { 1 } else { 2 }).collect()
}

/// Which rung moves right by two at each step: always the lowest rung that
/// is a local minimum (the ends count as free) and still has room.
pub fn honeycomb_schedule(k: usize, ell: usize) -> Vec<usize> {
    let mut c = start_columns(k);
    let mut steps = Vec::new();
    loop {
        let m = c.len();
        let pick = (0..m).find(|&i| {
            let r = i + 1;
            let cap = if r % 2 == 1 { ell - 1 } else { ell };
            c[i] + 2 <= cap && (i == 0 || c[i - 1] == c[i] + 1) && (i + 1 == m || c[i + 1] == c[i] + 1)
        });
        match pick {
            Some(i) => {
                c[i] += 2;
                steps.push(i + 1);
            }
            None => return steps,
        }
    }
}

/// Pattern labels of the spine for the given columns: `p_1 = v`,
/// `p_{2r} = x_{r,c_r}`, `p_{2r+1} = x_{r+1,c_r}`, `p_{2k} = u`.
fn spine_labels(k: usize, c: &[usize]) -> Vec<String> {
    let mut out = vec!["v".to_string()];
    for (i, &col) in c.iter().enumerate() {
        out.push(label(i + 1, col));
        out.push(label(i + 2, col));
    }
    out.push("u".into());
    debug_assert_eq!(out.len(), 2 * k);
    out
}

/// Folds a spine path into the honeycomb: each step swaps the vertex pair of
/// one rung for a fresh disjoint fill edge, moving that rung two columns to
/// the right.
pub fn embed_honeycomb(coll: &LabeledCollection, host: &Graph, k: usize, ell: usize) -> Result<EmbeddingCertificate> {
    let spec = PatternSpec::Honeycomb { k, ell };
    spec.validate()?;
    if coll.is_empty() {
        return Err(Error::NotFound("empty collection".into()));
    }
    if coll.kind == CollectionKind::Cycle || coll.length != 2 * k {
        return input(format!("honeycomb needs good paths on {} vertices", 2 * k));
    }
    if coll.alpha < k * ell {
        return input(format!("alpha={} is below k*ell={}", coll.alpha, k * ell));
    }
    let mut path = coll.member(0);
    let mut c = start_columns(k);
    let mut used = vec![false; host.n()];
    let mut at: HashMap<String, usize> = HashMap::new();
    for (l, &v) in spine_labels(k, &c).into_iter().zip(&path) {
        at.insert(l, v);
        used[v] = true;
    }
    for r in honeycomb_schedule(k, ell) {
        c[r - 1] += 2;
        let (p, q) = (2 * r - 1, 2 * r);
        let mut edges = coll.fill_edges(&path, p);
        edges.sort_unstable();
        let (a, b) = edges
            .into_iter()
            .find(|&(a, b)| !used[a] && !used[b])
            .ok_or_else(|| Error::Integrity(format!("no disjoint fill edge for rung {r}")))?;
        path[p] = a;
        path[q] = b;
        used[a] = true;
        used[b] = true;
        at.insert(label(r, c[r - 1]), a);
        at.insert(label(r + 1, c[r - 1]), b);
    }
    let method = Provenance::new("embed_honeycomb").param("k", k).param("ell", ell).param("alpha", coll.alpha);
    seal(host, PatternRef::Spec(spec), |l| at.get(l).copied(), method)
}
