use super::grid::smallest_fresh;
use super::{seal, EmbeddingCertificate, PatternRef, Provenance};
use crate::collections::{CollectionKind, LabeledCollection};
use crate::error::{input, Error, Result};
use crate::generators::{label, PatternSpec};
use crate::graph::Graph;
use std::collections::HashMap;

/// Row `r` sits at even slots when `r` is odd and odd slots otherwise:
/// `x_{r,j}` at `2(j-1)` or `2j-1`.
fn slot(r: usize, j: usize) -> usize {
    if r % 2 == 1 {
        2 * (j - 1)
    } else {
        2 * j - 1
    }
}

/// Reads a member as rows 1 and 2 interleaved, then builds each new row in
/// the slots of the row two above it, one column at a time.
pub fn embed_cylinder(coll: &LabeledCollection, host: &Graph, k: usize, ell: usize) -> Result<EmbeddingCertificate> {
    let spec = PatternSpec::Cylinder { k, ell };
    spec.validate()?;
    if coll.is_empty() {
        return Err(Error::NotFound("empty collection".into()));
    }
    if coll.kind != CollectionKind::Cycle || coll.length != 2 * ell {
        return input(format!("cylinder needs cycles of length {}", 2 * ell));
    }
    if coll.alpha < k * ell {
        return input(format!("alpha={} is below k*ell={}", coll.alpha, k * ell));
    }
    let mut cycle = coll.member(0);
    let mut used = vec![false; host.n()];
    let mut at: HashMap<String, usize> = HashMap::new();
    for r in 1..=2 {
        for j in 1..=ell {
            let v = cycle[slot(r, j)];
            at.insert(label(r, j), v);
            used[v] = true;
        }
    }
    for r in 3..=k {
        for j in 1..=ell {
            let s = slot(r, j);
            let fresh = smallest_fresh(&coll.fills(&cycle, s), &used)
                .ok_or_else(|| Error::Integrity(format!("no unused fill for ({r},{j})")))?;
            cycle[s] = fresh;
            used[fresh] = true;
            at.insert(label(r, j), fresh);
        }
    }
    let method = Provenance::new("embed_cylinder").param("k", k).param("ell", ell).param("alpha", coll.alpha);
    seal(host, PatternRef::Spec(spec), |l| at.get(l).copied(), method)
}
