use super::{seal, EmbeddingCertificate, PatternRef, Provenance};
use crate::collections::{CollectionKind, LabeledCollection};
use crate::error::{input, Error, Result};
use crate::generators::{label, PatternSpec};
use crate::graph::Graph;
use std::collections::HashMap;

pub(crate) fn smallest_fresh(cands: &[usize], used: &[bool]) -> Option<usize> {
    cands.iter().copied().find(|&b| !used[b])
}

/// Staircase shift. Starts from a member read as row 1 followed by column
/// `t`, then walks the bend of the path one cell down-left at a time, each
/// time taking the smallest unused fill.
pub fn embed_grid(coll: &LabeledCollection, host: &Graph, t: usize) -> Result<EmbeddingCertificate> {
    if t == 0 {
        return input("grid side must be positive");
    }
    if coll.is_empty() {
        return Err(Error::NotFound("empty collection".into()));
    }
    let method = Provenance::new("embed_grid").param("t", t).param("alpha", coll.alpha);
    if t == 1 {
        let v = coll.member(0)[0];
        return seal(host, PatternRef::Spec(PatternSpec::Grid { t }), |_| Some(v), method);
    }
    if coll.kind != CollectionKind::Path || coll.length != 2 * t - 1 {
        return input(format!("grid {t}x{t} needs paths on {} vertices", 2 * t - 1));
    }
    if coll.alpha < t * t {
        return input(format!("alpha={} is below t^2={}", coll.alpha, t * t));
    }
    let mut path = coll.member(0);
    let mut used = vec![false; host.n()];
    let mut at: HashMap<String, usize> = HashMap::new();
    for (i, &v) in path.iter().enumerate() {
        let (r, c) = if i < t { (1, i + 1) } else { (i - t + 2, t) };
        at.insert(label(r, c), v);
        used[v] = true;
    }
    for r in 1..t {
        for j in (2..=t).rev() {
            let idx = r + j - 2;
            let fresh = smallest_fresh(&coll.fills(&path, idx), &used)
                .ok_or_else(|| Error::Integrity(format!("no unused fill for cell ({},{})", r + 1, j - 1)))?;
            path[idx] = fresh;
            used[fresh] = true;
            at.insert(label(r + 1, j - 1), fresh);
        }
    }
    seal(host, PatternRef::Spec(PatternSpec::Grid { t }), |l| at.get(l).copied(), method)
}
