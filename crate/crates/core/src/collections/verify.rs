use super::engine::{group, KeyRule, Slot, Threshold};
use super::{CollectionKind, LabeledCollection};
use crate::graph::Graph;
use crate::matching::max_matching;
use rayon::prelude::*;
use serde::Serialize;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub member: Vec<usize>,
    /// blanked positions, 0-based
    pub positions: Vec<usize>,
    pub observed: usize,
    pub reason: String,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (member {:?}, positions {:?}, observed {})", self.reason, self.member, self.positions, self.observed)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verification {
    pub ok: bool,
    pub alpha: usize,
    pub members: usize,
    pub counterexample: Option<Counterexample>,
}

fn structural(coll: &LabeledCollection, g: &Graph) -> Option<Counterexample> {
    let cyclic = coll.kind == CollectionKind::Cycle;
    for i in 0..coll.len() {
        let m = coll.member(i);
        let fail = |reason: &str| {
            Some(Counterexample { member: m.clone(), positions: Vec::new(), observed: 0, reason: reason.into() })
        };
        if m.iter().any(|&v| v >= g.n() || !g.is_live(v)) {
            return fail("vertex outside the live host");
        }
        let mut s = m.clone();
        s.sort_unstable();
        if s.windows(2).any(|w| w[0] == w[1]) {
            return fail("repeated vertex");
        }
        let closing = if cyclic { Some((m[m.len() - 1], m[0])) } else { None };
        if m.windows(2).map(|w| (w[0], w[1])).chain(closing).any(|(a, b)| !g.has_edge(a, b)) {
            return fail("consecutive vertices are not adjacent");
        }
    }
    None
}

fn matching_size(edges: &[(usize, usize)]) -> usize {
    let mut verts: Vec<usize> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
    verts.sort_unstable();
    verts.dedup();
    let id = |v: usize| verts.binary_search(&v).unwrap();
    let local: Vec<(usize, usize)> = edges.iter().map(|&(a, b)| (id(a), id(b))).collect();
    max_matching(verts.len(), &local).iter().filter(|&&m| m != usize::MAX).count() / 2
}

/// Checks that every member is a path or cycle of `g` and that the
/// collection is `alpha`-rich (paths, cycles) or `alpha`-good (good paths).
/// Fill counts include the member's own vertex or edge.
pub fn verify_collection(coll: &LabeledCollection, g: &Graph, alpha: usize) -> Verification {
    let mut out = Verification { ok: true, alpha, members: coll.len(), counterexample: structural(coll, g) };
    if out.counterexample.is_none() {
        out.counterexample = property(coll, alpha);
    }
    out.ok = out.counterexample.is_none();
    out
}

fn property(coll: &LabeledCollection, alpha: usize) -> Option<Counterexample> {
    let len = coll.length;
    let placeholder = Threshold::Below(0);
    let (slots, rule): (Vec<Slot>, KeyRule) = match coll.kind {
        CollectionKind::Path => ((1..len.saturating_sub(1)).map(|i| Slot::single(i, placeholder)).collect(), KeyRule::Blank),
        CollectionKind::Cycle => ((0..len).map(|i| Slot::single(i, placeholder)).collect(), KeyRule::CyclePath),
        CollectionKind::GoodPath => (
            (1..len.saturating_sub(2))
                .map(|p| Slot { blank: vec![p, p + 1], ..Slot::single(p, placeholder) })
                .collect(),
            KeyRule::Blank,
        ),
    };
    if slots.is_empty() || coll.is_empty() {
        return None;
    }
    let s = slots.len();
    let groups = group(coll.flat(), len, &slots, rule);
    let value: Vec<usize> = if coll.kind == CollectionKind::GoodPath {
        (0..groups.len())
            .into_par_iter()
            .map(|sig| {
                let items = groups.group(sig);
                if items.len() < alpha {
                    return items.len();
                }
                let p = slots[items[0] as usize % s].blank[0];
                let edges: Vec<(usize, usize)> = items
                    .iter()
                    .map(|&e| {
                        let m = coll.raw(e as usize / s);
                        (m[p] as usize, m[p + 1] as usize)
                    })
                    .collect();
                // a greedy matching often settles it
                let mut used = std::collections::HashSet::new();
                let mut greedy = 0;
                for &(a, b) in &edges {
                    if !used.contains(&a) && !used.contains(&b) {
                        used.insert(a);
                        used.insert(b);
                        greedy += 1;
                    }
                }
                if greedy >= alpha {
                    greedy
                } else {
                    matching_size(&edges)
                }
            })
            .collect()
    } else {
        (0..groups.len()).map(|sig| groups.group(sig).len()).collect()
    };
    for m in 0..coll.len() {
        for (slot, sl) in slots.iter().enumerate() {
            let v = value[groups.sig_of[m * s + slot] as usize];
            if v < alpha {
                let reason = match coll.kind {
                    CollectionKind::GoodPath => "too few disjoint fill edges",
                    _ => "too few fills",
                };
                return Some(Counterexample {
                    member: coll.member(m),
                    positions: sl.blank.clone(),
                    observed: v,
                    reason: reason.into(),
                });
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kn(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
    }

    #[test]
    fn singleton_fails_at_two() {
        let g = kn(4);
        let c = LabeledCollection::new(CollectionKind::Path, 3, 1, vec![vec![0, 1, 2]]).unwrap();
        assert!(verify_collection(&c, &g, 1).ok);
        let v = verify_collection(&c, &g, 2);
        assert!(!v.ok);
        let ce = v.counterexample.unwrap();
        assert_eq!((ce.positions, ce.observed), (vec![1], 1));
    }

    #[test]
    fn structural_failures() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2)]).unwrap();
        let c = LabeledCollection::new(CollectionKind::Path, 3, 0, vec![vec![0, 1, 3]]).unwrap();
        assert!(!verify_collection(&c, &g, 0).ok);
        let c = LabeledCollection::new(CollectionKind::Cycle, 3, 0, vec![vec![0, 1, 2]]).unwrap();
        assert!(!verify_collection(&c, &g, 0).ok);
    }

    #[test]
    fn goodness_uses_disjointness() {
        // fill edges at (1,2) form a star around vertex 1: matching number 1
        let g = kn(7);
        let members = (2..6).map(|b| vec![0, 1, b, 6]).collect();
        let c = LabeledCollection::new(CollectionKind::GoodPath, 4, 0, members).unwrap();
        let v = verify_collection(&c, &g, 2);
        assert_eq!(v.counterexample.unwrap().observed, 1);
        let members = vec![vec![0, 1, 2, 6], vec![0, 3, 4, 6]];
        let c = LabeledCollection::new(CollectionKind::GoodPath, 4, 0, members).unwrap();
        assert!(verify_collection(&c, &g, 2).ok);
    }
}
