use super::search::{disjoint_cycle, Space};
use super::{seal, EmbeddingCertificate, PatternRef, Provenance};
use crate::collections::{CollectionKind, LabeledCollection};
use crate::error::{input, Error, Result};
use crate::generators::{label, PatternSpec};
use crate::graph::Graph;
use rustc_hash::{FxHashMap, FxHashSet};

const RESTARTS: usize = 32;

/// Tuples of `ell` vertices from one side. `a ~ b` when walking
/// `a1 b1 a2 b2 .. a_ell b_ell` closes to a member.
struct TupleGraph {
    tuples: Vec<Vec<usize>>,
    adj: Vec<Vec<u32>>,
    pairs: FxHashSet<(u32, u32)>,
}

impl Space for TupleGraph {
    type Node = u32;
    fn neighbors(&self, n: &u32, out: &mut Vec<u32>) {
        out.extend_from_slice(&self.adj[*n as usize]);
    }
    fn closes(&self, last: &u32, first: &u32) -> bool {
        self.pairs.contains(&(*last, *first))
    }
    fn vertices(&self, n: &u32, out: &mut Vec<usize>) {
        out.extend_from_slice(&self.tuples[*n as usize]);
    }
}

fn tuple_graph(coll: &LabeledCollection, side: &[u8]) -> (TupleGraph, Vec<u32>) {
    let m = coll.length;
    let mut ids: FxHashMap<Vec<usize>, u32> = FxHashMap::default();
    let mut g = TupleGraph { tuples: Vec::new(), adj: Vec::new(), pairs: FxHashSet::default() };
    let mut starts = Vec::new();
    let mut intern = |t: Vec<usize>, g: &mut TupleGraph, starts: &mut Vec<u32>, is_a: bool| -> u32 {
        if let Some(&id) = ids.get(&t) {
            return id;
        }
        let id = g.tuples.len() as u32;
        ids.insert(t.clone(), id);
        g.tuples.push(t);
        g.adj.push(Vec::new());
        if is_a {
            starts.push(id);
        }
        id
    };
    for c in coll.iter() {
        for rot in 0..m {
            for dir in [1, m - 1] {
                let seq: Vec<usize> = (0..m).map(|i| c[(rot + i * dir) % m]).collect();
                if side[seq[0]] != 0 {
                    continue;
                }
                let a = intern(seq.iter().step_by(2).copied().collect(), &mut g, &mut starts, true);
                let b = intern(seq.iter().skip(1).step_by(2).copied().collect(), &mut g, &mut starts, false);
                if g.pairs.insert((a, b)) {
                    g.pairs.insert((b, a));
                    g.adj[a as usize].push(b);
                    g.adj[b as usize].push(a);
                }
            }
        }
    }
    (g, starts)
}

/// Searches the tuple graph for a `k`-cycle of pairwise disjoint tuples;
/// tuple `i` becomes row `i` of the torus.
pub fn embed_torus(
    coll: &LabeledCollection,
    host: &Graph,
    k: usize,
    ell: usize,
    budget: u64,
    seed: u64,
) -> Result<EmbeddingCertificate> {
    let spec = PatternSpec::Torus { k, ell };
    spec.validate()?;
    if coll.is_empty() {
        return Err(Error::NotFound("empty collection".into()));
    }
    if coll.kind != CollectionKind::Cycle || coll.length != 2 * ell {
        return input(format!("torus needs cycles of length {}", 2 * ell));
    }
    if coll.alpha < k * ell {
        return input(format!("alpha={} is below k*ell={}", coll.alpha, k * ell));
    }
    let Some(side) = host.two_coloring() else {
        return input("torus embedding needs a bipartite host");
    };
    let (tg, starts) = tuple_graph(coll, &side);
    let out = disjoint_cycle(&tg, &starts, k, host.n(), budget, RESTARTS, seed);
    let Some(found) = out.found else {
        return Err(Error::NotFound(format!("no disjoint {k}-cycle of tuples within budget {budget}")));
    };
    let mut at: FxHashMap<String, usize> = FxHashMap::default();
    for (i, &id) in found.cycle.iter().enumerate() {
        for (j, &v) in tg.tuples[id as usize].iter().enumerate() {
            at.insert(label(i + 1, j + 1), v);
        }
    }
    let method = Provenance::new("embed_torus")
        .param("k", k)
        .param("ell", ell)
        .param("alpha", coll.alpha)
        .param("budget", budget)
        .param("restart", found.restart)
        .seed(seed);
    seal(host, PatternRef::Spec(spec), |l| at.get(l).copied(), method)
}
