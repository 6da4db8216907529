use super::scope::seed_paths;
use super::{prune, verify_collection, CollectionKind, LabeledCollection, Layout, PruneAudit, SeedScope};
use crate::error::{input, Error, Result};
use crate::graph::{CodegreeTable, Graph, CODEGREE_CAP};
use rayon::prelude::*;
use serde::Serialize;

/// Outcome of the cherry count that selects the construction.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CaseDecision {
    pub case: u8,
    pub c: f64,
    pub l: f64,
    /// labelled paths `uvw` with `d(u,w) > C`
    pub high_cherries: u64,
    /// `n d^2 / L`
    pub bound: f64,
    /// vertex with the most high cherries
    pub apex: Option<usize>,
    pub apex_cherries: u64,
}

/// `64 k K^2` with `K` the max/min degree ratio of the live graph.
pub fn default_l(g: &Graph, k: usize) -> f64 {
    let ratio = g.max_degree() as f64 / g.min_degree().max(1) as f64;
    64.0 * k as f64 * ratio * ratio
}

pub fn decide_case(g: &Graph, c: f64, l: f64) -> CaseDecision {
    let table = CodegreeTable::shared(g, CODEGREE_CAP);
    let codeg = |u: usize, w: usize| table.as_ref().map_or_else(|| g.codegree(u, w), |t| t.get(u, w));
    let per_vertex: Vec<u64> = (0..g.n())
        .into_par_iter()
        .map(|v| {
            let nb = g.neighbors(v);
            let mut cnt = 0u64;
            for (i, &u) in nb.iter().enumerate() {
                for &w in &nb[i + 1..] {
                    if codeg(u, w) as f64 > c {
                        cnt += 2;
                    }
                }
            }
            cnt
        })
        .collect();
    let high: u64 = per_vertex.iter().sum();
    let d = g.average_degree();
    let bound = g.live_count() as f64 * d * d / l;
    let (apex, apex_cherries) = per_vertex
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
        .map_or((None, 0), |(v, &c)| (Some(v), c));
    let case = if (high as f64) <= bound { 1 } else { 2 };
    CaseDecision { case, c, l, high_cherries: high, bound, apex: if case == 2 { apex } else { None }, apex_cherries }
}

/// Result of the good-path builder, with the weight diagnostic for the
/// second construction.
#[derive(Clone, Debug)]
pub struct GoodPaths {
    pub collection: LabeledCollection,
    pub audit: PruneAudit,
    pub case: u8,
    pub decision: CaseDecision,
    pub seed_weight: Option<f64>,
    pub final_weight: Option<f64>,
}

/// The seed the builder would prune for paths on `2k+1` vertices.
pub fn good_path_seed(
    g: &Graph,
    k: usize,
    c: f64,
    decision: &CaseDecision,
    scope: &SeedScope,
    cap: u64,
) -> Result<LabeledCollection> {
    if k < 1 {
        return input("good paths need k >= 1");
    }
    let len = 2 * k + 1;
    let codeg = Codegrees::new(g);
    let flat = match decision.apex {
        None => seed_paths(g, len, scope, cap, |p, v| p.len() < 2 || codeg.get(p[p.len() - 2], v) as f64 <= c)?,
        Some(a) => seed_paths(g, len, scope, cap, |p, v| {
            let pos = p.len();
            if v == a {
                return false;
            }
            pos % 2 == 1 || (g.has_edge(a, v) && (pos == 0 || codeg.get(p[pos - 2], v) as f64 > c))
        })?,
    };
    Ok(LabeledCollection::from_flat(CollectionKind::GoodPath, len, 0, flat))
}

/// Table lookups when the host is small enough, merges otherwise.
struct Codegrees<'a> {
    g: &'a Graph,
    table: Option<CodegreeTable>,
}

impl<'a> Codegrees<'a> {
    fn new(g: &'a Graph) -> Self {
        Codegrees { g, table: CodegreeTable::shared(g, CODEGREE_CAP) }
    }

    fn get(&self, u: usize, v: usize) -> usize {
        self.table.as_ref().map_or_else(|| self.g.codegree(u, v), |t| t.get(u, v))
    }
}

fn weight(codeg: &Codegrees, m: &[u32]) -> f64 {
    let mut w = 1.0;
    for i in (2..m.len()).step_by(2) {
        w /= codeg.get(m[i - 2] as usize, m[i] as usize) as f64;
    }
    w
}

fn total_weight(codeg: &Codegrees, c: &LabeledCollection) -> f64 {
    let parts: Vec<f64> = (0..c.len()).into_par_iter().map(|i| weight(codeg, c.raw(i))).collect();
    parts.iter().sum()
}

pub fn build_good_paths(g: &Graph, k: usize, alpha: usize, c: f64, l: f64, cap: u64) -> Result<GoodPaths> {
    build_good_paths_in(g, k, alpha, c, l, cap, &SeedScope::Full)
}

/// Builds an `alpha`-good collection of paths on `2k+1` vertices. Few high
/// cherries: seed with paths whose second-neighbour codegrees are at most
/// `C` and prune adjacent pairs with at most `C^2` fill edges. Otherwise:
/// seed through the neighbourhood of the apex and run the three typed
/// deletions at `2 alpha`. The output is re-verified before returning.
pub fn build_good_paths_in(
    g: &Graph,
    k: usize,
    alpha: usize,
    c: f64,
    l: f64,
    cap: u64,
    scope: &SeedScope,
) -> Result<GoodPaths> {
    if !(c > 0.0 && l > 0.0) {
        return input("C and L must be positive");
    }
    let decision = decide_case(g, c, l);
    let seed = good_path_seed(g, k, c, &decision, scope, cap)?;
    let vertices = 2 * k + 1;
    let layout = if decision.case == 1 {
        Layout::GoodCase1 { vertices, limit: (c * c).floor() as usize }
    } else {
        Layout::GoodCase2 { vertices, limit: 2 * alpha }
    };
    let (collection, audit) = prune(&seed, layout, CollectionKind::GoodPath, alpha);
    let (seed_weight, final_weight) = if decision.case == 2 {
        let codeg = Codegrees::new(g);
        (Some(total_weight(&codeg, &seed)), Some(total_weight(&codeg, &collection)))
    } else {
        (None, None)
    };
    let v = verify_collection(&collection, g, alpha);
    if let Some(ce) = v.counterexample {
        return Err(Error::Integrity(format!("case {} fixpoint is not {alpha}-good: {ce}", decision.case)));
    }
    Ok(GoodPaths { collection, audit, case: decision.case, decision, seed_weight, final_weight })
}

/// Members ending in `v`, with `v` dropped.
pub fn restrict_last(coll: &LabeledCollection, v: usize) -> Result<LabeledCollection> {
    if coll.kind == CollectionKind::Cycle || coll.length < 3 {
        return input("restriction needs a path collection of length >= 3");
    }
    let len = coll.length;
    let mut flat = Vec::new();
    for i in 0..coll.len() {
        let m = coll.raw(i);
        if m[len - 1] as usize == v {
            flat.extend_from_slice(&m[..len - 1]);
        }
    }
    Ok(LabeledCollection::from_flat(coll.kind, len - 1, coll.alpha, flat))
}
