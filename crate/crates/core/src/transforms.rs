//! Host preprocessing: min-degree peeling, bipartite halving, almost-regular
//! band extraction and clean-subgraph pruning.

use crate::error::{input, Error, Result};
use crate::graph::{CodegreeTable, Graph, CODEGREE_CAP};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphStats {
    pub n: usize,
    pub e: usize,
    pub avg_degree: f64,
    pub min_degree: usize,
    pub max_degree: usize,
}

impl GraphStats {
    pub fn of(g: &Graph) -> Self {
        GraphStats {
            n: g.live_count(),
            e: g.edge_count(),
            avg_degree: g.average_degree(),
            min_degree: g.min_degree(),
            max_degree: g.max_degree(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum AuditEntry {
    DeleteVertex { v: usize, degree: usize },
    DeleteEdge { u: usize, v: usize },
    Flip { v: usize },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TransformReport {
    pub transform: String,
    pub input: GraphStats,
    pub output: GraphStats,
    pub steps: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub audit: Option<Vec<AuditEntry>>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
}

impl TransformReport {
    fn new(name: &str, before: &Graph, after: &Graph, steps: usize, audit: Vec<AuditEntry>) -> Self {
        TransformReport {
            transform: name.to_string(),
            input: GraphStats::of(before),
            output: GraphStats::of(after),
            steps,
            audit: Some(audit),
            notes: Vec::new(),
        }
    }
}

/// Deletes vertices of degree below `threshold` until none is left,
/// smallest degree first (ties by id). Returns the survivors' mask.
fn peel_below(g: &Graph, alive: &mut [bool], degree: &mut [usize], threshold: f64, audit: &mut Vec<AuditEntry>) {
    let mut queue: BTreeSet<(usize, usize)> =
        (0..g.n()).filter(|&v| alive[v]).map(|v| (degree[v], v)).collect();
    while let Some(&(d, v)) = queue.iter().next() {
        if (d as f64) >= threshold {
            break;
        }
        queue.remove(&(d, v));
        alive[v] = false;
        audit.push(AuditEntry::DeleteVertex { v, degree: d });
        for &w in g.neighbors(v) {
            if alive[w] {
                queue.remove(&(degree[w], w));
                degree[w] -= 1;
                queue.insert((degree[w], w));
            }
        }
    }
}

fn live_mask(g: &Graph) -> (Vec<bool>, Vec<usize>) {
    let alive: Vec<bool> = (0..g.n()).map(|v| g.is_live(v)).collect();
    let degree = (0..g.n()).map(|v| g.degree(v)).collect();
    (alive, degree)
}

/// Repeatedly deletes a vertex of degree `< d/4`, `d` the input average
/// degree. The result keeps at least half the edges.
pub fn peel_min_degree(g: &Graph) -> Result<(Graph, TransformReport)> {
    if g.edge_count() == 0 {
        return input("peeling needs at least one edge");
    }
    let d = g.average_degree();
    let (mut alive, mut degree) = live_mask(g);
    let mut audit = Vec::new();
    peel_below(g, &mut alive, &mut degree, d / 4.0, &mut audit);
    let out = g.induced(&alive);
    if 2 * out.edge_count() < g.edge_count() || (out.min_degree() as f64) < d / 4.0 {
        return Err(Error::Integrity(format!(
            "peeling left e={} (input {}) and min degree {} (bound {:.3})",
            out.edge_count(),
            g.edge_count(),
            out.min_degree(),
            d / 4.0
        )));
    }
    let steps = audit.len();
    let report = TransformReport::new("peel", g, &out, steps, audit);
    Ok((out, report))
}

/// Spanning bipartite subgraph from a BFS colouring improved by local
/// search: a vertex with more same-side than cross-side neighbours flips.
pub fn bipartite_half(g: &Graph) -> (Graph, Vec<u8>, TransformReport) {
    let n = g.n();
    let mut side = vec![u8::MAX; n];
    let mut queue = std::collections::VecDeque::new();
    for s in 0..n {
        if side[s] != u8::MAX {
            continue;
        }
        side[s] = 0;
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for &v in g.neighbors(u) {
                if side[v] == u8::MAX {
                    side[v] = 1 - side[u];
                    queue.push_back(v);
                }
            }
        }
    }
    let mut audit = Vec::new();
    loop {
        let mut changed = false;
        for v in 0..n {
            let same = g.neighbors(v).iter().filter(|&&w| side[w] == side[v]).count();
            if 2 * same > g.degree(v) {
                side[v] = 1 - side[v];
                audit.push(AuditEntry::Flip { v });
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let out = g.filter_edges(|u, v| side[u] != side[v]);
    let steps = audit.len();
    let report = TransformReport::new("half", g, &out, steps, audit);
    (out, side, report)
}

/// Searches dyadic degree bands for a subgraph with `max <= K * min` degree
/// and `e >= (2c/5) m^(1+eps)`, keeping the one with the largest
/// `e / m^(1+eps)`.
pub fn almost_regular_subgraph(g: &Graph, epsilon: f64, c: f64, k_target: f64) -> Result<(Graph, TransformReport)> {
    if !(k_target >= 1.0) || !(epsilon >= 0.0) || !(c > 0.0) {
        return input("almost_regular_subgraph needs eps >= 0, c > 0 and K >= 1");
    }
    let n = g.live_count() as f64;
    let exponent = 1.0 + epsilon;
    if (g.edge_count() as f64) < c * n.powf(exponent) {
        return input(format!(
            "precondition e >= c n^(1+eps) fails: e={} < {:.3}",
            g.edge_count(),
            c * n.powf(exponent)
        ));
    }
    let max_deg = g.max_degree();
    let mut best: Option<(f64, usize, Graph, Vec<AuditEntry>)> = None;
    let mut best_any: Option<(f64, usize)> = None;
    let mut j = 0u32;
    while (1usize << j) <= max_deg.max(1) {
        let lo = (1usize << j) as f64;
        let hi = lo * 2.0 * k_target;
        let (mut alive, mut degree) = live_mask(g);
        let mut audit = Vec::new();
        for v in 0..g.n() {
            if alive[v] && degree[v] as f64 > hi {
                alive[v] = false;
                audit.push(AuditEntry::DeleteVertex { v, degree: degree[v] });
                for &w in g.neighbors(v) {
                    if alive[w] {
                        degree[w] -= 1;
                    }
                }
            }
        }
        let mut floor = lo;
        loop {
            peel_below(g, &mut alive, &mut degree, floor, &mut audit);
            let live: Vec<usize> = (0..g.n()).filter(|&v| alive[v]).collect();
            if live.is_empty() {
                break;
            }
            let dmax = live.iter().map(|&v| degree[v]).max().unwrap() as f64;
            let dmin = live.iter().map(|&v| degree[v]).min().unwrap() as f64;
            if dmax <= k_target * dmin {
                break;
            }
            floor = (dmax / k_target).ceil();
        }
        let h = g.induced(&alive);
        let m = h.live_count();
        if m > 0 && h.edge_count() > 0 {
            let ratio = h.edge_count() as f64 / (m as f64).powf(exponent);
            if best_any.map_or(true, |(r, _)| ratio > r) {
                best_any = Some((ratio, j as usize));
            }
            let feasible = (h.edge_count() as f64) >= 0.4 * c * (m as f64).powf(exponent);
            if feasible && best.as_ref().map_or(true, |(r, ..)| ratio > *r) {
                best = Some((ratio, j as usize, h, audit));
            }
        }
        j += 1;
    }
    match best {
        Some((_, band, h, audit)) => {
            if (h.max_degree() as f64) > k_target * h.min_degree() as f64 {
                return Err(Error::Integrity("band result is not K-almost-regular".into()));
            }
            let steps = audit.len();
            let mut report = TransformReport::new("regularize", g, &h, steps, audit);
            report.notes.push(format!("band j={band}: degrees in [2^{band}, 2^{}*K]", band + 1));
            Ok((h, report))
        }
        None => Err(Error::NotFound(match best_any {
            Some((ratio, band)) => format!(
                "no degree band meets e >= (2c/5) m^(1+eps); best band j={band} reached e/m^(1+eps)={ratio:.4} < {:.4}",
                0.4 * c
            ),
            None => "every degree band peeled to the empty graph".to_string(),
        })),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum CleanMode {
    /// thresholds from the input average degree
    #[default]
    Fixed,
    /// thresholds from the current average degree, recomputed every pass
    #[serde(rename = "self")]
    SelfReferential,
}

fn codegree_lookup(g: &Graph) -> impl Fn(usize, usize) -> usize + '_ {
    let table = CodegreeTable::shared(g, CODEGREE_CAP);
    move |a, b| match &table {
        Some(t) => t.get(a, b),
        None => g.codegree(a, b),
    }
}

/// Number of neighbours `w != v` of `u` with `codeg(v, w) >= min_codeg`.
fn qualifying(g: &Graph, codeg: &impl Fn(usize, usize) -> usize, u: usize, v: usize, min_codeg: f64) -> usize {
    g.neighbors(u).iter().filter(|&&w| w != v && codeg(v, w) as f64 >= min_codeg).count()
}

/// Checks the clean condition with thresholds `d/16` and `d^2/(128 n)`;
/// returns the first violating oriented edge.
pub fn clean_violation(g: &Graph, d: f64, n: f64) -> Option<(usize, usize)> {
    let codeg = codegree_lookup(g);
    let (need, min_codeg) = (d / 16.0, d * d / (128.0 * n));
    for (a, b) in g.edges() {
        for (u, v) in [(a, b), (b, a)] {
            if (qualifying(g, &codeg, u, v, min_codeg) as f64) < need {
                return Some((u, v));
            }
        }
    }
    None
}

/// Deletes, in full passes, every edge violating the clean condition in
/// either orientation, until a pass deletes nothing.
pub fn clean_subgraph(g: &Graph, mode: CleanMode) -> (Graph, TransformReport) {
    let n = g.live_count().max(1) as f64;
    let d_in = g.average_degree();
    let mut h = g.clone();
    let mut audit = Vec::new();
    let mut passes = 0;
    while h.edge_count() > 0 {
        passes += 1;
        let d = match mode {
            CleanMode::Fixed => d_in,
            CleanMode::SelfReferential => 2.0 * h.edge_count() as f64 / n,
        };
        let (need, min_codeg) = (d / 16.0, d * d / (128.0 * n));
        let codeg = codegree_lookup(&h);
        let doomed: Vec<(usize, usize)> = h
            .edges()
            .filter(|&(a, b)| {
                (qualifying(&h, &codeg, a, b, min_codeg) as f64) < need
                    || (qualifying(&h, &codeg, b, a, min_codeg) as f64) < need
            })
            .collect();
        drop(codeg);
        if doomed.is_empty() {
            break;
        }
        audit.extend(doomed.iter().map(|&(u, v)| AuditEntry::DeleteEdge { u, v }));
        h = h.remove(&Default::default(), &doomed).expect("doomed edges exist");
    }
    let mut report = TransformReport::new("clean", g, &h, passes, audit);
    report.notes.push(format!("mode={mode:?}, input d={d_in:.4}"));
    (h, report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::random_graph;

    fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
    }

    fn complete_bipartite(a: usize, b: usize) -> Graph {
        Graph::from_edges(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)))).unwrap()
    }

    #[test]
    fn peel_examples() {
        let tri = Graph::from_edges(4, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let (out, rep) = peel_min_degree(&tri).unwrap();
        assert!(!out.is_live(3));
        assert_eq!(out.edge_count(), 3);
        assert_eq!(rep.steps, 1);
        let star = complete_bipartite(1, 5);
        assert_eq!(peel_min_degree(&star).unwrap().0, star);
        let two = Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert_eq!(peel_min_degree(&two).unwrap().0, two);
        assert!(peel_min_degree(&Graph::empty(3)).is_err());
    }

    #[test]
    fn peel_bounds_on_random_graphs() {
        for seed in 0..30 {
            let g = random_graph(60, 0.08, seed, false);
            if g.edge_count() == 0 {
                continue;
            }
            let d = g.average_degree();
            let (h, _) = peel_min_degree(&g).unwrap();
            assert!(2 * h.edge_count() >= g.edge_count());
            assert!(h.min_degree() as f64 >= d / 4.0);
        }
    }

    #[test]
    fn half_examples() {
        let (h, side, _) = bipartite_half(&complete(3));
        assert_eq!(h.edge_count(), 2);
        assert!(h.edges().all(|(u, v)| side[u] != side[v]));
        let k33 = complete_bipartite(3, 3);
        assert_eq!(bipartite_half(&k33).0.edge_count(), 9);
        let c5 = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        assert_eq!(bipartite_half(&c5).0.edge_count(), 4);
    }

    #[test]
    fn half_keeps_half_on_random_graphs() {
        for seed in 0..30 {
            let g = random_graph(40, 0.3, seed, false);
            let (h, _, _) = bipartite_half(&g);
            assert!(h.is_bipartite());
            assert!(2 * h.edge_count() >= g.edge_count());
        }
    }

    #[test]
    fn regularize_examples() {
        let k10 = complete(10);
        let (h, _) = almost_regular_subgraph(&k10, 0.5, 1.0, 1.0).unwrap();
        assert_eq!(h, k10);
        let g = Graph::from_edges(56, complete(6).edges()).unwrap();
        let (h, _) = almost_regular_subgraph(&g, 0.1, 0.1, 2.0).unwrap();
        assert_eq!(h.live_count(), 6);
        assert_eq!(h.edge_count(), 15);
        let star = complete_bipartite(1, 1000);
        assert!(matches!(almost_regular_subgraph(&star, 0.5, 1.0, 4.0), Err(Error::Input(_))));
    }

    #[test]
    fn regularize_postcondition_on_random_graphs() {
        for seed in 0..10 {
            let g = random_graph(120, 0.15, seed, false);
            let (h, _) = almost_regular_subgraph(&g, 0.2, 0.5, 4.0).unwrap();
            assert!(h.max_degree() as f64 <= 4.0 * h.min_degree() as f64);
            let m = h.live_count() as f64;
            assert!(h.edge_count() as f64 >= 0.2 * m.powf(1.2));
        }
    }

    #[test]
    fn clean_examples() {
        let k = complete_bipartite(16, 16);
        assert_eq!(clean_subgraph(&k, CleanMode::Fixed).0, k);
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4)]).unwrap();
        let (h, rep) = clean_subgraph(&g, CleanMode::Fixed);
        assert_eq!(h.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 3), (1, 2), (2, 3)]);
        assert_eq!(rep.audit.unwrap(), vec![AuditEntry::DeleteEdge { u: 0, v: 4 }]);
        let (h, _) = clean_subgraph(&Graph::empty(4), CleanMode::SelfReferential);
        assert_eq!(h.edge_count(), 0);
    }

    #[test]
    fn clean_output_is_clean_for_its_own_degree() {
        for seed in 0..10 {
            let g = random_graph(80, 0.2, seed, false);
            for mode in [CleanMode::Fixed, CleanMode::SelfReferential] {
                let (h, _) = clean_subgraph(&g, mode);
                if h.edge_count() > 0 {
                    let n = h.live_count() as f64;
                    assert_eq!(clean_violation(&h, h.average_degree(), n), None);
                }
            }
        }
    }
}
