//! Brute-force references: subgraph search by backtracking, certificate
//! checking, and exact extremal numbers for tiny orders.

mod canon;
mod exmax;

pub use canon::canonical_code;
pub use exmax::{max_edges_exhaustive, Extremal};

use crate::embedders::{EmbeddingCertificate, PatternRef, Provenance};
use crate::generators::{Pattern, PatternSpec};
use crate::graph::Graph;
use serde::Serialize;
use std::collections::HashSet;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateCheck {
    pub ok: bool,
    pub violation: Option<String>,
}

/// Rebuilds the pattern and checks that the mapping covers each pattern
/// vertex once, is injective into live host vertices and carries every
/// pattern edge onto a host edge.
pub fn verify_certificate(host: &Graph, cert: &EmbeddingCertificate) -> CertificateCheck {
    let violation = check(host, cert).err();
    CertificateCheck { ok: violation.is_none(), violation }
}

fn check(host: &Graph, cert: &EmbeddingCertificate) -> std::result::Result<(), String> {
    let p = cert.pattern.build().map_err(|e| format!("pattern: {e}"))?;
    if cert.mapping.len() != p.labels.len() {
        return Err(format!("mapping has {} entries for {} pattern vertices", cert.mapping.len(), p.labels.len()));
    }
    let ids = p.label_map();
    let mut image = vec![usize::MAX; p.labels.len()];
    let mut seen = HashSet::new();
    for (l, v) in &cert.mapping {
        let &i = ids.get(l.as_str()).ok_or_else(|| format!("unknown label {l}"))?;
        if image[i] != usize::MAX {
            return Err(format!("label {l} mapped twice"));
        }
        if *v >= host.n() || !host.is_live(*v) {
            return Err(format!("label {l} maps to {v}, not a live host vertex"));
        }
        if !seen.insert(*v) {
            return Err(format!("host vertex {v} used twice"));
        }
        image[i] = *v;
    }
    for (a, b) in p.graph.edges() {
        if !host.has_edge(image[a], image[b]) {
            return Err(format!("pattern edge {}-{} maps to non-edge {}-{}", p.labels[a], p.labels[b], image[a], image[b]));
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchOutcome {
    Found,
    /// the whole tree was searched
    Absent,
    BudgetExhausted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub outcome: SearchOutcome,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SubgraphSearch {
    pub certificate: Option<EmbeddingCertificate>,
    pub stats: SearchStats,
}

/// Injective homomorphism search: pattern vertices in an order that keeps
/// each one attached to an earlier one, candidates drawn from the
/// neighbourhood of an already mapped neighbour. `budget` caps the number
/// of candidates tried.
pub fn find_subgraph(host: &Graph, pattern: &Graph, budget: u64) -> SubgraphSearch {
    let p = Pattern { graph: pattern.clone(), labels: (0..pattern.n()).map(|i| i.to_string()).collect() };
    search(host, &p, PatternRef::explicit(pattern), budget)
}

/// As [`find_subgraph`] with the labels of a named pattern.
pub fn find_pattern(host: &Graph, spec: &PatternSpec, budget: u64) -> crate::Result<SubgraphSearch> {
    let p = crate::generators::pattern(spec)?;
    Ok(search(host, &p, PatternRef::Spec(*spec), budget))
}

/// True when `host` contains `pattern`, searching exhaustively.
pub fn contains(host: &Graph, pattern: &Graph) -> bool {
    find_subgraph(host, pattern, u64::MAX).certificate.is_some()
}

fn order(p: &Graph) -> Vec<usize> {
    let k = p.n();
    let mut placed = vec![false; k];
    let mut out = Vec::with_capacity(k);
    let mut links = vec![0usize; k];
    for _ in 0..k {
        let v = (0..k)
            .filter(|&v| !placed[v])
            .max_by(|&a, &b| (links[a], p.degree(a)).cmp(&(links[b], p.degree(b))).then(b.cmp(&a)))
            .unwrap();
        placed[v] = true;
        out.push(v);
        for &w in p.neighbors(v) {
            links[w] += 1;
        }
    }
    out
}

struct State<'a> {
    host: &'a Graph,
    p: &'a Graph,
    order: Vec<usize>,
    image: Vec<usize>,
    used: Vec<bool>,
    nodes: u64,
    budget: u64,
}

impl State<'_> {
    fn fits(&self, pv: usize, hv: usize) -> bool {
        !self.used[hv]
            && self.host.is_live(hv)
            && self.host.degree(hv) >= self.p.degree(pv)
            && self.p.neighbors(pv).iter().all(|&q| self.image[q] == usize::MAX || self.host.has_edge(self.image[q], hv))
    }

    /// `None` when the budget ran out.
    fn go(&mut self, depth: usize) -> Option<bool> {
        if depth == self.order.len() {
            return Some(true);
        }
        let pv = self.order[depth];
        let anchor = self
            .p
            .neighbors(pv)
            .iter()
            .filter(|&&q| self.image[q] != usize::MAX)
            .min_by_key(|&&q| self.host.degree(self.image[q]))
            .map(|&q| self.image[q]);
        let cands: Vec<usize> = match anchor {
            Some(h) => self.host.neighbors(h).to_vec(),
            None => self.host.live_vertices().collect(),
        };
        for hv in cands {
            if self.nodes >= self.budget {
                return None;
            }
            self.nodes += 1;
            if !self.fits(pv, hv) {
                continue;
            }
            self.image[pv] = hv;
            self.used[hv] = true;
            match self.go(depth + 1) {
                Some(true) => return Some(true),
                None => return None,
                Some(false) => {}
            }
            self.image[pv] = usize::MAX;
            self.used[hv] = false;
        }
        Some(false)
    }
}

fn search(host: &Graph, p: &Pattern, pattern_ref: PatternRef, budget: u64) -> SubgraphSearch {
    let mut st = State {
        host,
        p: &p.graph,
        order: order(&p.graph),
        image: vec![usize::MAX; p.graph.n()],
        used: vec![false; host.n()],
        nodes: 0,
        budget,
    };
    let res = if p.graph.n() > host.live_count() { Some(false) } else { st.go(0) };
    let outcome = match res {
        Some(true) => SearchOutcome::Found,
        Some(false) => SearchOutcome::Absent,
        None => SearchOutcome::BudgetExhausted,
    };
    let certificate = (outcome == SearchOutcome::Found).then(|| EmbeddingCertificate {
        pattern: pattern_ref,
        mapping: p.labels.iter().cloned().zip(st.image.iter().copied()).collect(),
        method: Provenance::new("oracle").param("budget", budget),
    });
    SubgraphSearch { certificate, stats: SearchStats { nodes: st.nodes, outcome } }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{pattern, polarity_graph};

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn finds_and_verifies() {
        let h = pattern(&PatternSpec::Honeycomb { k: 3, ell: 4 }).unwrap().graph;
        let s = find_subgraph(&h, &cycle(6), u64::MAX);
        assert_eq!(s.stats.outcome, SearchOutcome::Found);
        assert!(verify_certificate(&h, s.certificate.as_ref().unwrap()).ok);
        assert!(!contains(&polarity_graph(5).unwrap(), &cycle(4)));
    }

    #[test]
    fn budget_is_reported() {
        let g = cycle(30);
        let s = find_subgraph(&g, &cycle(4), 10);
        assert_eq!((s.stats.outcome, s.stats.nodes), (SearchOutcome::BudgetExhausted, 10));
        assert_eq!(find_subgraph(&g, &cycle(4), u64::MAX).stats.outcome, SearchOutcome::Absent);
    }

    #[test]
    fn rejects_bad_certificates() {
        let g = cycle(4);
        let good = find_pattern(&g, &PatternSpec::EvenCycle { ell: 2 }, 1000).unwrap().certificate.unwrap();
        assert!(verify_certificate(&g, &good).ok);
        let mut c = good.clone();
        c.mapping[0].1 = c.mapping[1].1;
        assert!(verify_certificate(&g, &c).violation.unwrap().contains("twice"));
        // swapping two consecutive images sends an edge onto a diagonal
        let mut c = good.clone();
        let (a, b) = (c.mapping[0].1, c.mapping[1].1);
        c.mapping[0].1 = b;
        c.mapping[1].1 = a;
        assert!(verify_certificate(&g, &c).violation.unwrap().contains("non-edge"));
        let mut c = good.clone();
        c.mapping[0].1 = 9;
        assert!(!verify_certificate(&g, &c).ok);
        let mut c = good;
        c.mapping.pop();
        assert!(!verify_certificate(&g, &c).ok);
    }
}
