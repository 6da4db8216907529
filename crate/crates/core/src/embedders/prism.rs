use super::prism_path::ladder;
use super::search::{disjoint_cycle, Space};
use super::{seal, EmbeddingCertificate, PatternRef, Provenance};
use crate::counting::{classify_c4, count_c4};
use crate::error::{input, Error, Result};
use crate::generators::{label, PatternSpec};
use crate::graph::{intersection, CodegreeTable, Graph, VertexSet, CODEGREE_CAP};
use crate::transforms::{bipartite_half, peel_min_degree};
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::HashMap;

/// Exact classification up to this many 4-cycles, sampling beyond.
const EXACT_C4: u64 = 1_000_000;
const SAMPLES: usize = 4096;
const RESTARTS: usize = 64;
const THICK_EDGES: usize = 8;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BranchAttempt {
    pub branch: String,
    pub found: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PrismReport {
    pub ell: usize,
    pub average_degree: f64,
    /// `T d^{1/2}` on the cleaned host
    pub threshold: f64,
    pub c4_total: String,
    /// exact counts, or estimates scaled from a sample
    pub thin: f64,
    pub thick: f64,
    pub sampled: bool,
    pub attempts: Vec<BranchAttempt>,
}

struct Codeg<'a> {
    g: &'a Graph,
    table: Option<CodegreeTable>,
}

impl Codeg<'_> {
    fn get(&self, u: usize, v: usize) -> usize {
        self.table.as_ref().map_or_else(|| self.g.codegree(u, v), |t| t.get(u, v))
    }
}

/// Ordered edges `(s1, s2)`; `s ~ t` when `s1 s2 t1 t2` is a thin 4-cycle.
struct EdgePairs<'a> {
    g: &'a Graph,
    cd: &'a Codeg<'a>,
    thr: f64,
}

impl EdgePairs<'_> {
    fn thin(&self, a: usize, b: usize) -> bool {
        self.cd.get(a, b) as f64 <= self.thr
    }
}

impl Space for EdgePairs<'_> {
    type Node = (u32, u32);
    fn neighbors(&self, &(s1, s2): &(u32, u32), out: &mut Vec<(u32, u32)>) {
        let (s1, s2) = (s1 as usize, s2 as usize);
        for &t1 in self.g.neighbors(s2) {
            if t1 == s1 || !self.thin(s1, t1) {
                continue;
            }
            for t2 in intersection(self.g.neighbors(s1), self.g.neighbors(t1)) {
                if t2 != s2 && self.thin(s2, t2) {
                    out.push((t1 as u32, t2 as u32));
                }
            }
        }
    }
    fn closes(&self, &(a1, a2): &(u32, u32), &(b1, b2): &(u32, u32)) -> bool {
        let (a1, a2, b1, b2) = (a1 as usize, a2 as usize, b1 as usize, b2 as usize);
        a1 != b1
            && a2 != b2
            && self.g.has_edge(a2, b1)
            && self.g.has_edge(b1, b2)
            && self.g.has_edge(b2, a1)
            && self.thin(a1, b1)
            && self.thin(a2, b2)
    }
    fn vertices(&self, &(a, b): &(u32, u32), out: &mut Vec<usize>) {
        out.push(a as usize);
        out.push(b as usize);
    }
}

/// Estimates thin and thick counts by drawing a diagonal pair `{x, z}` with
/// probability proportional to `C(d(x,z), 2)` and then two of its common
/// neighbours.
fn sample_classes(g: &Graph, cd: &Codeg, thr: f64, total: f64, seed: u64) -> (f64, f64) {
    let live: Vec<usize> = g.live_vertices().filter(|&v| g.degree(v) > 0).collect();
    let mut pairs = Vec::new();
    let mut cum = Vec::new();
    let mut acc = 0f64;
    for (i, &x) in live.iter().enumerate() {
        for &z in &live[i + 1..] {
            let c = cd.get(x, z) as f64;
            if c >= 2.0 {
                acc += c * (c - 1.0) / 2.0;
                pairs.push((x, z));
                cum.push(acc);
            }
        }
    }
    if pairs.is_empty() {
        return (0.0, 0.0);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut thin = 0usize;
    for _ in 0..SAMPLES {
        let r = rng.random::<f64>() * acc;
        let i = cum.partition_point(|&c| c <= r).min(pairs.len() - 1);
        let (x, z) = pairs[i];
        let common = intersection(g.neighbors(x), g.neighbors(z));
        let a = rng.random_range(0..common.len());
        let mut b = rng.random_range(0..common.len() - 1);
        if b >= a {
            b += 1;
        }
        if cd.get(x, z) as f64 <= thr && cd.get(common[a], common[b]) as f64 <= thr {
            thin += 1;
        }
    }
    let f = thin as f64 / SAMPLES as f64;
    (total * f, total * (1.0 - f))
}

fn thin_branch(
    g: &Graph,
    cd: &Codeg,
    thr: f64,
    ell: usize,
    budget: u64,
    seed: u64,
) -> (Option<HashMap<String, usize>>, String) {
    let space = EdgePairs { g, cd, thr };
    let starts: Vec<(u32, u32)> =
        g.edges().flat_map(|(a, b)| [(a as u32, b as u32), (b as u32, a as u32)]).collect();
    let out = disjoint_cycle(&space, &starts, 2 * ell, g.n(), budget, RESTARTS, seed);
    let Some(found) = out.found else {
        return (None, format!("no disjoint {}-cycle of edge pairs after {} steps", 2 * ell, out.work));
    };
    let mut at = HashMap::new();
    for (i, &(a, b)) in found.cycle.iter().enumerate() {
        let (r1, r2) = if i % 2 == 0 { (a, b) } else { (b, a) };
        at.insert(label(1, i + 1), r1 as usize);
        at.insert(label(2, i + 1), r2 as usize);
    }
    (Some(at), format!("restart {} after {} steps", found.restart, out.work))
}

/// Ordered edges `(u, v)` ranked by the number of 4-cycles `uvwz` with
/// `d(u,w)` above the threshold.
fn thick_edges(g: &Graph, cd: &Codeg, thr: f64) -> Vec<(u64, usize, usize)> {
    let mut scored: Vec<(u64, usize, usize)> = (0..g.n())
        .into_par_iter()
        .flat_map_iter(|u| {
            g.neighbors(u).iter().filter_map(move |&v| {
                let s: u64 = g
                    .neighbors(v)
                    .iter()
                    .filter(|&&w| w != u)
                    .map(|&w| cd.get(u, w))
                    .filter(|&c| c as f64 > thr)
                    .map(|c| c as u64 - 1)
                    .sum();
                (s > 0).then_some((s, u, v))
            })
        })
        .collect();
    scored.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    scored.truncate(THICK_EDGES);
    scored
}

/// Closes a ladder on `2 ell - 1` rungs between `X` in `N(v)` and
/// `Y = N(u) - v` into a prism, with `v` and `u` as the first rung.
fn thick_branch(g: &Graph, cd: &Codeg, thr: f64, ell: usize) -> Result<(Option<HashMap<String, usize>>, String)> {
    let edges = thick_edges(g, cd, thr);
    if edges.is_empty() {
        return Ok((None, "no edge extends to a thick 4-cycle".into()));
    }
    let mut notes = Vec::new();
    for (score, u, v) in edges {
        let x: VertexSet = g.neighbors(v).iter().copied().filter(|&w| w != u && cd.get(u, w) as f64 > thr).collect();
        let y: VertexSet = g.neighbors(u).iter().copied().filter(|&w| w != v).collect();
        match ladder(g, &x, &y, 2 * ell - 1) {
            Ok((r1, r2, rep)) => {
                let mut at = HashMap::new();
                at.insert(label(1, 1), v);
                at.insert(label(2, 1), u);
                for j in 0..r1.len() {
                    at.insert(label(1, j + 2), r1[j]);
                    at.insert(label(2, j + 2), r2[j]);
                }
                let note = format!(
                    "edge ({u},{v}) with {score} thick extensions, |X|={} |Y|={} residue {}",
                    rep.x_size, rep.y_size, rep.residue_edges
                );
                return Ok((Some(at), note));
            }
            Err(Error::NotFound(m)) => notes.push(format!("edge ({u},{v}): {m}")),
            Err(e) => return Err(e),
        }
    }
    Ok((None, notes.join("; ")))
}

/// Searches for the prism on two `2 ell`-cycles. The host is made bipartite
/// and peeled; 4-cycles are split into thin and thick at `T d^{1/2}` and
/// the majority class is tried first. Thin: a cycle of edge pairs joined by
/// thin 4-cycles. Thick: an edge with many thick extensions and a ladder
/// between the two neighbourhoods.
pub fn find_prism(g: &Graph, ell: usize, t: f64, budget: u64, seed: u64) -> Result<(EmbeddingCertificate, PrismReport)> {
    if ell < 2 {
        return input("prism needs ell >= 2");
    }
    if !(t > 0.0) {
        return input("T must be positive");
    }
    if g.edge_count() == 0 {
        return Err(Error::NotFound("host has no edges".into()));
    }
    let (half, _, _) = bipartite_half(g);
    let (h, _) = peel_min_degree(&half)?;
    let d = h.average_degree();
    let thr = t * d.sqrt();
    let cd = Codeg { g: &h, table: CodegreeTable::shared(&h, CODEGREE_CAP) };
    let total = count_c4(&h);
    let total_f = total.to_f64().unwrap_or(f64::INFINITY);
    let (thin, thick, sampled) = if total_f <= EXACT_C4 as f64 {
        let c = classify_c4(&h, t, EXACT_C4);
        (c.thin_count as f64, c.thick_count as f64, false)
    } else if cd.table.is_some() {
        let (a, b) = sample_classes(&h, &cd, thr, total_f, seed);
        (a, b, true)
    } else {
        (f64::NAN, f64::NAN, true)
    };
    let mut report = PrismReport {
        ell,
        average_degree: d,
        threshold: thr,
        c4_total: total.to_string(),
        thin,
        thick,
        sampled,
        attempts: Vec::new(),
    };
    if total_f == 0.0 {
        report.attempts.push(BranchAttempt { branch: "none".into(), found: false, detail: "no 4-cycles".into() });
        return Err(Error::NotFound(format!("cleaned host has no 4-cycles: {}", summary(&report))));
    }
    let order = if thick > thin { ["thick", "thin"] } else { ["thin", "thick"] };
    for branch in order {
        let (at, detail) = if branch == "thin" {
            thin_branch(&h, &cd, thr, ell, budget, seed)
        } else {
            thick_branch(&h, &cd, thr, ell)?
        };
        report.attempts.push(BranchAttempt { branch: branch.into(), found: at.is_some(), detail });
        if let Some(at) = at {
            let method = Provenance::new("find_prism")
                .param("ell", ell)
                .param("T", t)
                .param("budget", budget)
                .param("branch", branch)
                .seed(seed);
            let cert = seal(g, PatternRef::Spec(PatternSpec::Prism { ell }), |l| at.get(l).copied(), method)?;
            return Ok((cert, report));
        }
    }
    Err(Error::NotFound(format!("both branches failed: {}", summary(&report))))
}

fn summary(r: &PrismReport) -> String {
    serde_json::to_string(r).expect("report serialises")
}
