//! Acceptance suite. Each test prints one `criterion NN ...: PASS|FAIL` line
//! and then asserts the same verdict.

mod common;

use common::*;
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use std::io::Write;
use std::time::{Duration, Instant};
use turan_forge::collections::*;
use turan_forge::counting::{check_path_inequality, count_c4, count_even_cycles, hom_path_count};
use turan_forge::embedders::*;
use turan_forge::generators::{pattern, polarity_graph, random_graph};
use turan_forge::oracle::{contains, max_edges_exhaustive, verify_certificate};
use turan_forge::pipeline::{run_pipeline, PipelineConfig, Status};
use turan_forge::{Error, Graph, PatternSpec, VertexSet};

fn verdict(n: u32, name: &str, ok: bool, elapsed: Duration, limit: Duration, notes: &[String]) {
    let timed = elapsed <= limit;
    let pass = ok && timed;
    for note in notes {
        println!("    {note}");
    }
    // straight to stderr so the verdict shows even when output is captured
    let _ = writeln!(
        std::io::stderr(),
        "criterion {n:02} {name}: {} ({:.2?} of {:?}{})",
        if pass { "PASS" } else { "FAIL" },
        elapsed,
        limit,
        if timed { "" } else { ", over time" }
    );
    assert!(ok, "criterion {n} checks failed: {notes:?}");
    assert!(timed, "criterion {n} took {elapsed:?}, limit {limit:?}");
}

fn max_codegree(g: &Graph) -> usize {
    let mut best = 0;
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            best = best.max(g.codegree_brute(u, v));
        }
    }
    best
}

#[test]
fn criterion_01_polarity_generator() {
    let mut notes = Vec::new();
    let mut ok = true;
    let clock = Instant::now();
    for q in [2usize, 3, 4, 5, 7, 8, 11, 13] {
        let t = Instant::now();
        let g = polarity_graph(q).unwrap();
        let cd = max_codegree(&g);
        let dt = t.elapsed();
        let good = g.n() == q * q + q + 1 && g.edge_count() == q * (q + 1) * (q + 1) / 2 && cd <= 1 && dt < Duration::from_secs(1);
        ok &= good;
        notes.push(format!("q={q}: n={} e={} max codegree={cd} {dt:.2?}", g.n(), g.edge_count()));
    }
    verdict(1, "polarity generator", ok, clock.elapsed(), Duration::from_secs(8), &notes);
}

/// Vertex and edge sets written straight from the definitions, on integer
/// coordinates, with merged vertices identified before counting.
mod definitions {
    use std::collections::BTreeSet;

    pub type V = (usize, usize);

    pub fn count(vs: BTreeSet<V>, es: Vec<(V, V)>) -> (usize, usize) {
        let es: BTreeSet<(V, V)> = es.into_iter().filter(|(a, b)| a != b).map(|(a, b)| (a.min(b), a.max(b))).collect();
        assert!(es.iter().all(|(a, b)| vs.contains(a) && vs.contains(b)));
        (vs.len(), es.len())
    }

    pub fn grid(t: usize) -> (usize, usize) {
        let vs: BTreeSet<V> = (1..=t).flat_map(|i| (1..=t).map(move |j| (i, j))).collect();
        let mut es = Vec::new();
        for &a in &vs {
            for &b in &vs {
                let d = (a.0.abs_diff(b.0), a.1.abs_diff(b.1));
                if d == (1, 0) || d == (0, 1) {
                    es.push((a, b));
                }
            }
        }
        count(vs, es)
    }

    /// Cartesian product of a path or cycle on `m` vertices with an edge.
    pub fn ladder(m: usize, closed: bool) -> (usize, usize) {
        let vs: BTreeSet<V> = (1..=2).flat_map(|r| (1..=m).map(move |j| (r, j))).collect();
        let mut es = Vec::new();
        for &a in &vs {
            for &b in &vs {
                let dj = a.1.abs_diff(b.1);
                let along = a.0 == b.0 && (dj == 1 || (closed && dj == m - 1));
                if along || (a.1 == b.1 && a.0 != b.0) {
                    es.push((a, b));
                }
            }
        }
        count(vs, es)
    }

    pub fn quadrangulation(k: usize, ell: usize, torus: bool) -> (usize, usize) {
        let vs: BTreeSet<V> = (1..=k).flat_map(|i| (1..=ell).map(move |j| (i, j))).collect();
        let wrap = |i: usize, j: usize| ((i - 1) % k + 1, (j - 1) % ell + 1);
        let top = if torus { k } else { k - 1 };
        let mut es = Vec::new();
        for i in 1..=top {
            for j in 1..=ell {
                es.push((wrap(i, j), wrap(i + 1, j)));
                if i % 2 == 1 {
                    es.push((wrap(i, j + 1), wrap(i + 1, j)));
                } else {
                    es.push((wrap(i, j), wrap(i + 1, j + 1)));
                }
            }
        }
        count(vs, es)
    }

    pub fn honeycomb(k: usize, ell: usize) -> (usize, usize) {
        // u and v get coordinates outside the grid
        let x = |i: usize, j: usize| {
            if i == k && j % 2 == 1 {
                (0, 0)
            } else if i == 1 && j % 2 == 0 {
                (0, 1)
            } else {
                (i, j)
            }
        };
        let vs: BTreeSet<V> = (1..=k).flat_map(|i| (1..=ell).map(move |j| (i, j))).map(|(i, j)| x(i, j)).collect();
        let mut es = Vec::new();
        for i in 1..=k {
            for j in 1..ell {
                es.push((x(i, j), x(i, j + 1)));
            }
        }
        for i in 1..=k / 2 {
            for j in 1..=ell {
                if j % 2 == 1 {
                    es.push((x(2 * i - 1, j), x(2 * i, j)));
                } else {
                    es.push((x(2 * i, j), x(2 * i + 1, j)));
                }
            }
        }
        count(vs, es)
    }
}

#[test]
fn criterion_02_pattern_suite() {
    let mut cases: Vec<(PatternSpec, (usize, usize))> = Vec::new();
    for t in 1..=5 {
        cases.push((PatternSpec::Grid { t }, definitions::grid(t)));
        cases.push((PatternSpec::PrismPath { t }, definitions::ladder(t, false)));
    }
    for ell in 2..=6 {
        cases.push((PatternSpec::Prism { ell }, definitions::ladder(2 * ell, true)));
    }
    for k in 2..=5 {
        for ell in 2..=5 {
            cases.push((PatternSpec::Cylinder { k, ell }, definitions::quadrangulation(k, ell, false)));
        }
    }
    for k in [4, 6] {
        for ell in 2..=4 {
            cases.push((PatternSpec::Torus { k, ell }, definitions::quadrangulation(k, ell, true)));
        }
    }
    for (k, ell) in [(1, 2), (3, 2), (3, 4), (5, 4)] {
        cases.push((PatternSpec::Honeycomb { k, ell }, definitions::honeycomb(k, ell)));
    }
    let clock = Instant::now();
    let mut notes = Vec::new();
    let mut ok = true;
    for (spec, want) in &cases {
        let p = pattern(spec).unwrap();
        let got = (p.graph.n(), p.graph.edge_count());
        let shape = match spec {
            PatternSpec::Prism { .. } => p.graph.is_bipartite() && (0..p.graph.n()).all(|v| p.graph.degree(v) == 3),
            PatternSpec::Torus { .. } => (0..p.graph.n()).all(|v| p.graph.degree(v) == 4),
            _ => true,
        };
        if got != *want || !shape {
            ok = false;
            notes.push(format!("{spec:?}: got {got:?}, definition gives {want:?}, shape {shape}"));
        }
    }
    let h = pattern(&PatternSpec::Honeycomb { k: 3, ell: 4 }).unwrap().graph;
    let c6 = contains(&h, &cycle(6));
    ok &= c6 && (h.n(), h.edge_count()) == (10, 11);
    notes.push(format!("{} patterns checked; H(3,4) has {} vertices, {} edges, C6 found: {c6}", cases.len(), h.n(), h.edge_count()));
    verdict(2, "pattern suite", ok, clock.elapsed(), Duration::from_secs(5), &notes);
}

fn walks_brute(g: &Graph, k: usize) -> u64 {
    fn go(g: &Graph, v: usize, left: usize) -> u64 {
        if left == 0 {
            return 1;
        }
        g.neighbors(v).iter().map(|&u| go(g, u, left - 1)).sum()
    }
    if k == 0 {
        return 0;
    }
    (0..g.n()).map(|v| go(g, v, k - 1)).sum()
}

/// Labelled closed walks on distinct vertices, then divided by the `2m`
/// labellings of each cycle.
fn cycles_brute(g: &Graph, m: usize) -> u64 {
    fn go(g: &Graph, path: &mut Vec<usize>, m: usize, acc: &mut u64) {
        let last = *path.last().unwrap();
        if path.len() == m {
            if g.has_edge(last, path[0]) {
                *acc += 1;
            }
            return;
        }
        for &u in g.neighbors(last) {
            if !path.contains(&u) {
                path.push(u);
                go(g, path, m, acc);
                path.pop();
            }
        }
    }
    let mut acc = 0;
    for v in 0..g.n() {
        go(g, &mut vec![v], m, &mut acc);
    }
    acc / (2 * m as u64)
}

/// 4-cycles straight from 4-subsets: each subset spans up to three of them.
fn c4_by_subsets(g: &Graph) -> u64 {
    let n = g.n();
    let mut total = 0;
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    for [p, q, r, s] in [[a, b, c, d], [a, b, d, c], [a, c, b, d]] {
                        if g.has_edge(p, q) && g.has_edge(q, r) && g.has_edge(r, s) && g.has_edge(s, p) {
                            total += 1;
                        }
                    }
                }
            }
        }
    }
    total
}

#[test]
fn criterion_03_counting_equivalence() {
    let clock = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(303);
    let mut bad = Vec::new();
    for i in 0..200 {
        let n = rng.random_range(1..=10);
        let p = rng.random_range(0.1..0.9);
        let g = random_graph(n, p, 3000 + i, false);
        for k in 0..=6 {
            if hom_path_count(&g, k) != BigUint::from(walks_brute(&g, k)) {
                bad.push(format!("hom_path_count graph {i} k={k}"));
            }
        }
    }
    for i in 0..100 {
        let n = rng.random_range(4..=25);
        let p = rng.random_range(0.1..0.7);
        let g = random_graph(n, p, 4000 + i, i % 3 == 0);
        let (fast, slow) = (count_c4(&g), c4_by_subsets(&g));
        if fast != BigUint::from(slow) || BigUint::from(cycles_brute(&g, 4)) != fast {
            bad.push(format!("count_c4 graph {i}: {fast} vs {slow}"));
        }
    }
    for i in 0..50 {
        let n = rng.random_range(6..=14);
        let p = rng.random_range(0.2..0.6);
        let g = random_graph(n, p, 5000 + i, i % 2 == 0);
        let c = count_even_cycles(&g, 3, None);
        if c.truncated || c.count != BigUint::from(cycles_brute(&g, 6)) {
            bad.push(format!("count_even_cycles graph {i}"));
        }
    }
    let mut notes = vec!["200 walk graphs, 100 C4 graphs, 50 C6 graphs".to_string()];
    notes.extend(bad.iter().take(5).cloned());
    verdict(3, "counting equivalence", bad.is_empty(), clock.elapsed(), Duration::from_secs(60), &notes);
}

#[test]
fn criterion_04_path_inequality() {
    let clock = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(404);
    let mut violations = Vec::new();
    let mut checks = 0;
    for i in 0..500u64 {
        let n = rng.random_range(2..=40);
        let p = rng.random_range(0.02..1.0);
        let g = random_graph(n, p, 6000 + i, i % 4 == 0);
        for k in [2, 4, 6] {
            for l in 1..k {
                checks += 1;
                let r = check_path_inequality(&g, k, l).unwrap();
                if !r.holds {
                    violations.push(format!("graph {i} k={k} l={l}: {} < {}", r.lhs, r.rhs));
                }
            }
        }
    }
    let mut notes = vec![format!("{checks} inequality checks, {} violations", violations.len())];
    notes.extend(violations.iter().take(5).cloned());
    verdict(4, "path inequality", violations.is_empty(), clock.elapsed(), Duration::from_secs(30), &notes);
}

#[test]
fn criterion_05_collection_builders() {
    let clock = Instant::now();
    let mut notes = Vec::new();
    let mut ok = true;
    let mut check = |name: &str, g: &Graph, coll: &LabeledCollection, audit: &PruneAudit, seed: &LabeledCollection, alpha: usize, want: Option<usize>| {
        let v = verify_collection(coll, g, alpha);
        let replay = audit.replay(seed).map(|r| r == *coll).unwrap_or(false);
        let size = want.map_or(true, |w| coll.len() == w);
        ok &= v.ok && replay && size;
        notes.push(format!("{name}: {} members, verified {}, replay {replay}", coll.len(), v.ok));
    };

    let k6 = kn(6);
    let seed = rich_path_seed(&k6, 3, &SeedScope::Full, 1000).unwrap();
    let (c, a) = build_rich_paths(&k6, 3, 4, 1000).unwrap();
    check("K6 paths alpha=4", &k6, &c, &a, &seed, 4, Some(120));
    let (c, a) = build_rich_paths(&k6, 3, 5, 1000).unwrap();
    check("K6 paths alpha=5", &k6, &c, &a, &seed, 5, Some(0));
    let e = Graph::empty(6);
    let (c, a) = build_rich_paths(&e, 3, 1, 1000).unwrap();
    check("edgeless paths", &e, &c, &a, &rich_path_seed(&e, 3, &SeedScope::Full, 1000).unwrap(), 1, Some(0));

    let pg = polarity_graph(3).unwrap();
    let (c, a) = build_rich_cycles(&pg, 2, 1, 1000).unwrap();
    check("polarity(3) C4 alpha=1", &pg, &c, &a, &rich_cycle_seed(&pg, 2, &SeedScope::Full, 1000).unwrap(), 1, Some(0));
    let k44 = kab(4, 4);
    let (c, a) = build_rich_cycles(&k44, 2, 2, 1000).unwrap();
    let k44_nonempty = !c.is_empty();
    check("K4,4 C4 alpha=2", &k44, &c, &a, &rich_cycle_seed(&k44, 2, &SeedScope::Full, 1000).unwrap(), 2, None);
    let c6 = cycle(6);
    let (c, a) = build_rich_cycles(&c6, 3, 2, 1000).unwrap();
    check("C6 cycles alpha=2", &c6, &c, &a, &rich_cycle_seed(&c6, 3, &SeedScope::Full, 1000).unwrap(), 2, Some(0));

    let k88 = kab(8, 8);
    let r = build_good_paths(&k88, 1, 2, 16.0, 256.0, 1_000_000).unwrap();
    let k88_case1 = r.case == 1 && !r.collection.is_empty();
    let seed = good_path_seed(&k88, 1, 16.0, &r.decision, &SeedScope::Full, 1_000_000).unwrap();
    check("K8,8 good paths C=16", &k88, &r.collection, &r.audit, &seed, 2, None);
    // below the C6 codegrees the apex construction runs and finds no seed
    for (name, g, c) in [("edgeless good paths", Graph::empty(6), 2.0), ("C6 good paths alpha=2", cycle(6), 0.5)] {
        let r = build_good_paths(&g, 1, 2, c, 256.0, 1000).unwrap();
        let seed = good_path_seed(&g, 1, c, &r.decision, &SeedScope::Full, 1000).unwrap();
        check(name, &g, &r.collection, &r.audit, &seed, 2, Some(0));
    }
    notes.push(format!("K4,4 cycles non-empty {k44_nonempty}, K8,8 good paths case 1 non-empty {k88_case1}"));
    ok &= k44_nonempty && k88_case1;
    verdict(5, "collection builders", ok, clock.elapsed(), Duration::from_secs(10), &notes);
}

#[derive(Default)]
struct Tally {
    runs: usize,
    found: usize,
    invalid: usize,
    bad_failures: Vec<String>,
    time: Duration,
}

impl Tally {
    fn record(&mut self, host: &Graph, what: String, clock: Instant, r: Result<EmbeddingCertificate, Error>) {
        self.time += clock.elapsed();
        self.runs += 1;
        match r {
            Ok(cert) => {
                if verify_certificate(host, &cert).ok {
                    self.found += 1;
                } else {
                    self.invalid += 1;
                }
            }
            Err(e) => {
                if Status::of_error(&e).exit_code() != 3 {
                    self.bad_failures.push(format!("{what}: {e}"));
                }
            }
        }
    }

    fn ok(&self) -> bool {
        self.invalid == 0 && self.bad_failures.is_empty() && self.found * 10 >= self.runs * 9
    }
}

const CYLINDERS: [(usize, usize); 6] = [(2, 2), (3, 2), (4, 2), (2, 3), (3, 3), (4, 3)];

/// Seeds are confined to a dense corner of the host: layered chains for
/// paths, a dense bipartite block for cycles. Any subcollection is a legal
/// seed, so this changes cost, not soundness.
fn grid_run(g: &Graph, t: usize) -> Result<EmbeddingCertificate, Error> {
    let (a, b) = anchors(g, |_| false);
    let w = if t == 4 { 18 } else { 12 };
    let layers = chain(g, a, b, 2 * t - 3, w, |_, _| true);
    let (c, _) = build_rich_paths_in(g, 2 * t - 1, t * t, 100_000_000, &SeedScope::Layered { layers })?;
    embed_grid(&c, g, t)
}

fn cylinder_block(k: usize, ell: usize) -> usize {
    match ell {
        2 => 12,
        3 if k <= 3 => 13,
        3 => 14,
        _ => 11,
    }
}

fn honeycomb_run(g: &Graph) -> Result<EmbeddingCertificate, Error> {
    let c = g.average_degree().sqrt();
    let l = default_l(g, 3);
    let apex = decide_case(g, c, l).apex.ok_or_else(|| Error::NotFound("no cherries".into()))?;
    let mut nb = g.neighbors(apex).to_vec();
    nb.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    if nb.len() < 2 {
        return Err(Error::NotFound("apex degree below 2".into()));
    }
    let (a, b) = (nb[0], nb[1]);
    let layers = chain(g, a, b, 5, 13, |pos, v| v != apex && (pos % 2 == 1 || g.has_edge(apex, v)));
    // built at 6 for speed, then certified at the embedder's 12
    let r = build_good_paths_in(g, 3, 6, c, l, 100_000_000, &SeedScope::Layered { layers })?;
    let spine = restrict_last(&r.collection, b)?.certify(g, 12)?;
    embed_honeycomb(&spine, g, 3, 4)
}

#[test]
fn criterion_06_embedder_soundness() {
    let clock = Instant::now();
    let names = ["embed_grid", "embed_cylinder", "embed_torus", "embed_honeycomb", "find_prism_path", "find_prism"];
    let mut tallies: Vec<Tally> = names.iter().map(|_| Tally::default()).collect();
    let mut degree_ok = true;
    for i in 0..50 {
        let g = dense_host(i);
        let d = g.average_degree();
        degree_ok &= d >= 6.0 * (g.n() as f64).sqrt() && (200..=600).contains(&g.n());

        let t = 2 + i % 3;
        let c = Instant::now();
        tallies[0].record(&g, format!("host {i} grid t={t}"), c, grid_run(&g, t));

        // 8-cycle seeds are costly: one host only
        let (k, ell) = if i == 0 { (2, 4) } else { CYLINDERS[(i - 1) % CYLINDERS.len()] };
        let c = Instant::now();
        let block = SeedScope::Within { vertices: dense_block(&g, cylinder_block(k, ell)) };
        let r = build_rich_cycles_in(&g, ell, k * ell, 100_000_000, &block).and_then(|(coll, _)| embed_cylinder(&coll, &g, k, ell));
        tallies[1].record(&g, format!("host {i} cylinder {k},{ell}"), c, r);

        let c = Instant::now();
        let block = SeedScope::Within { vertices: dense_block(&g, 12) };
        let r = build_rich_cycles_in(&g, 2, 8, 100_000_000, &block).and_then(|(coll, _)| embed_torus(&coll, &g, 4, 2, 10_000_000, i as u64));
        tallies[2].record(&g, format!("host {i} torus"), c, r);

        let c = Instant::now();
        tallies[3].record(&g, format!("host {i} honeycomb"), c, honeycomb_run(&g));

        for t in 1..=5 {
            let c = Instant::now();
            tallies[4].record(&g, format!("host {i} prism path t={t}"), c, find_prism_path_auto(&g, t).map(|x| x.0));
        }

        let c = Instant::now();
        tallies[5].record(&g, format!("host {i} prism"), c, find_prism(&g, 4, 8.0, 10_000_000, i as u64).map(|x| x.0));
    }
    let mut notes = vec![format!("hosts n=200..592, degree condition holds: {degree_ok}")];
    for (name, t) in names.iter().zip(&tallies) {
        notes.push(format!(
            "{name}: {}/{} found, {} invalid, {} failures not exit 3, {:.1?}",
            t.found,
            t.runs,
            t.invalid,
            t.bad_failures.len(),
            t.time
        ));
        notes.extend(t.bad_failures.iter().take(3).cloned());
    }
    let ok = degree_ok && tallies.iter().all(Tally::ok);
    verdict(6, "embedder soundness", ok, clock.elapsed(), Duration::from_secs(600), &notes);
}

#[test]
fn criterion_07_negative_controls() {
    let clock = Instant::now();
    let mut notes = Vec::new();
    let mut ok = true;
    for q in [2usize, 3, 4, 5, 7, 8, 9, 11, 13] {
        let g = polarity_graph(q).unwrap();
        let prism = find_prism(&g, 4, 8.0, 10_000_000, q as u64);
        let prism_ok = matches!(&prism, Err(e) if Status::of_error(e) == Status::NotFound);
        let (coll, _) = build_rich_cycles(&g, 2, 4, 100_000_000).unwrap();
        let cyl = embed_cylinder(&coll, &g, 2, 2);
        let cyl_ok = coll.is_empty() && matches!(&cyl, Err(e) if Status::of_error(e) == Status::NotFound);
        ok &= prism_ok && cyl_ok;
        notes.push(format!("q={q}: prism not found {prism_ok}, cylinder collection empty and not found {cyl_ok}"));
    }
    verdict(7, "negative controls", ok, clock.elapsed(), Duration::from_secs(30), &notes);
}

#[test]
fn criterion_08_ladder_contract() {
    let clock = Instant::now();
    let mut notes = Vec::new();
    let mut ok = true;
    for m in [10, 20, 40] {
        let g = kab(m, m);
        let x: VertexSet = (0..m).collect();
        let y: VertexSet = (m..2 * m).collect();
        for t in 1..=5 {
            match find_prism_path(&g, &x, &y, t) {
                Ok((cert, rep)) => {
                    let good = verify_certificate(&g, &cert).ok && rep.residue_invariant && rep.residue_edges > 0;
                    ok &= good;
                    notes.push(format!(
                        "K{m},{m} t={t}: found, residue {} edges, threshold {:.2}, invariant {}, hypotheses {}",
                        rep.residue_edges, rep.residue_threshold, rep.residue_invariant, rep.hypotheses_hold
                    ));
                }
                Err(e) => {
                    ok = false;
                    notes.push(format!("K{m},{m} t={t}: {e}"));
                }
            }
        }
    }
    verdict(8, "ladder contract", ok, clock.elapsed(), Duration::from_secs(10), &notes);
}

#[test]
fn criterion_09_exhaustive_extremal() {
    let clock = Instant::now();
    let c4 = cycle(4);
    let mut notes = Vec::new();
    let mut ok = true;
    let mut prev = 0;
    for n in 3..=7usize {
        let r = max_edges_exhaustive(n, &c4).unwrap();
        let bound = ((n as f64 / 4.0) * (1.0 + ((4 * n - 3) as f64).sqrt())).floor() as usize;
        let witness_ok = r.witness.edge_count() == r.max_edges && r.witness.n() == n && !contains(&r.witness, &c4);
        ok &= r.max_edges >= prev && r.max_edges <= bound && witness_ok;
        prev = r.max_edges;
        notes.push(format!("ex({n}, C4) = {} (bound {bound}), witness C4-free {witness_ok}", r.max_edges));
        if n == 3 {
            ok &= r.max_edges == 3;
        }
        if n == 4 {
            ok &= r.max_edges == 4;
        }
    }
    verdict(9, "exhaustive extremal numbers", ok, clock.elapsed(), Duration::from_secs(300), &notes);
}

const DETERMINISM_CONFIGS: [&str; 6] = [
    r#"{"host":{"source":"gnp","n":40,"p":0.9,"bipartite":true},"target":{"kind":"cylinder","k":3,"ell":2},"builder":{"alpha":6},"seed":2}"#,
    r#"{"host":{"source":"gnp","n":40,"p":0.9,"bipartite":true},"target":{"kind":"torus","k":4,"ell":2},"builder":{"alpha":8},"seed":5}"#,
    r#"{"host":{"source":"gnp","n":30,"p":0.8},"transforms":[{"op":"half"},{"op":"peel"}],"target":{"kind":"grid","t":2},"builder":{"alpha":4},"seed":7}"#,
    r#"{"host":{"source":"gnp","n":150,"p":0.4,"bipartite":true},"target":{"kind":"prism","ell":4},"seed":11}"#,
    r#"{"host":{"source":"gnp","n":120,"p":0.5,"bipartite":true},"target":{"kind":"prism_path","t":4},"seed":13}"#,
    r#"{"host":{"source":"polarity","q":7},"target":{"kind":"even_cycle","ell":3},"seed":17}"#,
];

#[test]
fn criterion_10_determinism() {
    let clock = Instant::now();
    let mut notes = Vec::new();
    let mut ok = true;
    for json in DETERMINISM_CONFIGS {
        let cfg: PipelineConfig = serde_json::from_str(json).unwrap();
        let mut outputs = BTreeSet::new();
        let mut status = None;
        for threads in [1, 4, 8] {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
            let report = pool.install(|| run_pipeline(&cfg));
            let cert = serde_json::to_string(&report.certificate).unwrap();
            status = Some(report.status);
            outputs.insert((report.to_json(), cert));
        }
        ok &= outputs.len() == 1;
        notes.push(format!("{:?} -> {:?}, {} distinct outputs", cfg.target, status.unwrap(), outputs.len()));
    }
    verdict(10, "determinism across thread counts", ok, clock.elapsed(), Duration::from_secs(120), &notes);
}
