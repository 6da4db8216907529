use super::{seal, EmbeddingCertificate, PatternRef, Provenance};
use crate::error::{input, Error, Result};
use crate::generators::{label, PatternSpec};
use crate::graph::{Graph, VertexSet};
use serde::Serialize;

const ATTACH_BUDGET: u64 = 2_000_000;
const MAX_PAIRS: usize = 100_000_000;

/// Diagnostics of the deletion process.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LadderReport {
    pub t: usize,
    pub x_size: usize,
    pub y_size: usize,
    pub edges: usize,
    /// `20 t`
    pub c: f64,
    /// `e(H) >= C |Y|`
    pub edge_bound: bool,
    /// `d(x) >= C |Y|^{1/2}` for all `x`
    pub degree_bound: bool,
    pub hypotheses_hold: bool,
    pub type1_deletions: usize,
    pub type2_deletions: usize,
    pub residue_edges: usize,
    /// `e(H) / (8 |Y|)`
    pub residue_threshold: f64,
    /// every residue edge `xy` has that many neighbours `z != x` of `y`
    /// with `d(x,z) >= 2t`
    pub residue_invariant: bool,
}

/// Residue of the deletion process on `X x Y`, in local indices.
struct Residue {
    nx: usize,
    adj: Vec<bool>,
    ny_list: Vec<Vec<u32>>,
    cd: Vec<u32>,
}

impl Residue {
    fn has(&self, x: usize, y: usize) -> bool {
        self.adj[x * self.ny_list.len() + y]
    }

    fn cd(&self, x: usize, z: usize) -> u32 {
        self.cd[x * self.nx + z]
    }

    fn drop_edge(&mut self, x: usize, y: usize) {
        let ny = self.ny_list.len();
        self.adj[x * ny + y] = false;
        self.ny_list[y].retain(|&z| z as usize != x);
        for &z in &self.ny_list[y] {
            let z = z as usize;
            self.cd[x * self.nx + z] -= 1;
            self.cd[z * self.nx + x] -= 1;
        }
    }

    /// Neighbours `z != x` of `y` with `d(x,z) >= 2t`.
    fn good(&self, x: usize, y: usize, t: usize) -> usize {
        self.ny_list[y].iter().filter(|&&z| z as usize != x && self.cd(x, z as usize) as usize >= 2 * t).count()
    }
}

/// Runs both deletion types to the fixpoint. Both conditions only get
/// easier to meet as the graph shrinks, so the fixpoint does not depend on
/// the order; type 2 edges are removed a pass at a time.
fn deletion_process(h: &Graph, xs: &[usize], ys: &[usize], t: usize) -> Result<(Residue, LadderReport)> {
    let (nx, ny) = (xs.len(), ys.len());
    if nx.saturating_mul(nx) > MAX_PAIRS || nx.saturating_mul(ny) > MAX_PAIRS {
        return Err(Error::Resource(format!("ladder search over {nx} x {ny} vertices")));
    }
    let mut xi = vec![usize::MAX; h.n()];
    for (i, &x) in xs.iter().enumerate() {
        xi[x] = i;
    }
    let mut r = Residue { nx, adj: vec![false; nx * ny], ny_list: vec![Vec::new(); ny], cd: vec![0; nx * nx] };
    let mut xdeg = vec![0usize; nx];
    for (j, &y) in ys.iter().enumerate() {
        for &x in h.neighbors(y) {
            if xi[x] != usize::MAX {
                r.adj[xi[x] * ny + j] = true;
                r.ny_list[j].push(xi[x] as u32);
                xdeg[xi[x]] += 1;
            }
        }
        let l = &r.ny_list[j];
        for (a, &p) in l.iter().enumerate() {
            for &q in &l[a + 1..] {
                r.cd[p as usize * nx + q as usize] += 1;
                r.cd[q as usize * nx + p as usize] += 1;
            }
        }
    }
    let e0: usize = xdeg.iter().sum();
    let c = 20.0 * t as f64;
    let edge_bound = e0 as f64 >= c * ny as f64;
    let degree_bound = xdeg.iter().all(|&d| d as f64 >= c * (ny as f64).sqrt());
    let thr1 = e0 as f64 / (4.0 * ny as f64);
    let thr2 = e0 as f64 / (8.0 * ny as f64);
    let (mut type1, mut type2) = (0, 0);
    loop {
        let mut changed = false;
        for j in 0..ny {
            let d = r.ny_list[j].len();
            if d >= 1 && d as f64 <= thr1 {
                while let Some(&x) = r.ny_list[j].last() {
                    r.drop_edge(x as usize, j);
                }
                type1 += 1;
                changed = true;
            }
        }
        if changed {
            continue;
        }
        let mut doomed = Vec::new();
        for j in 0..ny {
            for &x in &r.ny_list[j] {
                if (r.good(x as usize, j, t) as f64) < thr2 {
                    doomed.push((x as usize, j));
                }
            }
        }
        if doomed.is_empty() {
            break;
        }
        type2 += doomed.len();
        for (x, j) in doomed {
            r.drop_edge(x, j);
        }
    }
    let residue_edges: usize = r.ny_list.iter().map(Vec::len).sum();
    let residue_invariant =
        (0..ny).all(|j| r.ny_list[j].iter().all(|&x| r.good(x as usize, j, t) as f64 >= thr2));
    let report = LadderReport {
        t,
        x_size: nx,
        y_size: ny,
        edges: e0,
        c,
        edge_bound,
        degree_bound,
        hypotheses_hold: e0 > 0 && edge_bound && degree_bound,
        type1_deletions: type1,
        type2_deletions: type2,
        residue_edges,
        residue_threshold: thr2,
        residue_invariant,
    };
    Ok((r, report))
}

/// Attaches 4-cycles one at a time from a residue edge, backtracking when a
/// choice runs out of fresh vertices. Returns the two rails in local indices,
/// tagged with their side (`true` for `X`).
fn attach(r: &Residue, t: usize, budget: &mut u64) -> Option<[Vec<(bool, usize)>; 2]> {
    let ny = r.ny_list.len();
    let mut x_nb: Vec<Vec<usize>> = vec![Vec::new(); r.nx];
    for j in 0..ny {
        for &x in &r.ny_list[j] {
            x_nb[x as usize].push(j);
        }
    }
    for j in 0..ny {
        let mut xs: Vec<u32> = r.ny_list[j].clone();
        xs.sort_unstable();
        for x in xs {
            let mut used_x = vec![false; r.nx];
            let mut used_y = vec![false; ny];
            used_x[x as usize] = true;
            used_y[j] = true;
            let mut rungs = vec![(x as usize, j)];
            if extend(r, &x_nb, t, &mut rungs, &mut used_x, &mut used_y, budget) {
                let mut rails = [Vec::new(), Vec::new()];
                for (i, &(a, b)) in rungs.iter().enumerate() {
                    // rung i has its X end on rail 1 when i is even
                    let (r1, r2) = if i % 2 == 0 { ((true, a), (false, b)) } else { ((false, b), (true, a)) };
                    rails[0].push(r1);
                    rails[1].push(r2);
                }
                return Some(rails);
            }
            if *budget == 0 {
                return None;
            }
        }
    }
    None
}

fn extend(
    r: &Residue,
    x_nb: &[Vec<usize>],
    t: usize,
    rungs: &mut Vec<(usize, usize)>,
    used_x: &mut [bool],
    used_y: &mut [bool],
    budget: &mut u64,
) -> bool {
    if rungs.len() == t {
        return true;
    }
    let (x, y) = *rungs.last().unwrap();
    let mut zs: Vec<usize> = r.ny_list[y]
        .iter()
        .map(|&z| z as usize)
        .filter(|&z| !used_x[z] && r.cd(x, z) as usize >= 2 * t)
        .collect();
    zs.sort_unstable();
    for z in zs {
        for &w in &x_nb[x] {
            if *budget == 0 {
                return false;
            }
            *budget -= 1;
            if used_y[w] || !r.has(z, w) {
                continue;
            }
            used_x[z] = true;
            used_y[w] = true;
            rungs.push((z, w));
            if extend(r, x_nb, t, rungs, used_x, used_y, budget) {
                return true;
            }
            rungs.pop();
            used_x[z] = false;
            used_y[w] = false;
        }
    }
    false
}

/// Ladder with rails in host ids; rail 1 starts in `X` and alternates.
pub(crate) fn ladder(h: &Graph, x: &VertexSet, y: &VertexSet, t: usize) -> Result<(Vec<usize>, Vec<usize>, LadderReport)> {
    if t == 0 {
        return input("ladder length must be positive");
    }
    let xs: Vec<usize> = x.iter().collect();
    let ys: Vec<usize> = y.iter().collect();
    if xs.iter().chain(&ys).any(|&v| v >= h.n()) {
        return input("part contains a vertex outside the host");
    }
    if xs.iter().any(|&v| y.contains(v)) {
        return input("parts X and Y overlap");
    }
    let (res, report) = deletion_process(h, &xs, &ys, t)?;
    if !report.residue_invariant {
        return Err(Error::Integrity("deletion residue violates its defining property".into()));
    }
    if report.residue_edges == 0 {
        if report.hypotheses_hold {
            return Err(Error::Integrity("residue is empty although the hypotheses hold".into()));
        }
        return Err(Error::NotFound(format!(
            "deletion process removed every edge ({} type 1, {} type 2)",
            report.type1_deletions, report.type2_deletions
        )));
    }
    let mut budget = ATTACH_BUDGET;
    match attach(&res, t, &mut budget) {
        Some([a, b]) => {
            let host = |(in_x, i): (bool, usize)| if in_x { xs[i] } else { ys[i] };
            Ok((a.into_iter().map(host).collect(), b.into_iter().map(host).collect(), report))
        }
        None => Err(Error::NotFound(format!(
            "residue has {} edges but no ladder of length {t} was attached",
            report.residue_edges
        ))),
    }
}

/// Finds `P_t` times an edge in the bipartite graph between `x` and `y`.
/// Edges of `h` not between the parts are ignored.
pub fn find_prism_path(h: &Graph, x: &VertexSet, y: &VertexSet, t: usize) -> Result<(EmbeddingCertificate, LadderReport)> {
    let (r1, r2, report) = ladder(h, x, y, t)?;
    let method = Provenance::new("find_prism_path")
        .param("t", t)
        .param("x_size", report.x_size)
        .param("y_size", report.y_size)
        .param("hypotheses_hold", report.hypotheses_hold);
    let cert = seal(
        h,
        PatternRef::Spec(PatternSpec::PrismPath { t }),
        |l| {
            let (r, j) = l.split_once(',')?;
            let (r, j): (usize, usize) = (r.parse().ok()?, j.parse().ok()?);
            let rail = if r == 1 { &r1 } else { &r2 };
            (label(r, j) == l).then(|| rail.get(j - 1).copied()).flatten()
        },
        method,
    )?;
    Ok((cert, report))
}

/// Two-colours `g` and tries the larger side as `Y` first, then the other.
pub fn find_prism_path_auto(g: &Graph, t: usize) -> Result<(EmbeddingCertificate, LadderReport)> {
    let Some(side) = g.two_coloring() else {
        return input("ladder search needs a bipartite host");
    };
    let part = |c: u8| -> VertexSet { g.live_vertices().filter(|&v| side[v] == c && g.degree(v) > 0).collect() };
    let (p0, p1) = (part(0), part(1));
    let (big, small) = if p1.len() >= p0.len() { (p1, p0) } else { (p0, p1) };
    match find_prism_path(g, &small, &big, t) {
        Err(Error::NotFound(first)) => find_prism_path(g, &big, &small, t).map_err(|e| match e {
            Error::NotFound(second) => Error::NotFound(format!("{first}; with sides swapped: {second}")),
            e => e,
        }),
        r => r,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kab(a: usize, b: usize) -> Graph {
        Graph::from_edges(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)))).unwrap()
    }

    fn parts(a: usize, b: usize) -> (VertexSet, VertexSet) {
        ((0..a).collect(), (a..a + b).collect())
    }

    #[test]
    fn complete_bipartite() {
        let g = kab(10, 10);
        let (x, y) = parts(10, 10);
        let (cert, rep) = find_prism_path(&g, &x, &y, 2).unwrap();
        assert_eq!(cert.mapping.len(), 4);
        assert!(!rep.hypotheses_hold && rep.residue_invariant);
        assert_eq!((rep.type1_deletions, rep.type2_deletions, rep.residue_edges), (0, 0, 100));
        let g = kab(20, 20);
        let (x, y) = parts(20, 20);
        let (cert, _) = find_prism_path(&g, &x, &y, 3).unwrap();
        assert_eq!(cert.mapping.len(), 6);
        assert_eq!(cert.host_vertex("1,1").map(|v| v < 20), Some(true));
    }

    #[test]
    fn matching_has_no_ladder() {
        let g = Graph::from_edges(8, (0..4).map(|i| (i, i + 4))).unwrap();
        let (x, y) = parts(4, 4);
        assert!(matches!(find_prism_path(&g, &x, &y, 2), Err(Error::NotFound(_))));
        assert!(matches!(find_prism_path_auto(&g, 2), Err(Error::NotFound(_))));
    }

    #[test]
    fn hypotheses_on_a_large_complete_bipartite() {
        // e = 30*1000 >= 20*1000 and d(x) = 1000 >= 20*sqrt(1000)
        let g = kab(30, 1000);
        let (x, y) = parts(30, 1000);
        let (_, rep) = find_prism_path(&g, &x, &y, 1).unwrap();
        assert!(rep.hypotheses_hold);
        assert!(find_prism_path_auto(&g, 4).is_ok());
    }

    #[test]
    fn overlapping_parts_are_rejected() {
        let g = kab(3, 3);
        let x: VertexSet = (0..4).collect();
        let y: VertexSet = (3..6).collect();
        assert!(matches!(find_prism_path(&g, &x, &y, 2), Err(Error::Input(_))));
    }
}
