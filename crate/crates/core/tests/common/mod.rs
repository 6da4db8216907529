#![allow(dead_code)]

use turan_forge::generators::random_graph;
use turan_forge::{Graph, VertexSet};

pub fn kab(a: usize, b: usize) -> Graph {
    Graph::from_edges(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)))).unwrap()
}

pub fn kn(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
}

pub fn cycle(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
}

/// Host `i` of the dense seeded family: bipartite G(n, 0.9) with
/// `n = 200 + 8i`.
pub fn dense_host(i: usize) -> Graph {
    random_graph(200 + 8 * i, 0.9, 1000 + i as u64, true)
}

fn sides(g: &Graph) -> Vec<u8> {
    g.two_coloring().expect("bipartite host")
}

fn top(cands: impl Iterator<Item = usize>, w: usize, score: impl Fn(usize) -> (usize, usize)) -> Vec<usize> {
    let mut c: Vec<usize> = cands.collect();
    c.sort_by(|&a, &b| score(b).cmp(&score(a)).then(a.cmp(&b)));
    c.truncate(w);
    c.sort_unstable();
    c
}

fn links(g: &Graph, v: usize, set: &[usize]) -> usize {
    set.iter().filter(|&&u| g.has_edge(u, v)).count()
}

/// Layers `{a}, L1, .., Lm, {b}` of width `w`, grown from both ends towards
/// the middle, each layer the `w` allowed vertices best linked to the layer
/// before it. `allowed(pos, v)` restricts position `pos` (0 is `a`).
pub fn chain(g: &Graph, a: usize, b: usize, m: usize, w: usize, allowed: impl Fn(usize, usize) -> bool) -> Vec<VertexSet> {
    let side = sides(g);
    let mut used = vec![false; g.n()];
    used[a] = true;
    used[b] = true;
    let mut layers: Vec<Option<Vec<usize>>> = vec![None; m + 2];
    layers[0] = Some(vec![a]);
    layers[m + 1] = Some(vec![b]);
    let (mut lo, mut hi) = (1, m);
    let mut from_left = true;
    while lo <= hi {
        let pos = if from_left { lo } else { hi };
        let want = if pos % 2 == 1 { 1 - side[a] } else { side[a] };
        let left = layers[pos - 1].clone();
        let right = layers[pos + 1].clone();
        let pick = top(
            (0..g.n()).filter(|&v| !used[v] && side[v] == want && g.degree(v) > 0 && allowed(pos, v)),
            w,
            |v| {
                let l = left.as_ref().map_or(0, |s| links(g, v, s));
                let r = right.as_ref().map_or(0, |s| links(g, v, s));
                match (&left, &right) {
                    (Some(_), Some(_)) => (l.min(r), l + r),
                    _ => (l + r, g.degree(v)),
                }
            },
        );
        for &v in &pick {
            used[v] = true;
        }
        layers[pos] = Some(pick);
        if from_left {
            lo += 1;
        } else {
            hi -= 1;
        }
        from_left = !from_left;
    }
    let mut layers: Vec<Vec<usize>> = layers.into_iter().map(Option::unwrap).collect();
    for _ in 0..3 {
        for pos in 1..=m {
            for &v in &layers[pos] {
                used[v] = false;
            }
            let want = if pos % 2 == 1 { 1 - side[a] } else { side[a] };
            let (left, right) = (&layers[pos - 1], &layers[pos + 1]);
            let pick = top(
                (0..g.n()).filter(|&v| !used[v] && side[v] == want && g.degree(v) > 0 && allowed(pos, v)),
                w,
                |v| {
                    let (l, r) = (links(g, v, left), links(g, v, right));
                    (l.min(r), l + r)
                },
            );
            for &v in &pick {
                used[v] = true;
            }
            layers[pos] = pick;
        }
    }
    layers.into_iter().map(|l| l.into_iter().collect()).collect()
}

/// `s` vertices on each side, alternately re-chosen as the best linked to
/// the other side.
pub fn dense_block(g: &Graph, s: usize) -> VertexSet {
    let side = sides(g);
    let mut a: Vec<usize> = top((0..g.n()).filter(|&v| side[v] == 0), s, |v| (g.degree(v), 0));
    let mut b = Vec::new();
    for _ in 0..3 {
        b = top((0..g.n()).filter(|&v| side[v] == 1), s, |v| (links(g, v, &a), g.degree(v)));
        a = top((0..g.n()).filter(|&v| side[v] == 0), s, |v| (links(g, v, &b), g.degree(v)));
    }
    a.into_iter().chain(b).collect()
}

/// The two highest-degree vertices of side 0 other than `skip`.
pub fn anchors(g: &Graph, skip: impl Fn(usize) -> bool) -> (usize, usize) {
    let side = sides(g);
    let t = top((0..g.n()).filter(|&v| side[v] == 0 && !skip(v)), 2, |v| (g.degree(v), 0));
    (t[0], t[1])
}
