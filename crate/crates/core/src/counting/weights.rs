use super::rich::is_rich_tuple;
use crate::graph::Graph;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::HashMap;

const MAX_SAMPLES: usize = 16;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WeightSample {
    pub xs: Vec<usize>,
    pub ys: Vec<usize>,
    pub weight: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WeightReport {
    pub ell: usize,
    pub d_ref: f64,
    pub c0: f64,
    /// `c0 * sqrt(d_ref)`
    pub threshold: f64,
    pub total_weight: f64,
    pub nice_weight: f64,
    pub nice: u64,
    pub high_codegree_a: u64,
    pub high_codegree_b: u64,
    pub rich_tuple: u64,
    pub copies_enumerated: u64,
    pub truncated: bool,
    pub samples: Vec<WeightSample>,
}

#[derive(Default)]
struct Tally {
    copies: u64,
    total: f64,
    nice_w: f64,
    nice: u64,
    a: u64,
    b: u64,
    c: u64,
    samples: Vec<WeightSample>,
}

struct Ctx<'a> {
    g: &'a Graph,
    ell: usize,
    floor: f64,
    threshold: f64,
}

impl Ctx<'_> {
    fn weight(&self, xs: &[usize], ys: &[usize]) -> f64 {
        let mut w = 1.0;
        for i in 1..=self.ell {
            w /= (self.g.codegree(xs[i - 1], ys[i]) as f64).max(self.floor);
        }
        w
    }

    fn classify(&self, xs: &[usize], ys: &[usize], memo: &mut HashMap<[usize; 4], bool>) -> u8 {
        let g = self.g;
        if (1..=self.ell).any(|i| g.codegree(xs[i - 1], ys[i]) as f64 > self.threshold) {
            return 1;
        }
        if (1..=self.ell).any(|i| g.codegree(xs[i], ys[i - 1]) as f64 > self.threshold) {
            return 2;
        }
        for j in 1..self.ell {
            let key = [xs[j - 1], ys[j - 1], xs[j + 1], ys[j + 1]];
            let rich = *memo.entry(key).or_insert_with(|| {
                is_rich_tuple(g, key[0], key[1], key[2], key[3], self.ell).map(|r| r.rich).unwrap_or(false)
            });
            if rich {
                return 3;
            }
        }
        0
    }

    /// All labelled copies with `x_0 = root`, at most `limit` of them.
    fn from_root(&self, root: usize, limit: u64) -> Tally {
        let mut t = Tally::default();
        let mut memo = HashMap::new();
        let mut used = vec![false; self.g.n()];
        let mut xs = vec![root];
        let mut ys = Vec::new();
        used[root] = true;
        for &y0 in self.g.neighbors(root) {
            used[y0] = true;
            ys.push(y0);
            self.extend(&mut xs, &mut ys, &mut used, &mut t, &mut memo, limit);
            ys.pop();
            used[y0] = false;
            if t.copies >= limit {
                break;
            }
        }
        t
    }

    fn extend(
        &self,
        xs: &mut Vec<usize>,
        ys: &mut Vec<usize>,
        used: &mut [bool],
        t: &mut Tally,
        memo: &mut HashMap<[usize; 4], bool>,
        limit: u64,
    ) {
        if t.copies >= limit {
            return;
        }
        if xs.len() == self.ell + 1 {
            let w = self.weight(xs, ys);
            t.copies += 1;
            t.total += w;
            match self.classify(xs, ys, memo) {
                0 => {
                    t.nice += 1;
                    t.nice_w += w;
                }
                1 => t.a += 1,
                2 => t.b += 1,
                _ => t.c += 1,
            }
            if t.samples.len() < MAX_SAMPLES {
                t.samples.push(WeightSample { xs: xs.clone(), ys: ys.clone(), weight: w });
            }
            return;
        }
        let (xp, yp) = (*xs.last().unwrap(), *ys.last().unwrap());
        for &x in self.g.neighbors(xp) {
            if used[x] {
                continue;
            }
            used[x] = true;
            xs.push(x);
            for &y in self.g.neighbors(yp) {
                if used[y] || !self.g.has_edge(x, y) {
                    continue;
                }
                used[y] = true;
                ys.push(y);
                self.extend(xs, ys, used, t, memo, limit);
                ys.pop();
                used[y] = false;
                if t.copies >= limit {
                    break;
                }
            }
            xs.pop();
            used[x] = false;
            if t.copies >= limit {
                return;
            }
        }
    }
}

/// Weighted census of labelled `P_{ell+1}` ladders `x_0..x_ell`, `y_0..y_ell`.
/// Each copy weighs `1 / prod max(d(x_{i-1}, y_i), d^2/n)` with `d` the
/// average degree of `g`, and is tallied as nice or by its first failure.
/// At most `cap` copies are visited; per-root sums merge in root order.
pub fn prism_path_weight_report(g: &Graph, ell: usize, c0: f64, cap: u64) -> WeightReport {
    assert!(ell >= 2, "ladder needs ell >= 2");
    let d = g.average_degree();
    let n = g.live_count().max(1) as f64;
    let ctx = Ctx { g, ell, floor: d * d / n, threshold: c0 * d.sqrt() };
    let limit = cap.saturating_add(1);
    let roots: Vec<Tally> = (0..g.n()).into_par_iter().map(|r| ctx.from_root(r, limit)).collect();
    let mut out = WeightReport {
        ell,
        d_ref: d,
        c0,
        threshold: ctx.threshold,
        total_weight: 0.0,
        nice_weight: 0.0,
        nice: 0,
        high_codegree_a: 0,
        high_codegree_b: 0,
        rich_tuple: 0,
        copies_enumerated: 0,
        truncated: false,
        samples: Vec::new(),
    };
    for (r, mut t) in roots.into_iter().enumerate() {
        let left = cap - out.copies_enumerated;
        if t.copies > left {
            // redo this root with the exact remaining budget
            t = ctx.from_root(r, left);
            out.truncated = true;
        }
        out.copies_enumerated += t.copies;
        out.total_weight += t.total;
        out.nice_weight += t.nice_w;
        out.nice += t.nice;
        out.high_codegree_a += t.a;
        out.high_codegree_b += t.b;
        out.rich_tuple += t.c;
        for s in t.samples {
            if out.samples.len() < MAX_SAMPLES {
                out.samples.push(s);
            }
        }
        if out.truncated {
            break;
        }
    }
    out
}
