use crate::graph::Graph;
use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

/// Unlabelled C4 count, `1/2 * sum_{u<v} C(codeg(u,v), 2)`.
pub fn count_c4(g: &Graph) -> BigUint {
    let n = g.n();
    let per_root: Vec<u128> = (0..n)
        .into_par_iter()
        .map_init(
            || vec![0u64; n],
            |cnt, u| {
                let mut touched = Vec::new();
                for &w in g.neighbors(u) {
                    for &v in g.neighbors(w) {
                        if v > u {
                            if cnt[v] == 0 {
                                touched.push(v);
                            }
                            cnt[v] += 1;
                        }
                    }
                }
                let mut s = 0u128;
                for v in touched {
                    let c = cnt[v] as u128;
                    s += c * c.saturating_sub(1) / 2;
                    cnt[v] = 0;
                }
                s
            },
        )
        .collect();
    let total: BigUint = per_root.iter().map(|&s| BigUint::from(s)).sum();
    total / 2u32
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleCount {
    #[serde(serialize_with = "super::big_decimal")]
    pub count: BigUint,
    pub truncated: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleEnumeration {
    /// canonical vertex sequences: minimum vertex first, then its smaller
    /// cycle neighbour
    pub cycles: Vec<Vec<usize>>,
    pub truncated: bool,
}

/// Canonical-rooted DFS from `s`: every vertex after `s` is larger than `s`
/// and the second vertex is smaller than the last. Stops after `limit`
/// cycles.
fn cycles_from_root(g: &Graph, len: usize, s: usize, limit: u64, mut emit: impl FnMut(&[usize])) -> u64 {
    let mut path = vec![s];
    let mut on_path = vec![false; g.n()];
    on_path[s] = true;
    let mut found = 0u64;
    // next neighbour index to try, one entry per path vertex
    let mut cursor = vec![0usize];
    while let Some(&idx) = cursor.last() {
        if found >= limit {
            break;
        }
        let depth = path.len();
        let tail = *path.last().unwrap();
        if depth == len - 1 {
            // close through a neighbour of both tail and s
            for &x in g.neighbors(tail) {
                if x > s && !on_path[x] && x > path[1] && g.has_edge(x, s) {
                    path.push(x);
                    emit(&path);
                    path.pop();
                    found += 1;
                    if found >= limit {
                        break;
                    }
                }
            }
            cursor.pop();
            let v = path.pop().unwrap();
            on_path[v] = false;
            continue;
        }
        let nb = g.neighbors(tail);
        match nb[idx..].iter().position(|&x| x > s && !on_path[x]) {
            Some(off) => {
                let x = nb[idx + off];
                *cursor.last_mut().unwrap() = idx + off + 1;
                path.push(x);
                on_path[x] = true;
                cursor.push(0);
            }
            None => {
                cursor.pop();
                if path.len() > 1 {
                    let v = path.pop().unwrap();
                    on_path[v] = false;
                }
            }
        }
    }
    found
}

/// Number of unlabelled `2*ell`-cycles, counting at most `cap` of them.
/// `truncated` is set iff the true count exceeds `cap`.
pub fn count_even_cycles(g: &Graph, ell: usize, cap: Option<u64>) -> CycleCount {
    assert!(ell >= 2, "cycle length 2*ell needs ell >= 2");
    let limit = cap.map_or(u64::MAX, |c| c.saturating_add(1));
    let per_root: Vec<u64> =
        (0..g.n()).into_par_iter().map(|s| cycles_from_root(g, 2 * ell, s, limit, |_| {})).collect();
    let mut total = 0u64;
    for c in per_root {
        total = total.saturating_add(c);
    }
    match cap {
        Some(c) if total > c => CycleCount { count: BigUint::from(c), truncated: true },
        _ => CycleCount { count: BigUint::from(total), truncated: false },
    }
}

/// Canonical sequences of all `2*ell`-cycles in root order, at most `cap`.
pub fn enumerate_even_cycles(g: &Graph, ell: usize, cap: Option<u64>) -> CycleEnumeration {
    assert!(ell >= 2, "cycle length 2*ell needs ell >= 2");
    let limit = cap.map_or(u64::MAX, |c| c.saturating_add(1));
    let per_root: Vec<Vec<Vec<usize>>> = (0..g.n())
        .into_par_iter()
        .map(|s| {
            let mut out = Vec::new();
            cycles_from_root(g, 2 * ell, s, limit, |c| out.push(c.to_vec()));
            out
        })
        .collect();
    let mut cycles = Vec::new();
    let mut truncated = false;
    'outer: for root in per_root {
        for c in root {
            if cap.is_some_and(|cap| cycles.len() as u64 >= cap) {
                truncated = true;
                break 'outer;
            }
            cycles.push(c);
        }
    }
    CycleEnumeration { cycles, truncated }
}

#[derive(Clone, Debug, Serialize)]
pub struct C4Classification {
    pub threshold: f64,
    pub thin_count: u64,
    pub thick_count: u64,
    /// cycles as `[x, y, z, w]`: `x` minimal, `z` its diagonal, `y < w`
    pub thin: Vec<[usize; 4]>,
    pub thick: Vec<[usize; 4]>,
    pub truncated: bool,
}

/// Splits the 4-cycles into thin (both diagonal codegrees at most
/// `T * sqrt(d)`) and thick. Enumerates at most `cap` cycles.
pub fn classify_c4(g: &Graph, t: f64, cap: u64) -> C4Classification {
    let threshold = t * g.average_degree().sqrt();
    let n = g.n();
    let mut out = C4Classification {
        threshold,
        thin_count: 0,
        thick_count: 0,
        thin: Vec::new(),
        thick: Vec::new(),
        truncated: false,
    };
    let mut common: Vec<Vec<usize>> = vec![Vec::new(); n];
    'roots: for x in 0..n {
        let mut touched = Vec::new();
        for &m in g.neighbors(x) {
            if m <= x {
                continue;
            }
            for &z in g.neighbors(m) {
                if z > x {
                    if common[z].is_empty() {
                        touched.push(z);
                    }
                    common[z].push(m);
                }
            }
        }
        touched.sort_unstable();
        for &z in &touched {
            let mids = std::mem::take(&mut common[z]);
            if mids.len() < 2 || out.truncated {
                continue;
            }
            let dxz = g.codegree(x, z) as f64;
            'pairs: for i in 0..mids.len() {
                for j in i + 1..mids.len() {
                    if out.thin_count + out.thick_count >= cap {
                        out.truncated = true;
                        break 'pairs;
                    }
                    let (y, w) = (mids[i].min(mids[j]), mids[i].max(mids[j]));
                    let thin = dxz <= threshold && (g.codegree(y, w) as f64) <= threshold;
                    if thin {
                        out.thin_count += 1;
                        out.thin.push([x, y, z, w]);
                    } else {
                        out.thick_count += 1;
                        out.thick.push([x, y, z, w]);
                    }
                }
            }
        }
        if out.truncated {
            break 'roots;
        }
    }
    out
}
