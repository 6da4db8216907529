//! Randomised depth-first search for a closed walk of nodes whose host
//! vertex sets are pairwise disjoint. Nodes are implicit: the caller supplies
//! neighbourhoods, the closing test and each node's host vertices.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

pub(crate) struct Found<N> {
    pub cycle: Vec<N>,
    pub restart: usize,
}

pub(crate) struct Outcome<N> {
    pub found: Option<Found<N>>,
    /// candidate evaluations summed over the restarts that ran
    pub work: u64,
}

pub(crate) trait Space: Sync {
    type Node: Copy + Send + Sync;
    fn neighbors(&self, n: &Self::Node, out: &mut Vec<Self::Node>);
    fn closes(&self, last: &Self::Node, first: &Self::Node) -> bool;
    fn vertices(&self, n: &Self::Node, out: &mut Vec<usize>);
}

/// Restart `r` draws its start and orderings from `seed + r` and gets
/// `budget / restarts` work. Restarts run in parallel; the lowest index that
/// succeeds wins, so the answer does not depend on the thread count.
pub(crate) fn disjoint_cycle<S: Space>(
    space: &S,
    starts: &[S::Node],
    len: usize,
    n_vertices: usize,
    budget: u64,
    restarts: usize,
    seed: u64,
) -> Outcome<S::Node> {
    assert!(len >= 2 && restarts >= 1);
    if starts.is_empty() {
        return Outcome { found: None, work: 0 };
    }
    let share = (budget / restarts as u64).max(1);
    let runs: Vec<(Option<Vec<S::Node>>, u64)> = (0..restarts)
        .into_par_iter()
        .map(|r| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(r as u64));
            let start = starts[rng.random_range(0..starts.len())];
            attempt(space, start, len, n_vertices, share, &mut rng)
        })
        .collect();
    let mut work = 0;
    for (r, (cycle, w)) in runs.into_iter().enumerate() {
        work += w;
        if let Some(cycle) = cycle {
            return Outcome { found: Some(Found { cycle, restart: r }), work };
        }
    }
    Outcome { found: None, work }
}

fn attempt<S: Space>(
    space: &S,
    start: S::Node,
    len: usize,
    n_vertices: usize,
    budget: u64,
    rng: &mut ChaCha8Rng,
) -> (Option<Vec<S::Node>>, u64) {
    let mut used = vec![0u32; n_vertices];
    let mut buf = Vec::new();
    let mark = |n: &S::Node, used: &mut [u32], delta: i32, buf: &mut Vec<usize>| {
        buf.clear();
        space.vertices(n, buf);
        for &v in buf.iter() {
            used[v] = (used[v] as i32 + delta) as u32;
        }
    };
    let free = |n: &S::Node, used: &[u32], buf: &mut Vec<usize>| {
        buf.clear();
        space.vertices(n, buf);
        buf.iter().all(|&v| used[v] == 0)
    };
    mark(&start, &mut used, 1, &mut buf);
    let mut path = vec![start];
    let mut stack: Vec<Vec<S::Node>> = Vec::new();
    let mut work = 0u64;
    let expand = |last: &S::Node, rng: &mut ChaCha8Rng, work: &mut u64| {
        let mut c = Vec::new();
        space.neighbors(last, &mut c);
        *work += c.len() as u64 + 1;
        c.shuffle(rng);
        c
    };
    stack.push(expand(&start, rng, &mut work));
    while let Some(frame) = stack.last_mut() {
        if work > budget {
            return (None, work);
        }
        let Some(next) = frame.pop() else {
            stack.pop();
            if let Some(n) = path.pop() {
                mark(&n, &mut used, -1, &mut buf);
            }
            continue;
        };
        work += 1;
        if !free(&next, &used, &mut buf) {
            continue;
        }
        if path.len() + 1 == len {
            if space.closes(&next, &path[0]) {
                path.push(next);
                return (Some(path), work);
            }
            continue;
        }
        mark(&next, &mut used, 1, &mut buf);
        path.push(next);
        let c = expand(&next, rng, &mut work);
        stack.push(c);
    }
    (None, work)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Vertices of a host graph as nodes of size one.
    struct Plain(Vec<Vec<usize>>);

    impl Space for Plain {
        type Node = usize;
        fn neighbors(&self, n: &usize, out: &mut Vec<usize>) {
            out.extend_from_slice(&self.0[*n]);
        }
        fn closes(&self, a: &usize, b: &usize) -> bool {
            self.0[*a].contains(b)
        }
        fn vertices(&self, n: &usize, out: &mut Vec<usize>) {
            out.push(*n);
        }
    }

    #[test]
    fn finds_cycles_of_each_length() {
        let k6: Vec<Vec<usize>> = (0..6).map(|u| (0..6).filter(|&v| v != u).collect()).collect();
        let s = Plain(k6.clone());
        for len in 3..=6 {
            let out = disjoint_cycle(&s, &[0, 1, 2], len, 6, 10_000, 4, 9);
            let c = out.found.unwrap().cycle;
            assert_eq!(c.len(), len);
            let mut d = c.clone();
            d.sort_unstable();
            d.dedup();
            assert_eq!(d.len(), len);
        }
        assert!(disjoint_cycle(&s, &[0], 7, 6, 100_000, 2, 1).found.is_none());
    }

    #[test]
    fn deterministic_across_pools() {
        let adj: Vec<Vec<usize>> = (0..40).map(|u| (0..40).filter(|&v| (u + v) % 3 != 0 && u != v).collect()).collect();
        let s = Plain(adj);
        let starts: Vec<usize> = (0..40).collect();
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| disjoint_cycle(&s, &starts, 8, 40, 100_000, 16, 5).found.map(|f| (f.cycle, f.restart)))
        };
        assert_eq!(run(1), run(4));
    }
}
