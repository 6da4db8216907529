//! Canonical codes for graphs on at most 11 vertices.

/// Adjacency as bit rows, `adj[v] >> w & 1`.
pub(crate) type Rows = Vec<u16>;

/// Colour refinement from degrees; colours are ranks of the sorted
/// signatures, so they are invariant under relabelling.
fn refine(adj: &Rows) -> Vec<usize> {
    let n = adj.len();
    let mut col: Vec<usize> = adj.iter().map(|r| r.count_ones() as usize).collect();
    loop {
        let sig: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut s: Vec<usize> = (0..n).filter(|&w| adj[v] >> w & 1 == 1).map(|w| col[w]).collect();
                s.sort_unstable();
                (col[v], s)
            })
            .collect();
        let mut distinct = sig.clone();
        distinct.sort();
        distinct.dedup();
        let next: Vec<usize> = sig.iter().map(|s| distinct.binary_search(s).unwrap()).collect();
        let classes = |c: &[usize]| {
            let mut d = c.to_vec();
            d.sort_unstable();
            d.dedup();
            d.len()
        };
        if classes(&next) == classes(&col) {
            return next;
        }
        col = next;
    }
}

struct Best {
    code: u64,
    perm: Vec<usize>,
}

/// Smallest upper-triangle code over orderings that list colour classes in
/// order. Bit rows are appended as positions are filled, so a prefix that
/// already exceeds the best is cut.
fn descend(adj: &Rows, slots: &[usize], col: &[usize], perm: &mut Vec<usize>, used: &mut [bool], code: u64, best: &mut Option<Best>) {
    let n = adj.len();
    let i = perm.len();
    if i == n {
        if best.as_ref().map_or(true, |b| code < b.code) {
            *best = Some(Best { code, perm: perm.clone() });
        }
        return;
    }
    let remaining: u32 = ((i + 1)..n).map(|j| j as u32).sum();
    for v in 0..n {
        if used[v] || col[v] != slots[i] {
            continue;
        }
        let mut row = 0u64;
        for &u in perm.iter() {
            row = row << 1 | (adj[u] >> v & 1) as u64;
        }
        let next = code << i | row;
        if let Some(b) = best {
            if next > b.code >> remaining {
                continue;
            }
        }
        used[v] = true;
        perm.push(v);
        descend(adj, slots, col, perm, used, next, best);
        perm.pop();
        used[v] = false;
    }
}

/// Canonical code and the relabelled rows it was read from.
pub(crate) fn canonical(adj: &Rows) -> (u64, Rows) {
    let n = adj.len();
    assert!(n <= 11, "canonical codes are for tiny graphs");
    let col = refine(adj);
    let mut slots = col.clone();
    slots.sort_unstable();
    let mut best = None;
    descend(adj, &slots, &col, &mut Vec::new(), &mut vec![false; n], 0, &mut best);
    let b = best.expect("some ordering exists");
    let mut pos = vec![0; n];
    for (i, &v) in b.perm.iter().enumerate() {
        pos[v] = i;
    }
    let mut rows = vec![0u16; n];
    for v in 0..n {
        for w in 0..n {
            if adj[v] >> w & 1 == 1 {
                rows[pos[v]] |= 1 << pos[w];
            }
        }
    }
    (b.code, rows)
}

/// Isomorphism-invariant code of a graph on at most 11 vertices, together
/// with its order.
pub fn canonical_code(g: &crate::Graph) -> (usize, u64) {
    let adj: Rows = (0..g.n()).map(|v| g.neighbors(v).iter().fold(0u16, |r, &w| r | 1 << w)).collect();
    (g.n(), canonical(&adj).0)
}
