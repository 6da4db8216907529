use super::Field;
use crate::error::Result;
use crate::graph::Graph;

/// Index of a normalised point of PG(2,q) in lexicographic order:
/// (0,0,1), then (0,1,*), then (1,*,*).
fn point_id(q: usize, p: [usize; 3]) -> usize {
    match p {
        [0, 0, _] => 0,
        [0, _, b] => 1 + b,
        [_, a, b] => 1 + q + a * q + b,
    }
}

pub fn points(q: usize) -> Vec<[usize; 3]> {
    let mut pts = vec![[0, 0, 1]];
    pts.extend((0..q).map(|b| [0, 1, b]));
    for a in 0..q {
        pts.extend((0..q).map(|b| [1, a, b]));
    }
    pts
}

/// Orthogonal-polarity graph of PG(2,q): points x ~ y iff x.y = 0, x != y.
pub fn polarity_graph(q: usize) -> Result<Graph> {
    let f = Field::new(q)?;
    let pts = points(q);
    let mut edges = Vec::new();
    for (i, x) in pts.iter().enumerate() {
        // points y on the line x^perp, one per normalised form
        let mut line = Vec::with_capacity(q + 1);
        if x[2] == 0 {
            line.push([0, 0, 1]);
        }
        // (0,1,b): x1 + x2 b = 0
        if x[2] != 0 {
            let b = f.mul(f.neg(x[1]), f.inv(x[2]).unwrap());
            line.push([0, 1, b]);
        } else if x[1] == 0 {
            line.extend((0..q).map(|b| [0, 1, b]));
        }
        // (1,a,b): x0 + x1 a + x2 b = 0
        for a in 0..q {
            let s = f.add(x[0], f.mul(x[1], a));
            if x[2] != 0 {
                let b = f.mul(f.neg(s), f.inv(x[2]).unwrap());
                line.push([1, a, b]);
            } else if s == 0 {
                line.extend((0..q).map(|b| [1, a, b]));
            }
        }
        for y in line {
            let j = point_id(q, y);
            if j > i {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(pts.len(), edges)
}
