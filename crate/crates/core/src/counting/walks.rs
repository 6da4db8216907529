use crate::error::{input, Result};
use crate::graph::Graph;
use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

/// hom(P_k, G): walks with `k` vertices, by dynamic programming over the
/// number of walks ending at each vertex.
pub fn hom_path_count(g: &Graph, k: usize) -> BigUint {
    if k == 0 {
        return BigUint::zero();
    }
    let mut ends: Vec<BigUint> = (0..g.n()).map(|v| BigUint::from(g.is_live(v) as u8)).collect();
    for _ in 1..k {
        ends = (0..g.n())
            .map(|v| g.neighbors(v).iter().fold(BigUint::zero(), |acc, &u| acc + &ends[u]))
            .collect();
    }
    ends.iter().sum()
}

#[derive(Clone, Debug, Serialize)]
pub struct PathInequality {
    pub holds: bool,
    /// (hom(P_{k+1}) / n)^(1/k)
    pub lhs: f64,
    /// (hom(P_{l+1}) / n)^(1/l)
    pub rhs: f64,
    pub hom_k: String,
    pub hom_l: String,
}

fn ln_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits < 1000 {
        x.to_f64().unwrap().ln()
    } else {
        let shift = bits - 64;
        (x >> shift).to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
    }
}

/// Compares `(hom(P_{k+1})/n)^(1/k)` with `(hom(P_{l+1})/n)^(1/l)` exactly,
/// as `hom_k^l * n^k >= hom_l^k * n^l`.
pub fn check_path_inequality(g: &Graph, k: usize, l: usize) -> Result<PathInequality> {
    if k == 0 || k % 2 == 1 || l == 0 || l >= k {
        return input(format!("need k even and 1 <= l < k, got k={k}, l={l}"));
    }
    let n = BigUint::from(g.live_count());
    let hk = hom_path_count(g, k + 1);
    let hl = hom_path_count(g, l + 1);
    let holds = hk.pow(l as u32) * n.pow(k as u32) >= hl.pow(k as u32) * n.pow(l as u32);
    let value = |h: &BigUint, e: usize| {
        if h.is_zero() || n.is_zero() {
            0.0
        } else {
            ((ln_big(h) - ln_big(&n)) / e as f64).exp()
        }
    };
    Ok(PathInequality {
        holds,
        lhs: value(&hk, k),
        rhs: value(&hl, l),
        hom_k: hk.to_string(),
        hom_l: hl.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3() -> Graph {
        Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn examples() {
        let g = Graph::from_edges(5, [(0, 1)]).unwrap();
        assert_eq!(hom_path_count(&g, 1), 5u32.into());
        assert_eq!(hom_path_count(&k3(), 2), 6u32.into());
        assert_eq!(hom_path_count(&k3(), 3), 12u32.into());
    }

    #[test]
    fn inequality_examples() {
        let r = check_path_inequality(&k3(), 2, 1).unwrap();
        assert!(r.holds);
        assert!((r.lhs - 2.0).abs() < 1e-12 && (r.rhs - 2.0).abs() < 1e-12);
        let c4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let r = check_path_inequality(&c4, 2, 1).unwrap();
        assert!(r.holds && (r.lhs - r.rhs).abs() < 1e-12);
        assert!(check_path_inequality(&c4, 3, 1).is_err());
        assert!(check_path_inequality(&c4, 4, 4).is_err());
    }

    #[test]
    fn tombstones_are_not_walk_starts() {
        let g = k3().remove(&[2].into_iter().collect(), &[]).unwrap();
        assert_eq!(hom_path_count(&g, 1), 2u32.into());
        assert_eq!(hom_path_count(&g, 3), 2u32.into());
    }
}
