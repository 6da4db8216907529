//! Pattern graphs (grids, prisms, ladders, cylinders, tori, honeycombs,
//! even cycles) and host graphs (polarity graphs, seeded random graphs).

mod field;
mod polarity;
mod random;

pub use field::Field;
pub use polarity::polarity_graph;
pub use random::random_graph;

use crate::error::{input, Result};
use crate::graph::Graph;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;

/// Target pattern with its defining parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PatternSpec {
    Grid { t: usize },
    Prism { ell: usize },
    PrismPath { t: usize },
    Cylinder { k: usize, ell: usize },
    Torus { k: usize, ell: usize },
    Honeycomb { k: usize, ell: usize },
    EvenCycle { ell: usize },
}

impl PatternSpec {
    pub fn validate(&self) -> Result<()> {
        use PatternSpec::*;
        let ok = match *self {
            Grid { t } => t >= 1,
            Prism { ell } => ell >= 2,
            PrismPath { t } => t >= 1,
            Cylinder { k, ell } => k >= 2 && ell >= 2,
            Torus { k, ell } => k >= 4 && k % 2 == 0 && ell >= 2,
            Honeycomb { k, ell } => k % 2 == 1 && ell >= 2 && ell % 2 == 0,
            EvenCycle { ell } => ell >= 2,
        };
        if ok {
            Ok(())
        } else {
            input(format!("{self} violates its defining constraints"))
        }
    }

    /// Vertex count after identifications.
    pub fn vertex_count(&self) -> usize {
        use PatternSpec::*;
        match *self {
            Grid { t } => t * t,
            Prism { ell } => 4 * ell,
            PrismPath { t } => 2 * t,
            Cylinder { k, ell } | Torus { k, ell } => k * ell,
            Honeycomb { k, ell } => k * ell - ell + 2,
            EvenCycle { ell } => 2 * ell,
        }
    }
}

impl fmt::Display for PatternSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use PatternSpec::*;
        match *self {
            Grid { t } => write!(f, "grid(t={t})"),
            Prism { ell } => write!(f, "prism(ell={ell})"),
            PrismPath { t } => write!(f, "prism_path(t={t})"),
            Cylinder { k, ell } => write!(f, "cylinder(k={k}, ell={ell})"),
            Torus { k, ell } => write!(f, "torus(k={k}, ell={ell})"),
            Honeycomb { k, ell } => write!(f, "honeycomb(k={k}, ell={ell})"),
            EvenCycle { ell } => write!(f, "even_cycle(ell={ell})"),
        }
    }
}

/// A pattern graph together with its canonical labels, one per vertex id.
#[derive(Clone, Debug)]
pub struct Pattern {
    pub graph: Graph,
    pub labels: Vec<String>,
}

impl Pattern {
    pub fn id_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn label_map(&self) -> HashMap<&str, usize> {
        self.labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect()
    }
}

pub fn label(i: usize, j: usize) -> String {
    format!("{i},{j}")
}

/// Accumulates labelled vertices and edges; merged vertices share a label.
struct Builder {
    ids: HashMap<String, usize>,
    labels: Vec<String>,
    edges: Vec<(usize, usize)>,
}

impl Builder {
    fn new() -> Self {
        Builder { ids: HashMap::new(), labels: Vec::new(), edges: Vec::new() }
    }

    fn vertex(&mut self, name: String) -> usize {
        if let Some(&id) = self.ids.get(&name) {
            return id;
        }
        let id = self.labels.len();
        self.ids.insert(name.clone(), id);
        self.labels.push(name);
        id
    }

    fn edge(&mut self, a: String, b: String) {
        let (a, b) = (self.vertex(a), self.vertex(b));
        self.edges.push((a, b));
    }

    fn finish(self) -> Pattern {
        let graph = Graph::from_edges(self.labels.len(), self.edges).expect("pattern edges are well formed");
        Pattern { graph, labels: self.labels }
    }
}

/// Builds the pattern exactly as defined, with 1-based `"i,j"` labels.
pub fn pattern(spec: &PatternSpec) -> Result<Pattern> {
    spec.validate()?;
    let mut b = Builder::new();
    match *spec {
        PatternSpec::Grid { t } => {
            for i in 1..=t {
                for j in 1..=t {
                    b.vertex(label(i, j));
                }
            }
            for i in 1..=t {
                for j in 1..=t {
                    if j < t {
                        b.edge(label(i, j), label(i, j + 1));
                    }
                    if i < t {
                        b.edge(label(i, j), label(i + 1, j));
                    }
                }
            }
        }
        PatternSpec::Prism { ell } => {
            let m = 2 * ell;
            for r in 1..=2 {
                for j in 1..=m {
                    b.vertex(label(r, j));
                }
            }
            for r in 1..=2 {
                for j in 1..=m {
                    b.edge(label(r, j), label(r, j % m + 1));
                }
            }
            for j in 1..=m {
                b.edge(label(1, j), label(2, j));
            }
        }
        PatternSpec::PrismPath { t } => {
            for r in 1..=2 {
                for j in 1..=t {
                    b.vertex(label(r, j));
                }
            }
            for j in 1..=t {
                b.edge(label(1, j), label(2, j));
                if j < t {
                    b.edge(label(1, j), label(1, j + 1));
                    b.edge(label(2, j), label(2, j + 1));
                }
            }
        }
        PatternSpec::Cylinder { k, ell } | PatternSpec::Torus { k, ell } => {
            let torus = matches!(spec, PatternSpec::Torus { .. });
            for i in 1..=k {
                for j in 1..=ell {
                    b.vertex(label(i, j));
                }
            }
            let rows = if torus { k } else { k - 1 };
            for i in 1..=rows {
                let next = i % k + 1;
                for j in 1..=ell {
                    let jn = j % ell + 1;
                    b.edge(label(i, j), label(next, j));
                    if i % 2 == 1 {
                        b.edge(label(i, jn), label(next, j));
                    } else {
                        b.edge(label(i, j), label(next, jn));
                    }
                }
            }
        }
        PatternSpec::Honeycomb { k, ell } => {
            let name = |i: usize, j: usize| -> String {
                if i == k && j % 2 == 1 {
                    "u".to_string()
                } else if i == 1 && j % 2 == 0 {
                    "v".to_string()
                } else {
                    label(i, j)
                }
            };
            for i in 1..=k {
                for j in 1..=ell {
                    b.vertex(name(i, j));
                }
            }
            for i in 1..=k {
                for j in 1..ell {
                    b.edge(name(i, j), name(i, j + 1));
                }
            }
            for i in 1..=k / 2 {
                for j in 1..=ell {
                    if j % 2 == 1 {
                        b.edge(name(2 * i - 1, j), name(2 * i, j));
                    } else {
                        b.edge(name(2 * i, j), name(2 * i + 1, j));
                    }
                }
            }
        }
        PatternSpec::EvenCycle { ell } => {
            let m = 2 * ell;
            for j in 1..=m {
                b.vertex(j.to_string());
            }
            for j in 1..=m {
                b.edge(j.to_string(), (j % m + 1).to_string());
            }
        }
    }
    Ok(b.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counts(spec: PatternSpec) -> (usize, usize) {
        let p = pattern(&spec).unwrap();
        (p.graph.n(), p.graph.edge_count())
    }

    #[test]
    fn pattern_examples() {
        assert_eq!(counts(PatternSpec::Prism { ell: 4 }), (16, 24));
        assert_eq!(counts(PatternSpec::Cylinder { k: 2, ell: 3 }), (6, 6));
        assert_eq!(counts(PatternSpec::Honeycomb { k: 3, ell: 4 }), (10, 11));
        assert_eq!(counts(PatternSpec::Grid { t: 3 }), (9, 12));
        assert_eq!(counts(PatternSpec::Torus { k: 4, ell: 3 }), (12, 24));
    }

    #[test]
    fn cylinder_two_rows_is_a_cycle() {
        let p = pattern(&PatternSpec::Cylinder { k: 2, ell: 3 }).unwrap();
        assert!((0..6).all(|v| p.graph.degree(v) == 2));
        assert_eq!(crate::counting::count_even_cycles(&p.graph, 3, None).count, 1u32.into());
    }

    #[test]
    fn torus_with_two_columns_is_complete_bipartite() {
        let p = pattern(&PatternSpec::Torus { k: 4, ell: 2 }).unwrap();
        assert_eq!(p.graph.edge_count(), 16);
        assert!((0..8).all(|v| p.graph.degree(v) == 4));
        assert!(p.graph.is_bipartite());
    }

    #[test]
    fn invalid_parameters() {
        assert!(pattern(&PatternSpec::Torus { k: 5, ell: 2 }).is_err());
        assert!(pattern(&PatternSpec::Honeycomb { k: 2, ell: 4 }).is_err());
        assert!(pattern(&PatternSpec::Honeycomb { k: 3, ell: 3 }).is_err());
        assert!(pattern(&PatternSpec::Grid { t: 0 }).is_err());
        assert!(pattern(&PatternSpec::Prism { ell: 1 }).is_err());
    }

    #[test]
    fn honeycomb_single_row_is_an_edge() {
        let p = pattern(&PatternSpec::Honeycomb { k: 1, ell: 4 }).unwrap();
        assert_eq!(p.labels, vec!["u", "v"]);
        assert_eq!(p.graph.edge_count(), 1);
    }

    #[test]
    fn pattern_spec_serde_shape() {
        let s = serde_json::to_string(&PatternSpec::Cylinder { k: 3, ell: 2 }).unwrap();
        assert_eq!(s, r#"{"kind":"cylinder","k":3,"ell":2}"#);
        let back: PatternSpec = serde_json::from_str(r#"{"kind":"prism_path","t":4}"#).unwrap();
        assert_eq!(back, PatternSpec::PrismPath { t: 4 });
    }
}
