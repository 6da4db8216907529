//! Shifting embedders driven by rich and good collections, the ladder
//! finder built on a two-type deletion process, and the prism search.

mod cylinder;
mod grid;
mod honeycomb;
mod prism;
mod prism_path;
mod search;
mod torus;

pub use cylinder::embed_cylinder;
pub use grid::embed_grid;
pub use honeycomb::{embed_honeycomb, honeycomb_schedule};
pub use prism::{find_prism, PrismReport};
pub use prism_path::{find_prism_path, find_prism_path_auto, LadderReport};
pub use torus::embed_torus;

use crate::error::{Error, Result};
use crate::generators::{pattern, Pattern, PatternSpec};
use crate::graph::Graph;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Either a named pattern or an explicit graph labelled `"0".."n-1"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PatternRef {
    Spec(PatternSpec),
    Explicit { n: usize, edges: Vec<(usize, usize)> },
}

impl PatternRef {
    pub fn build(&self) -> Result<Pattern> {
        match self {
            PatternRef::Spec(s) => pattern(s),
            PatternRef::Explicit { n, edges } => Ok(Pattern {
                graph: Graph::from_edges(*n, edges.iter().copied())?,
                labels: (0..*n).map(|i| i.to_string()).collect(),
            }),
        }
    }

    pub fn explicit(g: &Graph) -> PatternRef {
        PatternRef::Explicit { n: g.n(), edges: g.edges().collect() }
    }
}

/// Which procedure produced a certificate and with what parameters.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub embedder: String,
    #[serde(default)]
    pub params: BTreeMap<String, serde_json::Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl Provenance {
    pub fn new(embedder: &str) -> Self {
        Provenance { embedder: embedder.into(), ..Default::default() }
    }

    pub fn param(mut self, key: &str, value: impl Serialize) -> Self {
        self.params.insert(key.into(), serde_json::to_value(value).expect("plain parameter"));
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EmbeddingCertificate {
    pub pattern: PatternRef,
    /// pattern label and host vertex, in pattern vertex order
    pub mapping: Vec<(String, usize)>,
    pub method: Provenance,
}

impl EmbeddingCertificate {
    pub fn host_vertex(&self, label: &str) -> Option<usize> {
        self.mapping.iter().find(|(l, _)| l == label).map(|&(_, v)| v)
    }
}

/// Packs an assignment into a certificate and refuses to return one the
/// oracle rejects.
pub(crate) fn seal(
    host: &Graph,
    pattern_ref: PatternRef,
    assign: impl Fn(&str) -> Option<usize>,
    method: Provenance,
) -> Result<EmbeddingCertificate> {
    let p = pattern_ref.build()?;
    let mut mapping = Vec::with_capacity(p.labels.len());
    for l in &p.labels {
        let v = assign(l).ok_or_else(|| Error::Integrity(format!("{} left pattern vertex {l} unassigned", method.embedder)))?;
        mapping.push((l.clone(), v));
    }
    let cert = EmbeddingCertificate { pattern: pattern_ref, mapping, method };
    let check = crate::oracle::verify_certificate(host, &cert);
    match check.violation {
        None => Ok(cert),
        Some(v) => Err(Error::Integrity(format!("{} produced an invalid certificate: {v}", cert.method.embedder))),
    }
}
