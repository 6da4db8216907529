//! End-to-end runs: generate a host, transform it, build the collection the
//! target needs, embed, verify, and report everything as one JSON document.

use crate::collections::{
    build_good_paths_in, build_rich_cycles_in, build_rich_paths_in, default_l, restrict_last, CaseDecision,
    CollectionKind, LabeledCollection, SeedScope,
};
use crate::embedders::{
    embed_cylinder, embed_grid, embed_honeycomb, embed_torus, find_prism, find_prism_path_auto, EmbeddingCertificate,
};
use crate::error::{input, Error, Result};
use crate::generators::{pattern, polarity_graph, random_graph, PatternSpec};
use crate::graph::{read_edge_list, Graph};
use crate::oracle::{find_pattern, verify_certificate};
use crate::transforms::{
    almost_regular_subgraph, bipartite_half, clean_subgraph, peel_min_degree, CleanMode, GraphStats, TransformReport,
};
use serde::{Deserialize, Serialize};
use std::path::PathBuf;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "snake_case")]
pub enum HostSource {
    Gnp {
        n: usize,
        p: f64,
        #[serde(default)]
        bipartite: bool,
    },
    Polarity {
        q: usize,
    },
    Pattern {
        spec: PatternSpec,
    },
    File {
        path: PathBuf,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum TransformStep {
    Peel,
    Half,
    AlmostRegular { epsilon: f64, c: f64, k: f64 },
    Clean {
        #[serde(default)]
        mode: CleanMode,
    },
}

fn default_cap() -> u64 {
    100_000_000
}

fn default_budget() -> u64 {
    10_000_000
}

fn default_t() -> f64 {
    8.0
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BuilderParams {
    /// threshold the deletion process runs at
    #[serde(default)]
    pub alpha: usize,
    /// re-verify the result at this parameter before embedding
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certify: Option<usize>,
    /// codegree cut for good paths; defaults to the square root of the
    /// average degree
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l: Option<f64>,
    #[serde(default = "default_cap")]
    pub cap: u64,
    #[serde(default)]
    pub scope: SeedScope,
}

impl Default for BuilderParams {
    fn default() -> Self {
        BuilderParams { alpha: 0, certify: None, c: None, l: None, cap: default_cap(), scope: SeedScope::Full }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EmbedderParams {
    #[serde(default = "default_budget")]
    pub budget: u64,
    /// thin/thick threshold factor for prisms
    #[serde(default = "default_t", rename = "T")]
    pub t: f64,
}

impl Default for EmbedderParams {
    fn default() -> Self {
        EmbedderParams { budget: default_budget(), t: default_t() }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Outputs {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PipelineConfig {
    pub host: HostSource,
    #[serde(default)]
    pub transforms: Vec<TransformStep>,
    pub target: PatternSpec,
    #[serde(default)]
    pub builder: BuilderParams,
    #[serde(default)]
    pub embedder: EmbedderParams,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub outputs: Outputs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Found,
    NotFound,
    InputError,
    IntegrityError,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Found => 0,
            Status::InputError => 1,
            Status::IntegrityError => 2,
            Status::NotFound => 3,
        }
    }

    /// Resource limits count as not found: the search gave up honestly.
    pub fn of_error(e: &Error) -> Status {
        match e {
            Error::Input(_) | Error::Io(_) => Status::InputError,
            Error::Integrity(_) => Status::IntegrityError,
            Error::NotFound(_) | Error::Resource(_) => Status::NotFound,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CollectionSummary {
    pub kind: CollectionKind,
    pub length: usize,
    pub alpha: usize,
    pub seed_size: usize,
    pub members: usize,
    pub prune_steps: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decision: Option<CaseDecision>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PipelineReport {
    pub config: PipelineConfig,
    pub status: Status,
    pub exit_code: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub host: Option<GraphStats>,
    pub transforms: Vec<TransformReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub collection: Option<CollectionSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub embedding: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<EmbeddingCertificate>,
}

impl PipelineReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }
}

fn load_host(src: &HostSource, seed: u64) -> Result<Graph> {
    match src {
        HostSource::Gnp { n, p, bipartite } => {
            if !(0.0..=1.0).contains(p) {
                return input("p must lie in [0, 1]");
            }
            Ok(random_graph(*n, *p, seed, *bipartite))
        }
        HostSource::Polarity { q } => polarity_graph(*q),
        HostSource::Pattern { spec } => Ok(pattern(spec)?.graph),
        HostSource::File { path } => read_edge_list(std::io::BufReader::new(std::fs::File::open(path)?)),
    }
}

fn apply(g: &Graph, step: &TransformStep) -> Result<(Graph, TransformReport)> {
    let (h, mut rep) = match *step {
        TransformStep::Peel => peel_min_degree(g)?,
        TransformStep::Half => {
            let (h, _, r) = bipartite_half(g);
            (h, r)
        }
        TransformStep::AlmostRegular { epsilon, c, k } => almost_regular_subgraph(g, epsilon, c, k)?,
        TransformStep::Clean { mode } => clean_subgraph(g, mode),
    };
    // audits can be as large as the host; the step count stays
    rep.audit = None;
    Ok((h, rep))
}

fn param(v: &usize, name: &str) -> Result<usize> {
    if *v == 0 {
        return input(format!("builder.{name} must be positive for this target"));
    }
    Ok(*v)
}

/// Keeps the members ending at the most common last vertex.
fn spine(coll: &LabeledCollection) -> Result<LabeledCollection> {
    let mut counts = std::collections::BTreeMap::new();
    for m in coll.iter() {
        *counts.entry(*m.last().unwrap()).or_insert(0usize) += 1;
    }
    let Some((&v, _)) = counts.iter().max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(a.0))) else {
        return Err(Error::NotFound("empty good-path collection".into()));
    };
    restrict_last(coll, v)
}

struct Stages {
    report: PipelineReport,
}

impl Stages {
    fn run(&mut self, cfg: &PipelineConfig) -> Result<EmbeddingCertificate> {
        cfg.target.validate()?;
        let mut g = load_host(&cfg.host, cfg.seed)?;
        self.report.host = Some(GraphStats::of(&g));
        for step in &cfg.transforms {
            let (h, rep) = apply(&g, step)?;
            self.report.transforms.push(rep);
            g = h;
        }
        let b = &cfg.builder;
        let mut summarise = |c: &LabeledCollection, seed_size: usize, steps: usize, decision: Option<CaseDecision>| {
            self.report.collection = Some(CollectionSummary {
                kind: c.kind,
                length: c.length,
                alpha: c.alpha,
                seed_size,
                members: c.len(),
                prune_steps: steps,
                decision,
            });
        };
        let certify = |c: LabeledCollection| match b.certify {
            Some(a) if !c.is_empty() => c.certify(&g, a),
            _ => Ok(c),
        };
        let e = &cfg.embedder;
        let cert = match cfg.target {
            PatternSpec::Grid { t } => {
                let (c, audit) = build_rich_paths_in(&g, (2 * t - 1).max(3), param(&b.alpha, "alpha")?, b.cap, &b.scope)?;
                summarise(&c, audit.seed_size, audit.steps.len(), None);
                embed_grid(&certify(c)?, &g, t)?
            }
            PatternSpec::Cylinder { k, ell } | PatternSpec::Torus { k, ell } => {
                let (c, audit) = build_rich_cycles_in(&g, ell, param(&b.alpha, "alpha")?, b.cap, &b.scope)?;
                summarise(&c, audit.seed_size, audit.steps.len(), None);
                let c = certify(c)?;
                if matches!(cfg.target, PatternSpec::Torus { .. }) {
                    embed_torus(&c, &g, k, ell, e.budget, cfg.seed)?
                } else {
                    embed_cylinder(&c, &g, k, ell)?
                }
            }
            PatternSpec::Honeycomb { k, ell } => {
                let c = b.c.unwrap_or_else(|| g.average_degree().sqrt());
                let l = b.l.unwrap_or_else(|| default_l(&g, k));
                let r = build_good_paths_in(&g, k, param(&b.alpha, "alpha")?, c, l, b.cap, &b.scope)?;
                summarise(&r.collection, r.audit.seed_size, r.audit.steps.len(), Some(r.decision.clone()));
                let p = spine(&r.collection)?;
                embed_honeycomb(&certify(p)?, &g, k, ell)?
            }
            PatternSpec::Prism { ell } => {
                let (cert, rep) = find_prism(&g, ell, e.t, e.budget, cfg.seed)?;
                self.report.embedding = Some(serde_json::to_value(rep).expect("report serialises"));
                cert
            }
            PatternSpec::PrismPath { t } => {
                let (cert, rep) = find_prism_path_auto(&g, t)?;
                self.report.embedding = Some(serde_json::to_value(rep).expect("report serialises"));
                cert
            }
            PatternSpec::EvenCycle { .. } => {
                let s = find_pattern(&g, &cfg.target, e.budget)?;
                self.report.embedding = Some(serde_json::to_value(&s.stats).expect("stats serialise"));
                s.certificate.ok_or_else(|| Error::NotFound(format!("oracle search ended {:?}", s.stats.outcome)))?
            }
        };
        let check = verify_certificate(&g, &cert);
        if let Some(v) = check.violation {
            return Err(Error::Integrity(format!("certificate failed verification: {v}")));
        }
        Ok(cert)
    }
}

/// Runs every stage and never fails: errors become the report's status.
/// Output files named in the config are written afterwards.
pub fn run_pipeline(cfg: &PipelineConfig) -> PipelineReport {
    let mut st = Stages {
        report: PipelineReport {
            config: cfg.clone(),
            status: Status::Found,
            exit_code: 0,
            message: None,
            host: None,
            transforms: Vec::new(),
            collection: None,
            embedding: None,
            certificate: None,
        },
    };
    match st.run(cfg) {
        Ok(cert) => st.report.certificate = Some(cert),
        Err(e) => {
            st.report.status = Status::of_error(&e);
            st.report.message = Some(e.to_string());
        }
    }
    st.report.exit_code = st.report.status.exit_code();
    st.report
}

/// Writes the report and certificate to the paths named in the config.
pub fn write_outputs(report: &PipelineReport) -> Result<()> {
    if let Some(p) = &report.config.outputs.report {
        std::fs::write(p, report.to_json() + "\n")?;
    }
    if let (Some(p), Some(c)) = (&report.config.outputs.certificate, &report.certificate) {
        std::fs::write(p, serde_json::to_string_pretty(c).expect("certificate serialises") + "\n")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(json: &str) -> PipelineConfig {
        serde_json::from_str(json).unwrap()
    }

    #[test]
    fn exit_statuses() {
        let r = run_pipeline(&cfg(r#"{"host":{"source":"polarity","q":5},"target":{"kind":"prism","ell":4},"seed":1}"#));
        assert_eq!((r.status, r.exit_code), (Status::NotFound, 3));
        let r = run_pipeline(&cfg(r#"{"host":{"source":"polarity","q":5},"target":{"kind":"torus","k":5,"ell":2}}"#));
        assert_eq!(r.exit_code, 1);
        let r = run_pipeline(&cfg(
            r#"{"host":{"source":"gnp","n":40,"p":0.9,"bipartite":true},"target":{"kind":"cylinder","k":2,"ell":2},"builder":{"alpha":4},"seed":2}"#,
        ));
        assert_eq!(r.exit_code, 0, "{:?}", r.message);
        assert!(r.certificate.is_some());
    }

    #[test]
    fn config_round_trip() {
        let c = cfg(r#"{"host":{"source":"gnp","n":10,"p":0.5},"transforms":[{"op":"peel"},{"op":"clean","mode":"self"}],"target":{"kind":"grid","t":2}}"#);
        assert_eq!(c.builder.cap, 100_000_000);
        assert_eq!(c.embedder.budget, 10_000_000);
        let back: PipelineConfig = serde_json::from_str(&serde_json::to_string(&c).unwrap()).unwrap();
        assert_eq!(back, c);
    }
}
