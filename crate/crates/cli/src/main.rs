mod args;

use args::*;
use clap::Parser;
use serde_json::{json, Value};
use std::fs::File;
use std::io::{BufReader, Write};
use std::path::Path;
use std::process::ExitCode;
use turan_forge::collections::{build_good_paths, build_rich_cycles, build_rich_paths, default_l};
use turan_forge::counting::{
    check_path_inequality, count_c4, count_even_cycles, hom_path_count, prism_path_weight_report,
};
use turan_forge::embedders::{
    embed_cylinder, embed_grid, embed_honeycomb, embed_torus, find_prism, find_prism_path_auto,
};
use turan_forge::generators::{pattern, polarity_graph, random_graph};
use turan_forge::graph::{read_edge_list, set_spill_dir, write_edge_list};
use turan_forge::oracle::{find_subgraph, max_edges_exhaustive, verify_certificate};
use turan_forge::pipeline::{run_pipeline, write_outputs, PipelineConfig, Status};
use turan_forge::transforms::{
    almost_regular_subgraph, bipartite_half, clean_subgraph, peel_min_degree, CleanMode,
};
use turan_forge::{EmbeddingCertificate, Error, Graph, LabeledCollection, PatternSpec, Result};

/// What a command produced: the artifact for `--out`, the JSON report and a
/// one-line summary for humans.
struct Outcome {
    artifact: Option<String>,
    report: Value,
    summary: String,
    exit: u8,
}

impl Outcome {
    fn new(artifact: Option<String>, report: Value, summary: String) -> Self {
        Outcome { artifact, report, summary, exit: 0 }
    }
}

/// Keeps the path in io messages.
fn io_err(e: std::io::Error, path: &Path) -> Error {
    Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<Graph> {
    let f = File::open(path).map_err(|e| io_err(e, path))?;
    read_edge_list(BufReader::new(f))
}

fn load_collection(path: &Path) -> Result<LabeledCollection> {
    let f = File::open(path).map_err(|e| io_err(e, path))?;
    LabeledCollection::read(BufReader::new(f))
}

fn edge_list(g: &Graph) -> String {
    let mut buf = Vec::new();
    write_edge_list(g, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("edge lists are ascii")
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialise")
}

fn need(v: Option<usize>, name: &str) -> Result<usize> {
    v.ok_or_else(|| Error::Input(format!("--{name} is required for this pattern")))
}

fn spec_of(kind: Kind, p: PatternParams) -> Result<PatternSpec> {
    Ok(match kind {
        Kind::Grid => PatternSpec::Grid { t: need(p.t, "t")? },
        Kind::Prism => PatternSpec::Prism { ell: need(p.ell, "ell")? },
        Kind::PrismPath => PatternSpec::PrismPath { t: need(p.t, "t")? },
        Kind::Cylinder => PatternSpec::Cylinder { k: need(p.k, "k")?, ell: need(p.ell, "ell")? },
        Kind::Torus => PatternSpec::Torus { k: need(p.k, "k")?, ell: need(p.ell, "ell")? },
        Kind::Honeycomb => PatternSpec::Honeycomb { k: need(p.k, "k")?, ell: need(p.ell, "ell")? },
        Kind::EvenCycle => PatternSpec::EvenCycle { ell: need(p.ell, "ell")? },
    })
}

/// `cN`, `kN`, `kA,B` or a path to an edge list.
fn named_pattern(s: &str) -> Result<Graph> {
    let num = |x: &str| x.parse::<usize>().ok();
    if let Some(n) = s.strip_prefix('c').and_then(num) {
        if n < 3 {
            return Err(Error::Input("cycles need at least 3 vertices".into()));
        }
        return Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)));
    }
    if let Some(rest) = s.strip_prefix('k') {
        if let Some(n) = num(rest) {
            return Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))));
        }
        if let Some((a, b)) = rest.split_once(',').and_then(|(a, b)| Some((num(a)?, num(b)?))) {
            return Graph::from_edges(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))));
        }
    }
    load_graph(Path::new(s))
}

fn certificate(cert: &EmbeddingCertificate, host: &Graph, extra: Value) -> Outcome {
    let check = verify_certificate(host, cert);
    let artifact = serde_json::to_string_pretty(cert).expect("certificate serialises") + "\n";
    let summary = format!("found {} vertices, verified {}", cert.mapping.len(), check.ok);
    Outcome::new(Some(artifact), json!({ "certificate": cert, "check": check, "details": extra }), summary)
}

fn write_audit(path: &Option<std::path::PathBuf>, audit: Value) -> Result<()> {
    if let Some(p) = path {
        std::fs::write(p, serde_json::to_string_pretty(&audit).expect("audit serialises") + "\n")?;
    }
    Ok(())
}

fn collection_outcome(c: &LabeledCollection, extra: Value) -> Result<Outcome> {
    let mut buf = Vec::new();
    c.write(&mut buf)?;
    let summary = format!("{} members of length {}, alpha {}", c.len(), c.length, c.alpha);
    let report = json!({ "kind": c.kind, "length": c.length, "alpha": c.alpha, "members": c.len(), "details": extra });
    Ok(Outcome::new(Some(String::from_utf8(buf).expect("collections are ascii")), report, summary))
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Gen(g) => gen(g, cli.seed),
        Command::Transform(t) => transform(t),
        Command::Count(c) => count(c),
        Command::Build(b) => build(b),
        Command::Embed(e) => embed(e, cli.seed),
        Command::Find(f) => find(f, cli.seed),
        Command::Oracle(o) => oracle(o),
        Command::Pipeline { config } => {
            let text = std::fs::read_to_string(config).map_err(|e| io_err(e, config))?;
            let cfg: PipelineConfig =
                serde_json::from_str(&text).map_err(|e| Error::Input(format!("pipeline config: {e}")))?;
            let report = run_pipeline(&cfg);
            write_outputs(&report)?;
            let summary = format!("{:?}: {}", report.status, report.message.clone().unwrap_or_default());
            Ok(Outcome {
                artifact: Some(report.to_json() + "\n"),
                report: to_json(&report),
                summary,
                exit: report.exit_code as u8,
            })
        }
    }
}

fn gen(g: &Gen, seed: u64) -> Result<Outcome> {
    let (graph, labels) = match g {
        Gen::Pattern { kind, params, labels } => {
            let p = pattern(&spec_of(*kind, *params)?)?;
            if let Some(path) = labels {
                let map: Vec<(String, usize)> = p.labels.iter().cloned().zip(0..).collect();
                std::fs::write(path, serde_json::to_string(&json!({ "labels": map })).expect("labels serialise") + "\n")?;
            }
            (p.graph, Some(p.labels))
        }
        Gen::Polarity { q } => (polarity_graph(*q)?, None),
        Gen::Gnp { n, p, bipartite } => {
            if !(0.0..=1.0).contains(p) {
                return Err(Error::Input(format!("p={p} is not a probability")));
            }
            (random_graph(*n, *p, seed, *bipartite), None)
        }
    };
    let summary = format!("n={} e={}", graph.n(), graph.edge_count());
    let report = json!({ "n": graph.n(), "edges": graph.edge_count(), "labels": labels, "seed": seed });
    Ok(Outcome::new(Some(edge_list(&graph)), report, summary))
}

fn transform(t: &TransformArgs) -> Result<Outcome> {
    let g = load_graph(&t.input)?;
    let (h, mut report) = match t.op {
        TransformOp::Peel => peel_min_degree(&g)?,
        TransformOp::Half => {
            let (h, _, r) = bipartite_half(&g);
            (h, r)
        }
        TransformOp::Regularize => almost_regular_subgraph(&g, t.epsilon, t.c, t.k)?,
        TransformOp::Clean => {
            let mode = match t.mode {
                CleanThresholds::Fixed => CleanMode::Fixed,
                CleanThresholds::SelfReferential => CleanMode::SelfReferential,
            };
            clean_subgraph(&g, mode)
        }
    };
    write_audit(&t.audit, to_json(&report.audit))?;
    report.audit = None;
    let summary = format!("{}: e {} -> {} in {} steps", report.transform, report.input.e, report.output.e, report.steps);
    Ok(Outcome::new(Some(edge_list(&h)), to_json(&report), summary))
}

fn count(c: &Count) -> Result<Outcome> {
    let report = match c {
        Count::Homp { host, k } => json!({ "k": k, "hom": hom_path_count(&load_graph(host)?, *k).to_string() }),
        Count::C4 { host } => json!({ "c4": count_c4(&load_graph(host)?).to_string() }),
        Count::Cycles { host, ell, cap } => {
            if *ell < 2 {
                return Err(Error::Input("--ell must be at least 2".into()));
            }
            json!({ "ell": ell, "cycles": count_even_cycles(&load_graph(host)?, *ell, *cap) })
        }
        Count::Inequality { host, k, l } => to_json(&check_path_inequality(&load_graph(host)?, *k, *l)?),
        Count::Weights { host, ell, c0, cap } => {
            if *ell < 2 {
                return Err(Error::Input("--ell must be at least 2".into()));
            }
            to_json(&prism_path_weight_report(&load_graph(host)?, *ell, *c0, *cap))
        }
    };
    let summary = report.to_string();
    Ok(Outcome::new(None, report, summary))
}

fn build(b: &Build) -> Result<Outcome> {
    match b {
        Build::RichPaths { host, k, alpha, cap, audit } => {
            let (c, a) = build_rich_paths(&load_graph(host)?, *k, *alpha, *cap)?;
            write_audit(audit, to_json(&a))?;
            collection_outcome(&c, json!({ "seed_size": a.seed_size, "prune_steps": a.steps.len() }))
        }
        Build::RichCycles { host, ell, alpha, cap, audit } => {
            let (c, a) = build_rich_cycles(&load_graph(host)?, *ell, *alpha, *cap)?;
            write_audit(audit, to_json(&a))?;
            collection_outcome(&c, json!({ "seed_size": a.seed_size, "prune_steps": a.steps.len() }))
        }
        Build::GoodPaths { host, k, alpha, c, l, cap, audit } => {
            let g = load_graph(host)?;
            let c = c.unwrap_or_else(|| g.average_degree().sqrt());
            let l = l.unwrap_or_else(|| default_l(&g, *k));
            let r = build_good_paths(&g, *k, *alpha, c, l, *cap)?;
            write_audit(audit, to_json(&r.audit))?;
            let extra = json!({
                "seed_size": r.audit.seed_size,
                "prune_steps": r.audit.steps.len(),
                "case": r.case,
                "decision": r.decision,
                "seed_weight": r.seed_weight,
                "final_weight": r.final_weight,
            });
            collection_outcome(&r.collection, extra)
        }
    }
}

fn embed(e: &EmbedArgs, seed: u64) -> Result<Outcome> {
    let coll = load_collection(&e.coll)?;
    let host = load_graph(&e.host)?;
    let p = e.params;
    let cert = match e.kind {
        EmbedKind::Grid => embed_grid(&coll, &host, need(p.t, "t")?)?,
        EmbedKind::Cylinder => embed_cylinder(&coll, &host, need(p.k, "k")?, need(p.ell, "ell")?)?,
        EmbedKind::Torus => embed_torus(&coll, &host, need(p.k, "k")?, need(p.ell, "ell")?, e.budget, seed)?,
        EmbedKind::Honeycomb => embed_honeycomb(&coll, &host, need(p.k, "k")?, need(p.ell, "ell")?)?,
    };
    Ok(certificate(&cert, &host, Value::Null))
}

fn find(f: &Find, seed: u64) -> Result<Outcome> {
    match f {
        Find::Prism { host, ell, t, budget } => {
            let g = load_graph(host)?;
            let (cert, rep) = find_prism(&g, *ell, *t, *budget, seed)?;
            Ok(certificate(&cert, &g, to_json(&rep)))
        }
        Find::PrismPath { host, t } => {
            let g = load_graph(host)?;
            let (cert, rep) = find_prism_path_auto(&g, *t)?;
            Ok(certificate(&cert, &g, to_json(&rep)))
        }
    }
}

fn oracle(o: &Oracle) -> Result<Outcome> {
    match o {
        Oracle::Find { host, pattern, budget } => {
            let g = load_graph(host)?;
            let s = find_subgraph(&g, &named_pattern(pattern)?, *budget);
            match &s.certificate {
                Some(cert) => Ok(certificate(cert, &g, to_json(&s.stats))),
                None => Err(Error::NotFound(format!("search ended {:?} after {} nodes", s.stats.outcome, s.stats.nodes))),
            }
        }
        Oracle::Verify { host, cert } => {
            let g = load_graph(host)?;
            let text = std::fs::read_to_string(cert).map_err(|e| io_err(e, cert))?;
            let c: EmbeddingCertificate =
                serde_json::from_str(&text).map_err(|e| Error::Input(format!("certificate: {e}")))?;
            let check = verify_certificate(&g, &c);
            let summary = match &check.violation {
                None => "certificate ok".to_string(),
                Some(v) => format!("certificate rejected: {v}"),
            };
            let exit = if check.ok { 0 } else { 2 };
            Ok(Outcome { artifact: None, report: to_json(&check), summary, exit })
        }
        Oracle::Exmax { n, pattern } => {
            let r = max_edges_exhaustive(*n, &named_pattern(pattern)?)?;
            let summary = format!("ex({n}) = {}", r.max_edges);
            Ok(Outcome::new(Some(edge_list(&r.witness)), to_json(&r), summary))
        }
    }
}

/// A closed reader (`| head`) is not an error worth reporting.
fn stdout(text: &str) -> Result<()> {
    match std::io::stdout().write_all(text.as_bytes()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn emit(cli: &Cli, out: Outcome) -> Result<()> {
    if let Some(a) = &out.artifact {
        match &cli.out {
            Some(p) => std::fs::write(p, a)?,
            None if !cli.json => stdout(a)?,
            None => {}
        }
    }
    if cli.json {
        stdout(&(serde_json::to_string_pretty(&out.report).expect("reports serialise") + "\n"))?;
    } else {
        eprintln!("{}", out.summary);
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            // usage errors are input errors; help and version are not
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    if let Some(dir) = std::env::var_os("TURAN_FORGE_CACHE_DIR").filter(|d| !d.is_empty()) {
        set_spill_dir(dir.into());
    }
    if let Some(t) = cli.threads {
        if t == 0 {
            eprintln!("error: --threads must be positive");
            return ExitCode::from(1);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: thread pool: {e}");
            return ExitCode::from(1);
        }
    }
    let result = run(&cli).and_then(|out| {
        let exit = out.exit;
        emit(&cli, out).map(|_| exit)
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            let status = Status::of_error(&e);
            eprintln!("error: {e}");
            if cli.json {
                let _ = stdout(&(json!({ "status": status, "exit_code": status.exit_code(), "message": e.to_string() }).to_string() + "\n"));
            }
            ExitCode::from(status.exit_code() as u8)
        }
    }
}
