use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

/// Accepts plain integers and float notation such as `1e7`.
fn count(s: &str) -> Result<u64, String> {
    if let Ok(v) = s.parse::<u64>() {
        return Ok(v);
    }
    match s.parse::<f64>() {
        Ok(f) if f >= 0.0 && f.fract() == 0.0 && f < 1.8e19 => Ok(f as u64),
        _ => Err(format!("`{s}` is not a non-negative integer")),
    }
}

#[derive(Parser, Debug)]
#[command(name = "turan-forge", version, about = "Generators, deletion-process builders, embedders and oracles for bipartite Turan problems")]
pub struct Cli {
    /// seed for random generators and restart portfolios
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// worker threads (default: all cores)
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// where the main artifact goes (stdout when absent)
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// print the JSON report on stdout
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Write a generated graph as an edge list
    #[command(subcommand)]
    Gen(Gen),
    /// Apply one host transform
    Transform(TransformArgs),
    /// Exact counts and diagnostics
    #[command(subcommand)]
    Count(Count),
    /// Build a collection by its deletion process
    #[command(subcommand)]
    Build(Build),
    /// Shift a pattern out of a collection
    Embed(EmbedArgs),
    /// Direct searches that need no collection
    #[command(subcommand)]
    Find(Find),
    /// Brute-force references
    #[command(subcommand)]
    Oracle(Oracle),
    /// Run a JSON pipeline config end to end
    Pipeline {
        #[arg(long)]
        config: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Kind {
    Grid,
    Prism,
    PrismPath,
    Cylinder,
    Torus,
    Honeycomb,
    EvenCycle,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct PatternParams {
    #[arg(long)]
    pub t: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub ell: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum Gen {
    Pattern {
        #[arg(long, value_enum)]
        kind: Kind,
        #[command(flatten)]
        params: PatternParams,
        /// JSON sidecar with the label map
        #[arg(long)]
        labels: Option<PathBuf>,
    },
    Polarity {
        #[arg(long)]
        q: usize,
    },
    Gnp {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        bipartite: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum TransformOp {
    Peel,
    Half,
    Regularize,
    Clean,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum CleanThresholds {
    Fixed,
    #[value(name = "self")]
    SelfReferential,
}

#[derive(Args, Debug)]
pub struct TransformArgs {
    #[arg(value_enum)]
    pub op: TransformOp,
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long, default_value_t = 0.5)]
    pub epsilon: f64,
    #[arg(long, default_value_t = 1.0)]
    pub c: f64,
    #[arg(long = "K", default_value_t = 32.0)]
    pub k: f64,
    #[arg(long, value_enum, default_value = "fixed")]
    pub mode: CleanThresholds,
    /// write the step-by-step audit here
    #[arg(long)]
    pub audit: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Count {
    /// walks on k vertices
    Homp {
        #[arg(long)]
        host: PathBuf,
        #[arg(long)]
        k: usize,
    },
    C4 {
        #[arg(long)]
        host: PathBuf,
    },
    Cycles {
        #[arg(long)]
        host: PathBuf,
        #[arg(long)]
        ell: usize,
        #[arg(long, value_parser = count)]
        cap: Option<u64>,
    },
    /// path inequality between walks on k+1 and l+1 vertices
    Inequality {
        #[arg(long)]
        host: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
    },
    Weights {
        #[arg(long)]
        host: PathBuf,
        #[arg(long)]
        ell: usize,
        #[arg(long = "C0", default_value_t = 8.0)]
        c0: f64,
        #[arg(long, value_parser = count, default_value = "1e8")]
        cap: u64,
    },
}

#[derive(Subcommand, Debug)]
pub enum Build {
    RichPaths {
        #[arg(long)]
        host: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        alpha: usize,
        #[arg(long, value_parser = count, default_value = "1e8")]
        cap: u64,
        #[arg(long)]
        audit: Option<PathBuf>,
    },
    RichCycles {
        #[arg(long)]
        host: PathBuf,
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        alpha: usize,
        #[arg(long, value_parser = count, default_value = "1e8")]
        cap: u64,
        #[arg(long)]
        audit: Option<PathBuf>,
    },
    GoodPaths {
        #[arg(long)]
        host: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        alpha: usize,
        /// codegree threshold (default: square root of the average degree)
        #[arg(long = "C")]
        c: Option<f64>,
        /// case-split constant (default: 64 k K^2)
        #[arg(long = "L")]
        l: Option<f64>,
        #[arg(long, value_parser = count, default_value = "1e8")]
        cap: u64,
        #[arg(long)]
        audit: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum EmbedKind {
    Grid,
    Cylinder,
    Torus,
    Honeycomb,
}

#[derive(Args, Debug)]
pub struct EmbedArgs {
    #[arg(value_enum)]
    pub kind: EmbedKind,
    #[arg(long)]
    pub coll: PathBuf,
    #[arg(long)]
    pub host: PathBuf,
    #[command(flatten)]
    pub params: PatternParams,
    #[arg(long, value_parser = count, default_value = "1e7")]
    pub budget: u64,
}

#[derive(Subcommand, Debug)]
pub enum Find {
    Prism {
        #[arg(long)]
        host: PathBuf,
        #[arg(long)]
        ell: usize,
        #[arg(long = "T", default_value_t = 8.0)]
        t: f64,
        #[arg(long, value_parser = count, default_value = "1e7")]
        budget: u64,
    },
    #[command(name = "prismpath")]
    PrismPath {
        #[arg(long)]
        host: PathBuf,
        #[arg(long)]
        t: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum Oracle {
    Find {
        #[arg(long)]
        host: PathBuf,
        /// edge list, or a name: cN (cycle), kN (complete), kA,B
        #[arg(long)]
        pattern: String,
        #[arg(long, value_parser = count, default_value = "1e8")]
        budget: u64,
    },
    Verify {
        #[arg(long)]
        host: PathBuf,
        #[arg(long)]
        cert: PathBuf,
    },
    Exmax {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        pattern: String,
    },
}
