use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "ultraword", version, about = "Partitions, conjunction words and finite consequence operators")]
pub struct Cli {
    /// JSON file of default flag values.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Partition points t(i, j) of one interval kind.
    Points(PointsArgs),
    /// Frozen segments of a paradigm over an index range.
    Paradigm(ParadigmArgs),
    /// The conjunction word of a finite truncation and its containment check.
    Ultraword(UltrawordArgs),
    /// Closure of a premise set under a rule file.
    Closure(ClosureArgs),
    /// Decomposition of S({w}) into axioms, conjunctions and atoms.
    Decompose(DecomposeArgs),
    /// Behavior or theory signature of a perceived context.
    Signature(SignatureArgs),
    /// Rules built from observations, with the separate-versus-union verdict.
    Converse(ConverseArgs),
    /// Standard parts of a subparticle file.
    St(StArgs),
    /// Consequence-operator axiom report.
    Check(CheckArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeArg {
    Canonical,
    Permutational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Closure,
    St,
    Signature,
}

#[derive(Debug, Args)]
pub struct PointsArgs {
    /// Interval kind: 1 = [0,b], 2 = [0,+∞), 3 = (-∞,0], 4 = (-∞,+∞).
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
    pub q: u8,
    /// Subintervals per unit length.
    #[arg(long = "K", value_parser = clap::value_parser!(u64).range(1..))]
    pub k: Option<u64>,
    /// Right endpoint of [0,b]; defaults to m/K.
    #[arg(long)]
    pub b: Option<String>,
    /// Number of subintervals of [0,b].
    #[arg(long)]
    pub m: Option<u64>,
    /// Inclusive subinterval range `lo..hi`.
    #[arg(long, allow_hyphen_values = true)]
    pub i: Option<String>,
    #[arg(long = "j-max")]
    pub j_max: Option<u32>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Args)]
pub struct ParadigmArgs {
    /// Paradigm description file.
    #[arg(long)]
    pub spec: PathBuf,
    #[arg(long, allow_hyphen_values = true)]
    pub i: Option<String>,
    #[arg(long = "j-max")]
    pub j_max: Option<u32>,
}

#[derive(Debug, Args)]
pub struct UltrawordArgs {
    #[arg(long)]
    pub spec: PathBuf,
    /// Subinterval bound (negative for the left-unbounded kinds).
    #[arg(long, allow_hyphen_values = true)]
    pub m: i64,
    /// Right subinterval bound, (-∞,+∞) only.
    #[arg(long)]
    pub p: Option<i64>,
    /// Largest j.
    #[arg(long)]
    pub n: u32,
    /// Label of the infinite index this truncation stands in for.
    #[arg(long)]
    pub marker: Option<String>,
}

#[derive(Debug, Args)]
pub struct ClosureArgs {
    /// Rule file.
    #[arg(long)]
    pub rules: PathBuf,
    /// Comma-separated premises.
    #[arg(long, default_value = "")]
    pub premises: String,
}

#[derive(Debug, Args)]
pub struct DecomposeArgs {
    #[arg(long)]
    pub spec: PathBuf,
    /// Comma-separated `i:j` indices of the conjuncts, in order.
    #[arg(long, allow_hyphen_values = true)]
    pub points: String,
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    /// Comma-separated axiom names.
    #[arg(long, default_value = "")]
    pub axioms: String,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false, id = "which")]
pub struct SignatureSelect {
    /// Theory signature over every nonempty subset of the perceived set.
    #[arg(long)]
    pub theory: bool,
    /// Behavior signature of this comma-separated source set.
    #[arg(long)]
    pub x: Option<String>,
}

#[derive(Debug, Args)]
pub struct SignatureArgs {
    /// Context file.
    #[arg(long)]
    pub context: PathBuf,
    #[command(flatten)]
    pub select: SignatureSelect,
}

#[derive(Debug, Args)]
pub struct ConverseArgs {
    /// Observation file.
    #[arg(long)]
    pub observations: PathBuf,
    /// Comma-separated premises for the separate-versus-union comparison.
    #[arg(long)]
    pub premises: Option<String>,
    /// Comma-separated declared language.
    #[arg(long)]
    pub language: Option<String>,
}

#[derive(Debug, Args)]
pub struct StArgs {
    /// Subparticle file.
    #[arg(long)]
    pub input: PathBuf,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(long, value_enum)]
    pub target: Target,
    /// Rule file, for `--target closure`.
    #[arg(long)]
    pub rules: Option<PathBuf>,
    /// Subparticle file, for `--target st`.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Context file, for `--target signature`.
    #[arg(long)]
    pub context: Option<PathBuf>,
    /// Random subsets drawn when the universe is too large to sweep.
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
}
