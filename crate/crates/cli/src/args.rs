use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "cambrian",
    version,
    about = "Coxeter groups, Cambrian lattices, sortable elements and Cambrian fans"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enumerate a finite Coxeter group and its weak order.
    Group(GroupArgs),
    /// Close a set of weak-order covers under local forcing.
    Congruence(CongruenceArgs),
    /// Cambrian congruence, lattice and checks for a Coxeter element.
    Cambrian(CambrianArgs),
    /// List sortable elements with sorting words, skips and C-vectors.
    Sortable(CambrianArgs),
    /// Coxeter fan or Cambrian fan, with sampling checks.
    Fan(FanArgs),
    /// Triangulations of a barred polygon and the map from permutations.
    Tamari(TamariArgs),
    /// Run the property suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Dot,
    Json,
    Svg,
}

#[derive(Debug, Args)]
pub struct GroupSource {
    /// Group label such as A3, B2, H3, I2(5) or A2xA1.
    #[arg(long = "type", value_name = "LABEL", required_unless_present = "matrix")]
    pub label: Option<String>,
    /// JSON file holding a Coxeter matrix, e.g. [[1,3],[3,1]].
    #[arg(long, value_name = "FILE", conflicts_with = "label")]
    pub matrix: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct Output {
    #[arg(long, value_enum)]
    pub export: Option<Format>,
    /// Write the export here instead of standard output.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GroupArgs {
    #[command(flatten)]
    pub group: GroupSource,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct CongruenceArgs {
    #[command(flatten)]
    pub group: GroupSource,
    /// Cover to contract, written `lower:upper` with words, e.g. `s2:s2s1`.
    /// Repeatable.
    #[arg(long = "edge", value_name = "LOWER:UPPER")]
    pub edges: Vec<String>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct CambrianArgs {
    #[command(flatten)]
    pub group: GroupSource,
    /// Coxeter element as a word (s1s3s2) or an orientation (1>2,3>2).
    #[arg(long = "c", alias = "coxeter-element", value_name = "C")]
    pub c: String,
    /// Also run the cross-checks between the constructions.
    #[arg(long)]
    pub verify: bool,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct FanArgs {
    #[command(flatten)]
    pub group: GroupSource,
    /// Coxeter element; without it the Coxeter fan is built.
    #[arg(long = "c", alias = "coxeter-element", value_name = "C")]
    pub c: Option<String>,
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct TamariArgs {
    #[arg(long)]
    pub n: usize,
    /// One of u/d for each label 1..n+1; all d by default.
    #[arg(long)]
    pub barring: Option<String>,
    /// Permutation in one-line notation whose triangulation is exported as
    /// SVG or JSON.
    #[arg(long, value_name = "PERM")]
    pub perm: Option<String>,
    #[arg(long)]
    pub verify: bool,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Include the slower checks (larger groups, all barrings).
    #[arg(long)]
    pub all: bool,
    #[arg(long, default_value_t = 3)]
    pub max_rank: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
}
