//! `semistrong`: tree index, exact solvers, verification, reduction gadgets,
//! generators and timing runs from the command line.
//!
//! Exit codes: 0 success, 2 bad input or usage, 3 verification failure or
//! wrong input type, 4 search budget exhausted.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use semistrong_core::coloring::ColoringKind;
use semistrong_core::reduction::GadgetKind;

use report::Inputs;

#[derive(Parser)]
#[command(name = "semistrong", version, about = "Semistrong edge coloring tools")]
struct Cli {
    /// Print a JSON run record instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Include wall time in the output.
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Semistrong chromatic index of a tree, or feasibility for a budget.
    Solve(SolveArgs),
    /// Exhaustive search on a small graph: minimum, decision or enumeration.
    Exact(ExactArgs),
    /// Check a coloring against a class.
    Verify(VerifyArgs),
    /// Replace every edge of a k-regular graph by a gadget.
    Reduce(ReduceArgs),
    /// Emit a gadget graph, optionally checking its forced colors.
    Gadget(GadgetArgs),
    /// Generate a graph.
    Gen(GenArgs),
    /// Time the tree program on generated trees and print CSV.
    Bench(BenchArgs),
}

#[derive(Args)]
pub struct SolveArgs {
    /// Tree in edge-list format.
    #[arg(long, short)]
    pub input: PathBuf,
    #[arg(long, default_value_t = 0)]
    pub root: usize,
    /// Decide colorability with this many colors instead of computing the index.
    #[arg(long)]
    pub budget: Option<u32>,
    /// Write the reconstructed coloring here.
    #[arg(long)]
    pub emit_coloring: Option<PathBuf>,
}

#[derive(Args)]
pub struct ExactArgs {
    #[arg(long)]
    pub kind: ColoringKind,
    #[arg(long, short)]
    pub input: PathBuf,
    /// Decide colorability with this many colors (default: minimize).
    #[arg(long)]
    pub palette: Option<u32>,
    /// Count every valid coloring with `--palette` colors.
    #[arg(long, requires = "palette")]
    pub enumerate: bool,
    /// Stop after this many search nodes.
    #[arg(long)]
    pub node_budget: Option<u64>,
    /// Stop enumerating after this many colorings.
    #[arg(long, requires = "enumerate")]
    pub cap: Option<u64>,
    /// Disable color-symmetry reduction.
    #[arg(long)]
    pub no_symmetry: bool,
    /// Write the witness coloring here.
    #[arg(long)]
    pub emit_coloring: Option<PathBuf>,
}

#[derive(Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub kind: ColoringKind,
    #[arg(long, short)]
    pub input: PathBuf,
    /// Coloring file with one `edge color` line per edge.
    #[arg(long, short)]
    pub coloring: PathBuf,
}

#[derive(Args)]
pub struct ReduceArgs {
    /// Degree of the input graph.
    #[arg(short, long)]
    pub k: usize,
    #[arg(long, short)]
    pub input: PathBuf,
    /// Where to write the reduced graph.
    #[arg(long, short)]
    pub output: PathBuf,
    /// Where to write the JSON map (default: `<output>.map.json`).
    #[arg(long)]
    pub map: Option<PathBuf>,
    /// Lift this proper coloring of the input graph to the reduced graph.
    #[arg(long, conflicts_with = "extract", requires = "coloring_output")]
    pub lift: Option<PathBuf>,
    /// Read a source coloring off this semistrong coloring of the reduced graph.
    #[arg(long, requires = "coloring_output")]
    pub extract: Option<PathBuf>,
    /// Where to write the lifted or extracted coloring.
    #[arg(long)]
    pub coloring_output: Option<PathBuf>,
}

#[derive(Args)]
pub struct GadgetArgs {
    /// B (odd k), Q (even k >= 6) or R (k = 4).
    #[arg(long)]
    pub kind: GadgetKind,
    #[arg(short, long)]
    pub k: usize,
    /// Add k - 1 pendant edges at both attachment vertices.
    #[arg(long)]
    pub augmented: bool,
    /// Where to write the gadget graph.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    /// Where to write the edge names as JSON.
    #[arg(long)]
    pub map: Option<PathBuf>,
    /// Enumerate all semistrong k-colorings and check the forced colors.
    #[arg(long)]
    pub verify: bool,
    /// Search node limit per enumeration when verifying.
    #[arg(long)]
    pub node_budget: Option<u64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Path,
    Cycle,
    Star,
    Complete,
    Bipartite,
    Circulant,
    Petersen,
    Hypercube,
    RandomTree,
    RandomGraph,
}

#[derive(Args)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    /// Vertex count (dimension for hypercube, first side for bipartite).
    #[arg(long, short, default_value_t = 0)]
    pub n: usize,
    /// Second side for bipartite.
    #[arg(long, default_value_t = 0)]
    pub m: usize,
    /// Circulant offsets.
    #[arg(long, value_delimiter = ',')]
    pub offsets: Vec<usize>,
    /// Degree bound for random trees.
    #[arg(long)]
    pub delta: Option<usize>,
    /// Edge probability for random graphs.
    #[arg(long, default_value_t = 0.5)]
    pub p: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Where to write the graph (default: stdout).
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TreeFamily {
    RandomTree,
    Path,
    Star,
}

#[derive(Args)]
pub struct BenchArgs {
    #[arg(long, value_enum, default_value = "random-tree")]
    pub family: TreeFamily,
    /// Tree sizes, comma separated.
    #[arg(long, short, value_delimiter = ',', required = true)]
    pub n: Vec<usize>,
    /// Degree bound for random trees.
    #[arg(long)]
    pub delta: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Runs per size; the fastest is reported.
    #[arg(long, default_value_t = 1)]
    pub repeats: usize,
    /// Where to write the CSV (default: stdout).
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let mut inputs = Inputs::default();
    let start = Instant::now();
    let result = match &cli.command {
        Command::Solve(a) => commands::solve(a, &mut inputs),
        Command::Exact(a) => commands::exact(a, &mut inputs),
        Command::Verify(a) => commands::verify(a, &mut inputs),
        Command::Reduce(a) => commands::reduce(a, &mut inputs),
        Command::Gadget(a) => commands::gadget(a),
        Command::Gen(a) => commands::gen(a),
        Command::Bench(a) => commands::bench(a),
    };
    let wall = cli.timings.then(|| start.elapsed());
    match result {
        Ok(outcome) => {
            report::emit(&argv, &inputs, &outcome, cli.json, wall);
            ExitCode::from(outcome.code)
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
