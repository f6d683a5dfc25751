use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod output;

use barbed_core::paths::DominanceFilter;

/// Distances and barcodes of weighted graphs, with verification campaigns.
#[derive(Debug, Parser)]
#[command(name = "barbed", version, about)]
struct Cli {
    /// Graph file: optional `n <count>` header, then `u v w` per line.
    #[arg(long, global = true)]
    graph: Option<PathBuf>,
    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the output document here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Log progress to stderr (repeat for more detail).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Weight,
    Edge,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Filter {
    All,
    WeightDominated,
    CostDominated,
}

impl From<Filter> for DominanceFilter {
    fn from(f: Filter) -> Self {
        match f {
            Filter::All => DominanceFilter::All,
            Filter::WeightDominated => DominanceFilter::WeightDominated,
            Filter::CostDominated => DominanceFilter::CostDominated,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Ordering {
    Lexicographic,
    Shuffled,
    TreeFirst,
}

/// Random-graph family for campaign commands.
#[derive(Debug, Clone, Args)]
struct CorpusArgs {
    #[arg(long, default_value_t = 6)]
    n_min: usize,
    #[arg(long, default_value_t = 10)]
    n_max: usize,
    #[arg(long, default_value_t = 0.4)]
    p_min: f64,
    #[arg(long, default_value_t = 0.9)]
    p_max: f64,
    #[arg(long, default_value_t = 1)]
    w_min: u32,
    #[arg(long, default_value_t = 10)]
    w_max: u32,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Shortest-path distance matrices and their pointwise comparison.
    Distances {
        #[arg(long, value_enum, default_value_t = Mode::Both)]
        mode: Mode,
    },
    /// Persistence barcode of one distance.
    Barcode {
        #[arg(long)]
        k: usize,
        /// Skeleton dimension; defaults to k + 1.
        #[arg(long)]
        max_dim: Option<usize>,
        /// `weight`, `edge` or `pcf:<file>`.
        #[arg(long, default_value = "weight")]
        distance: commands::DistanceSpec,
        #[arg(long, value_enum, default_value_t = Ordering::Lexicographic)]
        ordering: Ordering,
    },
    /// Every consistent path choice function (at most 7 vertices).
    EnumeratePcf {
        #[arg(long, value_enum, default_value_t = Filter::All)]
        filter: Filter,
        /// Report counts only.
        #[arg(long)]
        count_only: bool,
    },
    /// Weight- and cost-domination of a path system.
    Classify {
        #[arg(long, default_value = "weight")]
        distance: commands::DistanceSpec,
    },
    /// Complete graph weighted by the induced distance.
    Completion {
        #[arg(long, default_value = "weight")]
        distance: commands::DistanceSpec,
    },
    /// Compares the MST sets of the graph and of its completion.
    MstCheck {
        #[arg(long, default_value = "weight")]
        distance: commands::DistanceSpec,
    },
    /// Injection of bcd_1 keyed by birth edge, on one graph or a corpus.
    VerifyInjection {
        #[arg(long, default_value = "weight")]
        small: commands::DistanceSpec,
        #[arg(long, default_value = "edge")]
        large: commands::DistanceSpec,
        /// Run on this many seeded random graphs instead of `--graph`
        /// (extraction distances only).
        #[arg(long)]
        corpus: Option<usize>,
        #[command(flatten)]
        family: CorpusArgs,
    },
    /// Least and greatest cost-dominated distances (at most 7 vertices).
    Poset,
    /// Searches random graphs for |bcd_k(d_edge)| < |bcd_k(d_weight)|.
    SearchCounterexample {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
        #[command(flatten)]
        family: CorpusArgs,
    },
    /// Compares the reduction against the rank oracle (at most 7 vertices).
    OracleDiff {
        #[arg(long, default_value = "weight")]
        distance: commands::DistanceSpec,
        /// Skeleton dimension; bars are compared for every k below it.
        #[arg(long, default_value_t = 3)]
        max_dim: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(outcome) => ExitCode::from(outcome as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
