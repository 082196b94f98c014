mod cache;
mod commands;
mod text;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::commands::Failure;

#[derive(Parser)]
#[command(name = "pcomm", version, about = "Exact commuting probabilities of p-elements in permutation groups")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
pub struct GlobalArgs {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads (default: one per core).
    #[arg(long, global = true, value_name = "N")]
    pub jobs: Option<usize>,
    /// Largest group order whose elements may be enumerated.
    #[arg(long, global = true, value_name = "N")]
    pub max_order: Option<usize>,
    /// Neither read nor write the result cache.
    #[arg(long, global = true)]
    pub no_cache: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Probability that two random p-elements commute.
    Prp {
        spec: String,
        p: u64,
        /// Also print the per-class ratio table.
        #[arg(long)]
        table: bool,
    },
    /// Commuting probability of the whole group.
    Pr { spec: String },
    /// Fixed point ratios of conjugacy classes on the cosets of a subgroup.
    ///
    /// SUBGROUP is one of: whole, trivial, stab:N, sylow:P, borel[:P]
    /// (normalizer of a Sylow subgroup), gens:CYCLES|CYCLES.
    /// ELEMENTS is one of: all, order:K, p:P, or a permutation in cycle
    /// notation such as "(0 1 2)".
    Fpr {
        spec: String,
        subgroup: String,
        #[arg(default_value = "all")]
        elements: String,
    },
    /// Per-class centralizer ratios of p-elements (every prime divisor by default).
    RatioTable { spec: String, p: Option<u64> },
    /// Order, degree, generators and Sylow data of a catalog group.
    ConstructInfo { spec: String },
    /// Run the structural checks over a corpus.
    Verify {
        /// Corpus file; the built-in corpus when omitted.
        #[arg(long, value_name = "PATH")]
        corpus: Option<PathBuf>,
        /// Comma-separated check names to run (default: all).
        #[arg(long, value_name = "LIST")]
        theorems: Option<String>,
        /// Write the JSON report here and a text report next to it (`.txt`).
        #[arg(long, value_name = "PATH")]
        report: Option<PathBuf>,
        /// Zero all wall times so reports are byte-stable.
        #[arg(long)]
        no_timings: bool,
        /// List passing reports too.
        #[arg(long, short)]
        verbose: bool,
    },
    /// Delete every cached result.
    CacheClear,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.global.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let g = &cli.global;
    let result = match cli.command {
        Command::Prp { spec, p, table } => commands::prp(g, &spec, p, table),
        Command::Pr { spec } => commands::pr(g, &spec),
        Command::Fpr { spec, subgroup, elements } => commands::fpr(g, &spec, &subgroup, &elements),
        Command::RatioTable { spec, p } => commands::ratio_table(g, &spec, p),
        Command::ConstructInfo { spec } => commands::construct_info(g, &spec),
        Command::Verify { corpus, theorems, report, no_timings, verbose } => {
            let opts = commands::VerifyOptions { corpus, theorems, report, no_timings, verbose };
            commands::verify(g, &opts)
        }
        Command::CacheClear => commands::cache_clear(),
    };
    match result {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("error: {failure}");
            ExitCode::from(failure.exit_code())
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Input(m) | Failure::TooLarge(m) | Failure::Io(m) => f.write_str(m),
        }
    }
}
