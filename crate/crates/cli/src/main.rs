use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use facetmine_cli::{run, Command, Format, RunConfig};

/// Maximal frequent itemsets and wildcard-compressed frequent-set counts.
#[derive(Parser)]
#[command(name = "facetmine", version)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Args)]
struct Common {
    /// Transaction file: one transaction per line, whitespace-separated item ids
    input: PathBuf,

    /// Support threshold alpha
    #[arg(long)]
    min_support: Option<usize>,

    #[arg(long, value_enum, default_value = "text")]
    format: OutputFormat,

    /// Universe size, when trailing items appear in no transaction
    #[arg(long)]
    universe: Option<usize>,

    /// Facets, one per line, in the order they should be compressed
    #[arg(long)]
    order_file: Option<PathBuf>,

    /// Seed for a random item order when growing facets
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Verb {
    /// List the maximal frequent itemsets
    Facets(Common),
    /// Print the frequent sets as disjoint 012e-rows with their counts
    Compress(Common),
    /// Number of frequent sets
    Count(Common),
    /// Number of frequent sets with exactly K items
    CountK {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        k: usize,
    },
    /// Number of frequent sets containing a given set
    Supersets {
        #[command(flatten)]
        common: Common,
        /// Items, e.g. "7 8 9"
        #[arg(long)]
        set: String,
    },
    /// Frequent sets at the threshold that are not frequent one step above it
    Delta(Common),
    /// Maximal members of a set family file (no threshold)
    Maxsets(Common),
    /// Check the compression against brute-force enumeration (universe <= 20)
    Verify(Common),
    /// Size of the input
    Stats(Common),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (common, command) = match cli.verb {
        Verb::Facets(c) => (c, Command::Facets),
        Verb::Compress(c) => (c, Command::Compress),
        Verb::Count(c) => (c, Command::Count),
        Verb::CountK { common, k } => (common, Command::CountK(k)),
        Verb::Supersets { common, set } => (common, Command::Supersets(set)),
        Verb::Delta(c) => (c, Command::Delta),
        Verb::Maxsets(c) => (c, Command::Maxsets),
        Verb::Verify(c) => (c, Command::Verify),
        Verb::Stats(c) => (c, Command::Stats),
    };
    let config = RunConfig {
        input: common.input,
        command,
        min_support: common.min_support,
        format: match common.format {
            OutputFormat::Text => Format::Text,
            OutputFormat::Json => Format::Json,
        },
        universe: common.universe,
        order_file: common.order_file,
        seed: common.seed,
    };
    let code = run(
        &config,
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    );
    ExitCode::from(code as u8)
}
