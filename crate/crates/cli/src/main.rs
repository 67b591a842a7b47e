mod commands;
mod error;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use error::CliError;

#[derive(Parser, Debug)]
#[command(
    name = "fkpoints",
    version,
    about = "Truncated point schemes over prime fields"
)]
struct Cli {
    /// Worker threads for the solver.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    parallel: u64,

    /// Largest number of layer-0 candidates a solve may visit.
    #[arg(long, global = true, env = "FKPOINTS_GUARD", default_value_t = fkpoints::scheme::DEFAULT_GUARD)]
    guard: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a presentation in the text format.
    Present {
        #[command(subcommand)]
        family: Family,
        #[arg(short, long, global = true)]
        output: Option<PathBuf>,
    },
    /// Enumerate the F_p-points of a truncated point scheme.
    Solve {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        kind: GraphPresentation,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        prime: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Append the search-tree report.
        #[arg(long)]
        fibration: bool,
        /// Cross-check against a full scan of all candidate tuples.
        #[arg(long)]
        oracle: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Largest degree with points, up to a limit.
    Psup {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        kind: GraphPresentation,
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        dmax: usize,
    },
    /// Compare the clique-union test with the degree-2 solver on a graph.
    Classify {
        graph: PathBuf,
        #[arg(long)]
        prime: u64,
    },
    /// Run the replication catalog.
    Replicate {
        /// TOML configuration; unspecified keys take their defaults.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Comma-separated primes, overriding the configuration.
        #[arg(long, value_delimiter = ',')]
        primes: Option<Vec<u64>>,
        /// Run a single claim.
        #[arg(long)]
        claim: Option<String>,
        #[arg(long)]
        timings: bool,
        #[arg(long, value_enum, default_value_t = Format::Md)]
        format: Format,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Graph utilities.
    Graph {
        #[command(subcommand)]
        op: GraphOp,
    },
}

#[derive(Subcommand, Debug)]
enum Family {
    /// Complete graph on n vertices.
    Fk { n: usize },
    /// Nil-Coxeter presentation on n - 1 generators.
    An { n: usize },
    /// Presentation attached to a graph file.
    Graph {
        file: PathBuf,
        #[command(flatten)]
        kind: GraphPresentation,
    },
}

#[derive(Args, Debug, Clone)]
struct GraphPresentation {
    /// Quadratic relations only.
    #[arg(long, conflicts_with = "star")]
    cover: bool,
    /// Quadratic relations plus cyclic star relations up to this degree.
    #[arg(long)]
    star: Option<usize>,
    #[arg(long, requires = "star", default_value = "min-center")]
    mode: String,
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false, id = "source")]
struct Source {
    /// `fk:<n>` or `an:<n>`.
    #[arg(long)]
    builtin: Option<String>,
    /// Presentation file.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Graph file; see --cover and --star.
    #[arg(long)]
    graph: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum GraphOp {
    /// Line graph of a graph file.
    LineGraph { file: PathBuf },
    /// Isomorphism classes on 1..=max vertices.
    Enumerate {
        #[arg(long)]
        max: usize,
    },
    /// Random labeled tree.
    RandomTree {
        #[arg(long)]
        vertices: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Relabel a tree so each vertex has one smaller neighbor.
    CenterLabel { file: PathBuf },
    /// Predicates used by the tree and clique-union checks.
    Info { file: PathBuf },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Md,
    Csv,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.parallel as usize)
        .build()
    {
        Ok(pool) => pool,
        Err(e) => return report(CliError::Usage(e.to_string())),
    };
    match pool.install(|| commands::run(&cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => report(e),
    }
}

fn report(e: CliError) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(e.code())
}
