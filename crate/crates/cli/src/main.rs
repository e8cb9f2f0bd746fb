use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod bench;
mod commands;

#[derive(Parser)]
#[command(
    name = "mlstc",
    version,
    about = "Consistent strong/weak tie labeling of multilayer networks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Label every layer consistently and write labels CSV and stats JSON.
    Label(LabelArgs),
    /// Solve each layer on its own, then repair disagreements.
    Baseline(BaselineArgs),
    /// Run every algorithm on each `.mledges` file of a directory.
    Bench(BenchArgs),
    /// Write a seeded random multilayer graph.
    Generate(GenerateArgs),
    /// Export an integer program in CPLEX LP format.
    ExportLp(ExportArgs),
    /// Print the wedge graph (or hypergraph) of an input.
    Wedges(WedgesArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Pricing,
    Greedy,
    GreedyWeighted,
    Exact,
}

impl From<Method> for mlstc::CoverMethod {
    fn from(m: Method) -> Self {
        match m {
            Method::Pricing => mlstc::CoverMethod::Pricing,
            Method::Greedy => mlstc::CoverMethod::Greedy,
            Method::GreedyWeighted => mlstc::CoverMethod::GreedyWeighted,
            Method::Exact => mlstc::CoverMethod::Exact,
        }
    }
}

#[derive(Args, Clone)]
struct InputArgs {
    /// Edge list with one `layer u v` triple per line.
    input: PathBuf,
    /// Column order of the input, e.g. `src,dst,layer`; `_` skips a column.
    #[arg(long, default_value = "layer,src,dst")]
    columns: String,
}

#[derive(Args, Clone)]
struct BudgetArgs {
    /// Largest wedge (hyper)graph edge count the exact solver accepts.
    #[arg(long, default_value_t = 500_000)]
    budget: usize,
    /// Cap on branch-and-bound nodes.
    #[arg(long)]
    max_branches: Option<u64>,
}

impl BudgetArgs {
    fn budget(&self) -> mlstc::ExactBudget {
        mlstc::ExactBudget {
            max_edges: self.budget,
            max_branches: self.max_branches,
        }
    }
}

#[derive(Args)]
struct LabelArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum, default_value = "pricing")]
    method: Method,
    /// Allow inserting new weak edges.
    #[arg(long)]
    plus: bool,
    /// Keep every inserted edge.
    #[arg(long)]
    no_postprocess: bool,
    /// Labels CSV path [default: <input>.labels.csv]
    #[arg(long)]
    labels: Option<PathBuf>,
    /// Stats JSON path, `-` for stdout [default: <input>.stats.json]
    #[arg(long)]
    stats: Option<PathBuf>,
    #[command(flatten)]
    budget: BudgetArgs,
    /// Leave inserted edges out of the consistency score.
    #[arg(long)]
    mu_existing_only: bool,
    /// Include reading and parsing in runtime_ms.
    #[arg(long)]
    time_all: bool,
    /// Print each pricing step to stderr.
    #[arg(long)]
    trace: bool,
}

#[derive(Args)]
struct BaselineArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum, default_value = "pricing")]
    method: Method,
    /// Allow inserting new weak edges.
    #[arg(long)]
    plus: bool,
    /// Keep every inserted edge.
    #[arg(long)]
    no_postprocess: bool,
    /// Output prefix; writes <prefix>.{raw,repaired}.{labels.csv,stats.json}
    /// [default: <input> without extension]
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    budget: BudgetArgs,
    #[arg(long)]
    mu_existing_only: bool,
    #[arg(long)]
    time_all: bool,
}

#[derive(Args)]
struct BenchArgs {
    /// Directory of `.mledges` files.
    dir: PathBuf,
    /// Output directory for results.csv, sizes.csv and ratios.csv.
    #[arg(long, default_value = "bench-out")]
    out: PathBuf,
    #[arg(long, default_value = "layer,src,dst")]
    columns: String,
    /// Do not run the exact solvers. Without this flag exact cells stop
    /// after 5000000 branch nodes unless --max-branches says otherwise.
    #[arg(long)]
    skip_exact: bool,
    #[command(flatten)]
    budget: BudgetArgs,
    #[arg(long)]
    mu_existing_only: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum GenMode {
    Independent,
    Correlated,
}

#[derive(Args)]
struct GenerateArgs {
    /// Number of nodes.
    #[arg(long)]
    n: u32,
    /// Number of layers.
    #[arg(long)]
    k: usize,
    /// Edge probability.
    #[arg(long)]
    p: f64,
    #[arg(long)]
    seed: u64,
    #[arg(long, value_enum, default_value = "independent")]
    mode: GenMode,
    /// Relative layer difference for the correlated mode.
    #[arg(long, default_value_t = 0.1)]
    epsilon: f64,
    /// Output path [default: stdout]
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Model {
    Max,
    Min,
    MinPlus,
}

#[derive(Args)]
struct ExportArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum, default_value = "min")]
    model: Model,
    /// LP path [default: stdout]
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Variable manifest path [default: <output>.manifest.tsv when writing to a file]
    #[arg(long)]
    manifest: Option<PathBuf>,
    /// Instantiate STC+ variables for every node pair and layer.
    #[arg(long)]
    full: bool,
}

#[derive(Args)]
struct WedgesArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Dump the STC+ wedge hypergraph.
    #[arg(long)]
    hyper: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Label(a) => commands::label(a),
        Command::Baseline(a) => commands::baseline(a),
        Command::Bench(a) => bench::run(a),
        Command::Generate(a) => commands::generate(a),
        Command::ExportLp(a) => commands::export_lp(a),
        Command::Wedges(a) => commands::wedges(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(commands::exit_code(&e))
        }
    }
}
