mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use report::Failure;

#[derive(Parser, Debug)]
#[command(name = "vcpc", version, about = "p-bit Gibbs sampling over higher-order binary energy models")]
struct Cli {
    /// Root seed for every random choice. Overrides any seed in a config file.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Worker threads (default: all cores). Results do not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Output directory.
    #[arg(long, global = true, env = "VCPC_OUT", default_value = "vcpc-out")]
    out: PathBuf,

    /// Format of the summary printed to stdout.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Random k-uniform hypergraph.
    GenHs(GenHs),
    /// Erdős–Rényi spin glass with ±1 couplings.
    GenEr(GenEr),
    /// Energy model of a hitting-set, spin-glass or TSP instance.
    Encode(Encode),
    /// Greedy colouring of a model's conflict graph into update groups.
    Colour(Colour),
    /// Simulated annealing.
    SolveSa(SolveSa),
    /// Parallel tempering.
    SolvePt(SolvePt),
    /// TSP solved coarse to fine under k-means cluster masks.
    TspKmc(TspKmc),
    /// Reduce a model to quadratic order with auxiliary variables.
    Quadratise(Quadratise),
    /// Split high-degree spins into chains of bounded-degree copies.
    Sparsify(Sparsify),
    /// Time-to-solution estimate from an iteration count.
    Tts(Tts),
    /// Run a study file, or replay a study manifest.
    Study(Study),
}

#[derive(Args, Debug)]
pub struct GenHs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long, default_value = "hypergraph")]
    pub name: String,
}

#[derive(Args, Debug)]
pub struct GenEr {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub p: f64,
    #[arg(long, default_value = "instance")]
    pub name: String,
}

#[derive(Args, Debug)]
#[command(group = clap::ArgGroup::new("input").required(true).args(["hs", "ising", "tsp"]))]
pub struct Encode {
    /// Hypergraph file.
    #[arg(long)]
    pub hs: Option<PathBuf>,
    /// Spin-glass instance file.
    #[arg(long)]
    pub ising: Option<PathBuf>,
    /// TSPLIB file or bundled instance name.
    #[arg(long)]
    pub tsp: Option<String>,
    /// Constraint penalty (hitting set default 13; required for TSP).
    #[arg(long)]
    pub a: Option<f64>,
    /// Objective weight (hitting set default 9, TSP default 1).
    #[arg(long)]
    pub b: Option<f64>,
    #[arg(long, default_value = "model")]
    pub name: String,
}

#[derive(Args, Debug)]
pub struct Colour {
    #[arg(long)]
    pub model: PathBuf,
}

#[derive(Args, Debug)]
pub struct SolveSa {
    #[arg(long)]
    pub model: PathBuf,
    /// Solver file with an `[sa]` table.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub beta_start: Option<f64>,
    #[arg(long)]
    pub beta_end: Option<f64>,
    #[arg(long)]
    pub steps: Option<usize>,
    /// Group updates per step.
    #[arg(long)]
    pub iters: Option<usize>,
    #[arg(long)]
    pub reps: Option<usize>,
}

#[derive(Args, Debug)]
pub struct SolvePt {
    #[arg(long)]
    pub model: PathBuf,
    /// Solver file with a `[pt]` table.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub beta_start: Option<f64>,
    #[arg(long)]
    pub beta_end: Option<f64>,
    #[arg(long)]
    pub replicas: Option<usize>,
    #[arg(long)]
    pub iters: Option<usize>,
    /// Iterations between swap sweeps.
    #[arg(long)]
    pub swap: Option<usize>,
    #[arg(long)]
    pub reps: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SolverKind {
    Sa,
    Pt,
}

#[derive(Args, Debug)]
pub struct TspKmc {
    /// TSPLIB file or bundled instance name.
    #[arg(long)]
    pub instance: String,
    /// Solver file; the table matching `--solver` is used at every level.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = SolverKind::Sa)]
    pub solver: SolverKind,
    /// Cluster counts, finest first.
    #[arg(long, value_delimiter = ',', required = true)]
    pub levels: Vec<usize>,
    /// Penalty weights: the full problem first, then one per level.
    #[arg(long, value_delimiter = ',', required = true)]
    pub penalties: Vec<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub b: f64,
}

#[derive(Args, Debug)]
pub struct Quadratise {
    #[arg(long)]
    pub model: PathBuf,
    /// Penalty strength; derived from the coefficients when absent.
    #[arg(long)]
    pub strength: Option<f64>,
    #[arg(long, default_value = "quadratised")]
    pub name: String,
}

#[derive(Args, Debug)]
#[command(group = clap::ArgGroup::new("input").required(true).args(["ising", "model"]))]
pub struct Sparsify {
    /// Spin-glass instance file.
    #[arg(long)]
    pub ising: Option<PathBuf>,
    /// Quadratic model file, converted to Ising form first.
    #[arg(long)]
    pub model: Option<PathBuf>,
    /// Neighbour budget per physical spin.
    #[arg(long, required_unless_present = "sweep")]
    pub budget: Option<usize>,
    /// Chain coupling; defaults to 2·max|J|·(k−1).
    #[arg(long)]
    pub lambda: Option<f64>,
    /// Sweep budgets from the maximum degree down to 3 instead.
    #[arg(long)]
    pub sweep: bool,
}

#[derive(Args, Debug)]
pub struct Tts {
    /// Iterations to reach the target quality.
    #[arg(long)]
    pub iters: f64,
    /// Problem size.
    #[arg(long)]
    pub n: usize,
    /// Clock frequency in Hz.
    #[arg(long)]
    pub freq: f64,
    /// Fixed cycles per iteration on top of the adder tree.
    #[arg(long, default_value_t = vcpc::analysis::DEFAULT_OVERHEAD_CYCLES)]
    pub overhead: f64,
    /// Mean group size Ḡ when `--iters` counts single-variable updates.
    #[arg(long, default_value_t = 1.0)]
    pub group_size: f64,
}

#[derive(Args, Debug)]
#[command(group = clap::ArgGroup::new("input").required(true).args(["spec", "replay"]))]
pub struct Study {
    /// Study file.
    pub spec: Option<PathBuf>,
    /// Manifest to replay; every recorded artifact must match byte for byte.
    #[arg(long)]
    pub replay: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().expect("thread pool is built once");
    }
    let ctx = report::Ctx::new(cli.out, cli.format, cli.seed, cli.threads);
    let outcome = match &cli.command {
        Command::GenHs(a) => commands::gen_hs(ctx, a),
        Command::GenEr(a) => commands::gen_er(ctx, a),
        Command::Encode(a) => commands::encode(ctx, a),
        Command::Colour(a) => commands::colour(ctx, a),
        Command::SolveSa(a) => commands::solve_sa(ctx, a),
        Command::SolvePt(a) => commands::solve_pt(ctx, a),
        Command::TspKmc(a) => commands::tsp_kmc(ctx, a),
        Command::Quadratise(a) => commands::quadratise(ctx, a),
        Command::Sparsify(a) => commands::sparsify(ctx, a),
        Command::Tts(a) => commands::tts(ctx, a),
        Command::Study(a) => commands::study(ctx, a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}\n\nrun `vcpc help` for the expected inputs");
            ExitCode::from(2)
        }
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
