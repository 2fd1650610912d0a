//! Command-line front-end: load or construct state pairs, print error
//! reports, run seeded simulations, and emit sweep tables as CSV.

mod report;
mod sweep;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use qhtest::states::{entangled_vector, entanglement_pair, pauli_pair, DensityMatrix};
use qhtest::separable::{pure_strategy, pure_strategy_error, simulate};

#[derive(Parser)]
#[command(
    name = "qhtest",
    version,
    about = "Exact errors, analytic bounds, and simulated tests for distinguishing two quantum states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report the exact error, fidelity bound interval, and rates at one sample size
    Bounds(BoundsArgs),
    /// Write a CSV table of errors and bounds for n = 1..n-max
    Sweep(SweepArgs),
    /// Run a built-in example pair instead of loading state files
    Example(ExampleArgs),
}

#[derive(Args)]
struct StatePairArgs {
    /// State file for hypothesis 0 (JSON with fields dim, re, im)
    #[arg(long)]
    rho0: PathBuf,
    /// State file for hypothesis 1
    #[arg(long)]
    rho1: PathBuf,
}

#[derive(Args)]
struct BoundsArgs {
    #[command(flatten)]
    pair: StatePairArgs,
    /// Sample size
    #[arg(long, default_value_t = 1)]
    n: u32,
    /// Largest tensor-power dimension for which the exact error is computed
    #[arg(long, default_value_t = qhtest::DEFAULT_DIM_CAP)]
    cap: usize,
    /// Print rates in bits per copy instead of nats
    #[arg(long)]
    bits: bool,
    /// Emit the report as JSON
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    pair: StatePairArgs,
    /// Largest sample size in the table
    #[arg(long = "n-max")]
    n_max: u32,
    /// Monte Carlo trials per hypothesis and row (0 disables simulation)
    #[arg(long, default_value_t = 0)]
    trials: u64,
    /// Simulation seed; row n uses substream seed + n
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Largest tensor-power dimension for which the exact error is computed
    #[arg(long, default_value_t = qhtest::DEFAULT_DIM_CAP)]
    cap: usize,
    /// Output CSV path
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct ExampleArgs {
    #[command(subcommand)]
    which: ExampleKind,
}

#[derive(Subcommand)]
enum ExampleKind {
    /// Qubit family rho0 = (I + a sx)/2, rho1 = (I + b cos(theta) sx + b sin(theta) sy)/2
    Pauli {
        /// Bloch length of hypothesis 0, in [-1, 1]
        #[arg(long, allow_hyphen_values = true)]
        a: f64,
        /// Bloch length of hypothesis 1, in [-1, 1]
        #[arg(long, allow_hyphen_values = true)]
        b: f64,
        /// Angle between the two Bloch vectors, radians
        #[arg(long, allow_hyphen_values = true)]
        theta: f64,
        #[command(flatten)]
        run: ExampleRunArgs,
    },
    /// Entangled vector (|00> + |11>)/sqrt(2) against the even classical mixture of |00>, |11>
    Entangle {
        #[command(flatten)]
        run: ExampleRunArgs,
    },
}

#[derive(Args)]
struct ExampleRunArgs {
    /// Sample size for a single report
    #[arg(long, default_value_t = 1, conflicts_with = "n_max")]
    n: u32,
    /// Largest sample size: write a sweep CSV instead of a single report
    #[arg(long = "n-max", requires = "out")]
    n_max: Option<u32>,
    /// Monte Carlo trials per hypothesis (0 disables simulation)
    #[arg(long, default_value_t = 0)]
    trials: u64,
    /// Simulation seed
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Largest tensor-power dimension for which the exact error is computed
    #[arg(long, default_value_t = qhtest::DEFAULT_DIM_CAP)]
    cap: usize,
    /// Print rates in bits per copy instead of nats
    #[arg(long)]
    bits: bool,
    /// Emit the report as JSON
    #[arg(long)]
    json: bool,
    /// CSV output path (used with --n-max)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug)]
pub(crate) enum CliError {
    Validation(String),
    Io(String),
}

impl From<qhtest::Error> for CliError {
    fn from(e: qhtest::Error) -> Self {
        CliError::Validation(e.to_string())
    }
}

pub(crate) type CliResult<T> = Result<T, CliError>;

fn load_state(path: &Path) -> CliResult<DensityMatrix> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    DensityMatrix::from_state_json(&text)
        .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))
}

fn cmd_bounds(args: &BoundsArgs) -> CliResult<()> {
    let rho0 = load_state(&args.pair.rho0)?;
    let rho1 = load_state(&args.pair.rho1)?;
    let report = qhtest::joint::error_bounds(&rho0, &rho1, args.n, args.cap)?;
    if args.json {
        println!("{}", report::render_json(&report, args.bits));
    } else {
        print!("{}", report::render_text(&report, args.bits));
    }
    Ok(())
}

fn cmd_sweep(args: &SweepArgs) -> CliResult<()> {
    let rho0 = load_state(&args.pair.rho0)?;
    let rho1 = load_state(&args.pair.rho1)?;
    let csv = sweep::sweep_csv(&rho0, &rho1, args.n_max, args.trials, args.seed, args.cap)?;
    std::fs::write(&args.out, csv)
        .map_err(|e| CliError::Io(format!("{}: {e}", args.out.display())))?;
    Ok(())
}

fn cmd_example(args: &ExampleArgs) -> CliResult<()> {
    match &args.which {
        ExampleKind::Pauli { a, b, theta, run } => {
            let (rho0, rho1) = pauli_pair(*a, *b, *theta)?;
            run_example_pair(&rho0, &rho1, run, None)
        }
        ExampleKind::Entangle { run } => {
            let (rho0, rho1) = entanglement_pair();
            run_example_pair(&rho0, &rho1, run, Some(()))
        }
    }
}

fn run_example_pair(
    rho0: &DensityMatrix,
    rho1: &DensityMatrix,
    run: &ExampleRunArgs,
    entangled: Option<()>,
) -> CliResult<()> {
    if let Some(n_max) = run.n_max {
        if n_max == 0 {
            return Err(CliError::Validation("--n-max must be at least 1".into()));
        }
        let out = run.out.as_ref().expect("clap enforces --out with --n-max");
        let csv = sweep::sweep_csv(rho0, rho1, n_max, run.trials, run.seed, run.cap)?;
        std::fs::write(out, csv).map_err(|e| CliError::Io(format!("{}: {e}", out.display())))?;
        return Ok(());
    }
    let report = qhtest::joint::error_bounds(rho0, rho1, run.n, run.cap)?;
    if run.json {
        println!("{}", report::render_json(&report, run.bits));
    } else {
        print!("{}", report::render_text(&report, run.bits));
    }
    if entangled.is_some() && !run.json {
        let psi0 = entangled_vector();
        let analytic = pure_strategy_error(&psi0, rho1, run.n)?;
        println!("separable test (two outcomes: the entangled projector and its complement):");
        println!("  analytic error:   {}", report::fmt_cell(analytic));
        if run.trials > 0 {
            let sim = simulate(&pure_strategy(&psi0), rho0, rho1, run.n, run.trials, run.seed)?;
            println!(
                "  simulated error:  {} +- {}  (trials {}, seed {})",
                report::fmt_cell(sim.avg_error),
                report::fmt_cell(sim.std_err),
                sim.trials,
                sim.seed
            );
        }
        println!("note: both hypotheses have identical single-particle marginals, so no");
        println!("      measurement acting on one particle alone can tell them apart;");
        println!("      the test above measures both particles of each copy together.");
    }
    Ok(())
}

fn run(cli: Cli) -> CliResult<()> {
    match &cli.command {
        Command::Bounds(args) => cmd_bounds(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Example(args) => cmd_example(args),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Validation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
