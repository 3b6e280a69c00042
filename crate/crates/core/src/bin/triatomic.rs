use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use triatomic::cli::{self, CliError, ExperimentConfig, ExperimentKind, Format, RunOptions};

#[derive(Parser)]
#[command(
    name = "triatomic",
    version,
    about = "Three-body shape dynamics and holonomy experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    config: PathBuf,
    /// Overrides `[output] path`.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate the reduced system.
    Simulate(RunArgs),
    /// Integrate the full Cartesian system.
    SimulateFull(RunArgs),
    /// Holonomy of a closed shape loop by three routes.
    Holonomy(RunArgs),
    /// Plane drift of the horizontal frame lift.
    LemmaCheck(RunArgs),
    /// Democracy angle between two clusterings.
    Democracy(RunArgs),
    /// Randomized consistency checks.
    Checks(RunArgs),
    /// Run two configurations and compare their samples.
    Compare {
        /// Exactly two configuration files.
        #[arg(long, num_args = 2, required = true)]
        config: Vec<PathBuf>,
        /// Experiment for files that do not declare one.
        #[arg(long)]
        experiment: Option<String>,
        #[arg(long, default_value_t = 1e-6)]
        tolerance: f64,
        /// Comma-separated columns; all shared columns by default.
        #[arg(long, value_delimiter = ',')]
        columns: Option<Vec<String>>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn parse_kind(name: &str) -> Result<ExperimentKind, CliError> {
    serde_json::from_value(serde_json::Value::String(name.to_string()))
        .map_err(|_| CliError::Config(format!("unknown experiment '{name}'")))
}

fn resolve_kind(
    config: &ExperimentConfig,
    requested: Option<ExperimentKind>,
    path: &Path,
) -> Result<ExperimentKind, CliError> {
    config.experiment.or(requested).ok_or_else(|| {
        CliError::Config(format!(
            "{}: no experiment given; set `experiment` or pass --experiment",
            path.display()
        ))
    })
}

fn run(kind: ExperimentKind, args: RunArgs) -> Result<bool, CliError> {
    let config = ExperimentConfig::load(&args.config)?;
    let options = RunOptions {
        out: args.out,
        format: args.format,
        seed: args.seed,
    };
    let outcome = cli::run(&config, kind, &options, &mut std::io::stdout().lock())?;
    Ok(outcome.passed)
}

fn dispatch(command: Command) -> Result<bool, CliError> {
    match command {
        Command::Simulate(a) => run(ExperimentKind::Simulate, a),
        Command::SimulateFull(a) => run(ExperimentKind::SimulateFull, a),
        Command::Holonomy(a) => run(ExperimentKind::Holonomy, a),
        Command::LemmaCheck(a) => run(ExperimentKind::LemmaCheck, a),
        Command::Democracy(a) => run(ExperimentKind::Democracy, a),
        Command::Checks(a) => run(ExperimentKind::Checks, a),
        Command::Compare {
            config,
            experiment,
            tolerance,
            columns,
            seed,
        } => {
            let requested = experiment.as_deref().map(parse_kind).transpose()?;
            let a = ExperimentConfig::load(&config[0])?;
            let b = ExperimentConfig::load(&config[1])?;
            let ka = resolve_kind(&a, requested, &config[0])?;
            let kb = resolve_kind(&b, requested, &config[1])?;
            let cmp = cli::compare((&a, ka), (&b, kb), columns.as_deref(), tolerance, seed)?;
            cli::write_comparison(&mut std::io::stdout().lock(), &cmp)
                .map_err(|e| CliError::Io(e.to_string()))?;
            Ok(cmp.passed())
        }
    }
}

fn main() -> ExitCode {
    match dispatch(Cli::parse().command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
