//! Batch front end: experiment configurations, runs and comparisons.
//!
//! A run resolves an [`ExperimentConfig`], executes one experiment kind and
//! produces an [`Outcome`]: an optional sample table plus summary lines.
//! [`run`] writes the table (CSV or JSON, with the resolved configuration
//! embedded) and the summary; [`compare`] executes two configurations side
//! by side and reports per-column deviations.

pub mod checks;
pub mod config;
mod experiments;
pub mod table;

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use thiserror::Error;

pub use config::{ExperimentConfig, ExperimentKind, Format};
pub use table::{compare_tables, Comparison, Table};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("mismatched time grids: {0}")]
    MismatchedGrids(String),
    #[error(transparent)]
    Domain(#[from] crate::Error),
    #[error("{0}")]
    Integration(String),
}

impl CliError {
    /// Process exit status for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::MismatchedGrids(_) => 2,
            CliError::Domain(_) | CliError::Integration(_) => 3,
            CliError::Io(_) => 4,
        }
    }
}

/// Result of executing one experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub kind: ExperimentKind,
    pub table: Option<Table>,
    /// Ordered `(key, value)` lines.
    pub summary: Vec<(String, String)>,
    /// False when a verification threshold was missed.
    pub passed: bool,
}

impl Outcome {
    fn new(kind: ExperimentKind) -> Self {
        Self {
            kind,
            table: None,
            summary: Vec::new(),
            passed: true,
        }
    }

    fn note(&mut self, key: &str, value: impl std::fmt::Display) {
        self.summary.push((key.to_string(), value.to_string()));
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.summary
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }
}

/// An experiment that stopped early, with whatever it produced so far.
#[derive(Debug, Clone)]
pub struct Failure {
    pub error: CliError,
    pub partial: Option<Outcome>,
}

impl From<CliError> for Failure {
    fn from(error: CliError) -> Self {
        Self {
            error,
            partial: None,
        }
    }
}

impl From<crate::Error> for Failure {
    fn from(error: crate::Error) -> Self {
        CliError::from(error).into()
    }
}

/// Executes an experiment without touching the filesystem.
pub fn execute(
    config: &ExperimentConfig,
    kind: ExperimentKind,
    seed: u64,
) -> Result<Outcome, Failure> {
    if let Some(declared) = config.experiment {
        if declared != kind {
            return Err(CliError::Config(format!(
                "configuration declares experiment '{}' but '{}' was requested",
                declared.name(),
                kind.name()
            ))
            .into());
        }
    }
    match kind {
        ExperimentKind::Simulate => experiments::simulate(config),
        ExperimentKind::SimulateFull => experiments::simulate_full(config),
        ExperimentKind::Holonomy => experiments::holonomy(config),
        ExperimentKind::LemmaCheck => experiments::lemma_check(config),
        ExperimentKind::Democracy => experiments::democracy(config, seed),
        ExperimentKind::Checks => experiments::checks(config, seed),
    }
}

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    /// Overrides `[output] path`.
    pub out: Option<PathBuf>,
    /// Overrides `[output] format`.
    pub format: Option<Format>,
    pub seed: u64,
}

fn header(config: &ExperimentConfig, kind: ExperimentKind, seed: u64) -> String {
    format!(
        "experiment: {}\nseed: {seed}\n--- resolved configuration ---\n{}",
        kind.name(),
        config.to_toml()
    )
}

fn write_outcome(
    outcome: &Outcome,
    config: &ExperimentConfig,
    path: &Path,
    format: Format,
    seed: u64,
) -> Result<(), CliError> {
    let Some(table) = &outcome.table else {
        return Ok(());
    };
    let table = table.thinned(config.output.stride);
    let io = |e: std::io::Error| CliError::Io(format!("{}: {e}", path.display()));
    let mut out = BufWriter::new(File::create(path).map_err(io)?);
    match format {
        Format::Csv => table
            .write_csv(&mut out, &header(config, outcome.kind, seed))
            .map_err(io)?,
        Format::Json => {
            let mut cfg = serde_json::to_value(config).expect("configuration serializes");
            if let serde_json::Value::Object(map) = &mut cfg {
                map.insert("experiment".into(), outcome.kind.name().into());
                map.insert("seed".into(), seed.into());
            }
            let summary: BTreeMap<String, String> = outcome.summary.iter().cloned().collect();
            table.write_json(&mut out, &cfg, &summary).map_err(io)?
        }
    }
    out.flush().map_err(io)
}

fn write_summary<W: Write>(out: &mut W, outcome: &Outcome) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::Io(e.to_string());
    writeln!(out, "experiment: {}", outcome.kind.name()).map_err(io)?;
    for (k, v) in &outcome.summary {
        writeln!(out, "{k}: {v}").map_err(io)?;
    }
    writeln!(
        out,
        "status: {}",
        if outcome.passed { "pass" } else { "FAIL" }
    )
    .map_err(io)
}

/// Executes, writes the output file (if a path is configured) and the
/// summary. On a domain failure the partial table is flushed before the
/// error is returned.
pub fn run<W: Write>(
    config: &ExperimentConfig,
    kind: ExperimentKind,
    options: &RunOptions,
    summary_out: &mut W,
) -> Result<Outcome, CliError> {
    let path = options
        .out
        .clone()
        .or_else(|| config.output.path.as_ref().map(PathBuf::from));
    let format = options.format.unwrap_or(config.output.format);
    match execute(config, kind, options.seed) {
        Ok(outcome) => {
            if let Some(path) = &path {
                write_outcome(&outcome, config, path, format, options.seed)?;
            }
            write_summary(summary_out, &outcome)?;
            Ok(outcome)
        }
        Err(Failure { error, partial }) => {
            if let Some(partial) = &partial {
                if let Some(path) = &path {
                    write_outcome(partial, config, path, format, options.seed)?;
                }
                write_summary(summary_out, partial)?;
            }
            Err(error)
        }
    }
}

/// Runs two experiments concurrently and compares their sample tables.
pub fn compare(
    a: (&ExperimentConfig, ExperimentKind),
    b: (&ExperimentConfig, ExperimentKind),
    columns: Option<&[String]>,
    tolerance: f64,
    seed: u64,
) -> Result<Comparison, CliError> {
    let (ra, rb) = std::thread::scope(|scope| {
        let ha = scope.spawn(|| execute(a.0, a.1, seed));
        let hb = scope.spawn(|| execute(b.0, b.1, seed));
        (
            ha.join().expect("run A panicked"),
            hb.join().expect("run B panicked"),
        )
    });
    let ta = ra.map_err(|f| f.error)?.table;
    let tb = rb.map_err(|f| f.error)?.table;
    match (ta, tb) {
        (Some(ta), Some(tb)) => compare_tables(&ta, &tb, columns, tolerance),
        _ => Err(CliError::Config(
            "both experiments must produce sample tables".into(),
        )),
    }
}

/// Writes a comparison report, one line per column.
pub fn write_comparison<W: Write>(out: &mut W, cmp: &Comparison) -> std::io::Result<()> {
    for (name, dev) in &cmp.deviations {
        writeln!(
            out,
            "{name}: max deviation {dev:.3e} [{}]",
            if *dev <= cmp.tolerance {
                "ok"
            } else {
                "EXCEEDS"
            }
        )?;
    }
    writeln!(
        out,
        "max deviation: {:.3e} (tolerance {:e})",
        cmp.max_deviation(),
        cmp.tolerance
    )?;
    writeln!(
        out,
        "status: {}",
        if cmp.passed() { "pass" } else { "FAIL" }
    )
}
