//! Batch driver: reads a run configuration, dispatches one experiment, and
//! writes CSV artifacts plus a JSON summary.

pub mod config;
pub mod experiments;
pub mod output;
pub mod selftest;

use std::path::{Path, PathBuf};

use serde::Serialize;
use thiserror::Error;

pub use config::{Experiment, RunConfig};

/// Overrides the configured output directory.
pub const OUTPUT_DIR_ENV: &str = "EQUICONV_OUTPUT_DIR";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid config: field `{field}`: {message}")]
    Config { field: String, message: String },
    #[error("numerical failure: {0}")]
    Numerical(#[from] equiconv::Error),
    #[error("cannot access {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    /// 1 for an invalid configuration, 2 for anything that failed while running.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config { .. } => 1,
            _ => 2,
        }
    }
}

/// One verdict: passes when `value <= threshold`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub value: f64,
    pub threshold: f64,
}

impl Check {
    pub fn at_most(name: impl Into<String>, value: f64, threshold: f64) -> Self {
        Self {
            name: name.into(),
            passed: value <= threshold,
            value,
            threshold,
        }
    }

    pub fn at_least(name: impl Into<String>, value: f64, threshold: f64) -> Self {
        Self {
            name: name.into(),
            passed: value >= threshold,
            value,
            threshold,
        }
    }
}

/// A CSV artifact before the config header is prepended.
#[derive(Debug, Clone, PartialEq)]
pub struct Artifact {
    pub name: String,
    pub body: String,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ExperimentOutput {
    pub artifacts: Vec<Artifact>,
    pub checks: Vec<Check>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunSummary {
    pub experiment: &'static str,
    pub passed: bool,
    pub checks: Vec<Check>,
    pub files: Vec<String>,
    pub config: String,
}

impl RunSummary {
    pub fn failed(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed).count()
    }
}

/// Output directory: the environment override if set, else the configured one.
pub fn resolve_output_dir(config: &RunConfig) -> PathBuf {
    match std::env::var_os(OUTPUT_DIR_ENV) {
        Some(dir) if !dir.is_empty() => PathBuf::from(dir),
        _ => config.output_dir.clone(),
    }
}

/// Runs the experiment and writes its artifacts and `summary.json` into `dir`.
pub fn run_into(config: &RunConfig, dir: &Path) -> Result<RunSummary, CliError> {
    config.validate()?;
    let output = experiments::execute(config)?;
    let config_text = config.to_toml_string();
    let header = output::config_header(&config_text);
    let mut files = Vec::new();
    for a in &output.artifacts {
        output::write_atomic(dir, &a.name, &format!("{header}{}", a.body))?;
        files.push(a.name.clone());
    }
    let summary = RunSummary {
        experiment: config.experiment.name(),
        passed: output.checks.iter().all(|c| c.passed),
        checks: output.checks,
        files,
        config: config_text,
    };
    let json = serde_json::to_string_pretty(&summary).expect("summary serializes to JSON");
    output::write_atomic(dir, "summary.json", &(json + "\n"))?;
    Ok(summary)
}

pub fn run(config: &RunConfig) -> Result<RunSummary, CliError> {
    run_into(config, &resolve_output_dir(config))
}
