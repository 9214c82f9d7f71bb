//! Config loading: JSON schema validation first, typed deserialization
//! second, CLI flag overrides last.

use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde::Deserialize;

use iwasawa_core::{QuadratureSpec, RadialRule, Truncation};

use crate::elements::ElementSpec;
use crate::Cli;

/// The schema shipped in-repo at /schema/runconfig.json, embedded so the
/// binary validates configs without a checkout.
pub const SCHEMA_TEXT: &str = include_str!("../../../schema/runconfig.json");

#[derive(Debug)]
pub enum CliError {
    /// Exit 2: bad configuration or schema violation.
    Config(String),
    /// Exit 1: a scientific check failed.
    Check(String),
    /// Exit 2: filesystem trouble.
    Io(String),
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
}

/// On-disk configuration; every field optional, flags win over file values.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub p: Option<usize>,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    pub trials: Option<usize>,
    pub radial: Option<RadialRule>,
    pub truncation: Option<Truncation>,
    pub delta_grid: Option<Vec<f64>>,
    pub elements: Option<Vec<ElementSpec>>,
    pub q_grid: Option<Vec<f64>>,
    pub s_samples: Option<usize>,
    pub n_samples: Option<usize>,
    pub matrix: Option<serde_json::Value>,
    pub q: Option<f64>,
    pub tol: Option<f64>,
    pub inject_fault: Option<bool>,
    pub output: Option<PathBuf>,
    pub format: Option<OutputFormat>,
    pub no_timestamp: Option<bool>,
}

pub fn load_config(path: &Path) -> Result<RunConfig, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| CliError::Config(format!("{} is not valid JSON: {e}", path.display())))?;

    let schema: serde_json::Value =
        serde_json::from_str(SCHEMA_TEXT).expect("embedded schema is valid JSON");
    let validator = jsonschema::validator_for(&schema)
        .expect("embedded schema compiles");
    let violations: Vec<String> = validator
        .iter_errors(&value)
        .map(|err| format!("{} (at instance path {})", err, err.instance_path))
        .collect();
    if !violations.is_empty() {
        return Err(CliError::Config(format!(
            "{} violates the runconfig schema:\n  {}",
            path.display(),
            violations.join("\n  ")
        )));
    }

    let config: RunConfig = serde_json::from_value(value)
        .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    Ok(config)
}

/// Fully resolved settings for a run.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub p: usize,
    pub seed: u64,
    pub spec: QuadratureSpec,
    pub trials: usize,
    pub delta_grid: Vec<f64>,
    pub output: Option<PathBuf>,
    pub format: OutputFormat,
    pub no_timestamp: bool,
    pub config: RunConfig,
}

pub fn resolve(cli: &Cli) -> Result<Resolved, CliError> {
    let config = match &cli.config {
        Some(path) => load_config(path)?,
        None => RunConfig::default(),
    };

    let p = cli.p.or(config.p).unwrap_or(2);
    if p == 0 || p > 8 {
        return Err(CliError::Config(format!("p must be in 1..=8, got {p}")));
    }
    let seed = cli.seed.or(config.seed).unwrap_or(42);
    let samples = cli.samples.or(config.samples).unwrap_or(20_000);

    let mut spec = QuadratureSpec::new(seed).with_samples(samples);
    if let Some(radial) = &config.radial {
        spec.radial_rule = radial.clone();
    }
    if let Some(truncation) = &config.truncation {
        spec.radial_truncation = *truncation;
    }
    spec.validate()
        .map_err(|e| CliError::Config(e.to_string()))?;

    let delta_grid = config
        .delta_grid
        .clone()
        .unwrap_or_else(iwasawa_core::quadrature::default_delta_grid);
    if delta_grid.len() < 4 || delta_grid.windows(2).any(|w| w[1] >= w[0]) {
        return Err(CliError::Config(
            "delta_grid must have ≥ 4 strictly decreasing positive entries".into(),
        ));
    }

    Ok(Resolved {
        p,
        seed,
        spec,
        trials: config.trials.unwrap_or(100),
        delta_grid,
        output: cli.output.clone().or_else(|| config.output.clone()),
        format: cli
            .format
            .or(config.format)
            .unwrap_or(OutputFormat::Json),
        no_timestamp: cli.no_timestamp || config.no_timestamp.unwrap_or(false),
        config,
    })
}
