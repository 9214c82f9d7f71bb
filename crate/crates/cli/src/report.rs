//! Report writing: JSON documents and the fixed-column CSV table.

use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::config::{CliError, OutputFormat, Resolved};

#[derive(Debug, Serialize)]
pub struct ReportMeta {
    pub command: String,
    pub p: usize,
    pub seed: u64,
    pub sphere_samples: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct Report<T: Serialize> {
    pub meta: ReportMeta,
    pub results: T,
}

impl ReportMeta {
    pub fn new(command: &str, resolved: &Resolved) -> Self {
        Self {
            command: command.to_string(),
            p: resolved.p,
            seed: resolved.seed,
            sphere_samples: resolved.spec.sphere_samples,
            timestamp: if resolved.no_timestamp {
                None
            } else {
                Some(chrono::Utc::now().to_rfc3339())
            },
        }
    }
}

/// One row of the fixed CSV table shared by cocycle-norm, verdict and scan:
/// (p, element_id, kind, q, norm_closed, se_closed, norm_direct, se_direct,
/// agree, unitary, opnorm, verdict).  Fields that do not apply to a row are
/// left empty.
#[derive(Debug, Clone, Serialize)]
pub struct ElementRow {
    pub p: usize,
    pub element_id: String,
    pub kind: String,
    pub q: f64,
    pub norm_closed: Option<f64>,
    pub se_closed: Option<f64>,
    pub norm_direct: Option<f64>,
    pub se_direct: Option<f64>,
    pub agree: Option<bool>,
    pub unitary: Option<bool>,
    pub opnorm: Option<f64>,
    pub verdict: String,
}

fn write_to(output: Option<&Path>, bytes: &[u8]) -> Result<(), CliError> {
    match output {
        Some(path) => std::fs::write(path, bytes)?,
        None => std::io::stdout().write_all(bytes)?,
    }
    Ok(())
}

pub fn csv_bytes<R: Serialize>(rows: &[R]) -> Result<Vec<u8>, CliError> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for row in rows {
        writer
            .serialize(row)
            .map_err(|e| CliError::Io(e.to_string()))?;
    }
    writer
        .into_inner()
        .map_err(|e| CliError::Io(e.to_string()))
}

/// Emits the report in the selected format.  JSON carries the full result
/// document; CSV carries the tabular rows only.
pub fn emit<T: Serialize, R: Serialize>(
    resolved: &Resolved,
    report: &Report<T>,
    rows: &[R],
) -> Result<(), CliError> {
    match resolved.format {
        OutputFormat::Json => {
            let mut text = serde_json::to_string_pretty(report)
                .map_err(|e| CliError::Io(e.to_string()))?;
            text.push('\n');
            write_to(resolved.output.as_deref(), text.as_bytes())
        }
        OutputFormat::Csv => {
            let bytes = csv_bytes(rows)?;
            write_to(resolved.output.as_deref(), &bytes)
        }
    }
}
