//! Benchmark report rows and their CSV/JSON renderings.

use std::path::Path;

use serde::Serialize;

use crate::CliError;

/// Serialization target for a benchmark report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
}

impl std::str::FromStr for ReportFormat {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            other => Err(CliError::Usage(format!(
                "unknown report format '{other}' (expected json or csv)"
            ))),
        }
    }
}

impl std::fmt::Display for ReportFormat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ReportFormat::Json => "json",
            ReportFormat::Csv => "csv",
        })
    }
}

/// One (image, method) measurement. The untouched input appears as a
/// reference row with method `original`, zero time, and zero black spots.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRow {
    pub image_id: String,
    pub method: String,
    pub awe: f64,
    pub dwe: f64,
    pub time_ms: f64,
    pub black_spots: u64,
}

/// All rows of a benchmark run plus the per-file failures that did not stop
/// it.
#[derive(Debug, Clone, Default)]
pub struct RunReport {
    pub rows: Vec<ReportRow>,
    pub errors: Vec<String>,
}

impl RunReport {
    pub fn render(&self, format: ReportFormat) -> Result<String, CliError> {
        match format {
            ReportFormat::Csv => {
                let mut writer = csv::Writer::from_writer(Vec::new());
                for row in &self.rows {
                    writer
                        .serialize(row)
                        .map_err(|e| CliError::Io(format!("cannot serialize report: {e}")))?;
                }
                let bytes = writer
                    .into_inner()
                    .map_err(|e| CliError::Io(format!("cannot serialize report: {e}")))?;
                String::from_utf8(bytes)
                    .map_err(|e| CliError::Io(format!("cannot serialize report: {e}")))
            }
            ReportFormat::Json => serde_json::to_string_pretty(&self.rows)
                .map_err(|e| CliError::Io(format!("cannot serialize report: {e}"))),
        }
    }

    pub fn write_to(&self, path: &Path, format: ReportFormat) -> Result<(), CliError> {
        let body = self.render(format)?;
        std::fs::write(path, body)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
    }
}
