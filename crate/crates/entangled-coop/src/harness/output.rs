//! Result emission with stable, machine-readable schemas.
//!
//! CSV output always carries a header row, even for zero rows, so
//! downstream tooling can rely on the schema. JSON output is an array of
//! flat objects mirroring the CSV columns.

use serde::Serialize;
use std::fs::File;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum OutputError {
    #[error("failed to create {}: {source}", path.display())]
    Create {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("write failed: {0}")]
    Io(#[from] io::Error),
    #[error("CSV encoding failed: {0}")]
    Csv(#[from] csv::Error),
    #[error("JSON encoding failed: {0}")]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl std::str::FromStr for OutputFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(format!("unknown format {other:?}; expected csv or json")),
        }
    }
}

/// A row type with a fixed column set. `COLUMNS` must list the serialized
/// field names in declaration order; a test in this module keeps every
/// implementation in sync.
pub trait TabularRecord: Serialize {
    const COLUMNS: &'static [&'static str];
}

/// Write rows as RFC-4180 CSV with an explicit header. Floats use the
/// shortest round-trip form, empty optionals become empty fields.
pub fn write_csv<T: TabularRecord, W: Write>(rows: &[T], writer: W) -> Result<(), OutputError> {
    let mut csv_writer = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(writer);
    csv_writer.write_record(T::COLUMNS)?;
    for row in rows {
        csv_writer.serialize(row)?;
    }
    csv_writer.flush()?;
    Ok(())
}

/// Write rows as a pretty-printed JSON array of flat objects.
pub fn write_json<T: Serialize, W: Write>(rows: &[T], mut writer: W) -> Result<(), OutputError> {
    serde_json::to_writer_pretty(&mut writer, rows)?;
    writeln!(writer)?;
    Ok(())
}

/// Emit rows to a file, or to stdout when no path is given.
pub fn emit<T: TabularRecord>(
    rows: &[T],
    format: OutputFormat,
    out: Option<&Path>,
) -> Result<(), OutputError> {
    match out {
        Some(path) => {
            let file = File::create(path).map_err(|source| OutputError::Create {
                path: path.to_path_buf(),
                source,
            })?;
            emit_to_writer(rows, format, io::BufWriter::new(file))
        }
        None => {
            let stdout = io::stdout();
            emit_to_writer(rows, format, stdout.lock())
        }
    }
}

fn emit_to_writer<T: TabularRecord, W: Write>(
    rows: &[T],
    format: OutputFormat,
    writer: W,
) -> Result<(), OutputError> {
    match format {
        OutputFormat::Csv => write_csv(rows, writer),
        OutputFormat::Json => write_json(rows, writer),
    }
}

impl TabularRecord for crate::ant::PushRecord {
    const COLUMNS: &'static [&'static str] = &[
        "attempt", "beta1", "beta2", "pushed1", "pushed2", "dx", "dy",
    ];
}

impl TabularRecord for crate::butterfly::FlightRecord {
    const COLUMNS: &'static [&'static str] = &[
        "round",
        "direction_1",
        "flew_1",
        "accepted_1",
        "intensity_before_1",
        "intensity_after_1",
        "direction_2",
        "flew_2",
        "accepted_2",
        "intensity_before_2",
        "intensity_after_2",
        "flights_this_round",
    ];
}

impl TabularRecord for crate::expectation::GainCurvePoint {
    const COLUMNS: &'static [&'static str] =
        &["f_min", "ratio", "ratio_error_estimate", "degenerate_flag"];
}

impl TabularRecord for super::AntRunRow {
    const COLUMNS: &'static [&'static str] = &[
        "scenario",
        "run",
        "seed",
        "mode",
        "strength_1",
        "strength_2",
        "f_min",
        "z",
        "g",
        "n_attempts",
        "final_x",
        "final_y",
        "metric",
        "solo_moves",
        "joint_moves",
        "futile_pushes",
        "idle_attempts",
        "converged",
    ];
}

impl TabularRecord for super::ButterflyRunRow {
    const COLUMNS: &'static [&'static str] = &[
        "scenario",
        "run",
        "seed",
        "mode",
        "initial_distance",
        "step_length",
        "lambda",
        "threshold_fraction",
        "n_directions",
        "meet_distance",
        "rounds",
        "final_distance",
        "total_flights",
        "metric",
        "converged",
    ];
}

impl TabularRecord for super::LambdaSweepRow {
    const COLUMNS: &'static [&'static str] = &[
        "lambda",
        "mode",
        "n_runs",
        "mean",
        "std_dev",
        "min",
        "max",
        "non_converged",
    ];
}

impl TabularRecord for super::TheoryComparisonRow {
    const COLUMNS: &'static [&'static str] = &[
        "strength_1",
        "strength_2",
        "f_min",
        "z",
        "grid_points_per_axis",
        "entangled_y",
        "entangled_error",
        "independent_y",
        "independent_error",
        "ratio",
        "ratio_error_estimate",
        "degenerate_flag",
    ];
}
