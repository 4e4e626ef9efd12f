//! CSV emission: fixed 12-decimal float formatting, row invariant checks,
//! and output plumbing.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use fewmode::experiments::MeasurementRecord;

use crate::config::OutputTarget;
use crate::errors::CliError;

/// Fixed-point with 12 decimal places, negative zero normalized, chosen so
/// identical runs diff byte-for-byte.
pub fn fmt12(x: f64) -> String {
    let s = format!("{x:.12}");
    if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
        s[1..].to_string()
    } else {
        s
    }
}

/// Probabilities that must sum to 1 are checked before anything is written.
pub fn ensure_unit_sum(parts: &[f64], context: &str) -> Result<(), CliError> {
    let total: f64 = parts.iter().sum();
    if (total - 1.0).abs() > 1e-9 {
        return Err(CliError::Invariant(format!(
            "{context}: probabilities sum to {total}, expected 1"
        )));
    }
    Ok(())
}

pub fn open_output(target: &OutputTarget) -> Result<Box<dyn Write>, CliError> {
    match target {
        OutputTarget::Stdout => Ok(Box::new(BufWriter::new(std::io::stdout()))),
        OutputTarget::File(path) => {
            let file = File::create(path).map_err(|source| CliError::Io {
                path: path.clone(),
                source,
            })?;
            Ok(Box::new(BufWriter::new(file)))
        }
    }
}

pub fn write_line(out: &mut dyn Write, cells: &[String]) -> Result<(), CliError> {
    writeln!(out, "{}", cells.join(",")).map_err(io_on_stream)
}

pub fn io_on_stream(source: std::io::Error) -> CliError {
    CliError::Io {
        path: "<output>".into(),
        source,
    }
}

pub fn write_record_file(path: &Path, record: &MeasurementRecord) -> Result<(), CliError> {
    let file = File::create(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let mut writer = BufWriter::new(file);
    record.write_csv(&mut writer).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}
