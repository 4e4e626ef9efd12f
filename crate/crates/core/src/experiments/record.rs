//! Append-only log of sampled outcomes.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};

/// One registered outcome: which trial, what was seen, which seed drove it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecordEntry {
    pub trial: u64,
    pub outcome: String,
    pub seed: u64,
}

/// Irreversible registration, modeled as an append-only sequence with a
/// monotone trial index. Entries can be added and read, never edited or
/// removed.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MeasurementRecord {
    entries: Vec<RecordEntry>,
}

impl MeasurementRecord {
    pub fn new() -> Self {
        Self::default()
    }

    /// Register an outcome; the trial index is the current length.
    pub fn append(&mut self, outcome: impl Into<String>, seed: u64) {
        self.entries.push(RecordEntry {
            trial: self.entries.len() as u64,
            outcome: outcome.into(),
            seed,
        });
    }

    /// Append every entry of `other`, re-indexed to continue this record's
    /// trial sequence. Used when sweep points each produce their own record.
    pub fn extend_from(&mut self, other: &MeasurementRecord) {
        for entry in &other.entries {
            self.append(entry.outcome.clone(), entry.seed);
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[RecordEntry] {
        &self.entries
    }

    /// Serialize as CSV with a fixed `trial,outcome,seed` header.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "trial,outcome,seed")?;
        for e in &self.entries {
            writeln!(w, "{},{},{}", e.trial, e.outcome, e.seed)?;
        }
        Ok(())
    }

    /// Parse a record previously written by `write_csv`. Rejects missing
    /// headers, malformed rows, and non-monotone trial indices.
    pub fn read_csv<R: BufRead>(r: R) -> Result<Self> {
        let mut lines = r.lines();
        match lines.next() {
            Some(Ok(header)) if header == "trial,outcome,seed" => {}
            _ => return Err(Error::MalformedRecord("missing header".into())),
        }
        let mut record = Self::new();
        for line in lines {
            let line = line.map_err(|e| Error::MalformedRecord(e.to_string()))?;
            if line.is_empty() {
                continue;
            }
            let mut parts = line.splitn(3, ',');
            let trial: u64 = parts
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| Error::MalformedRecord(format!("bad trial in `{line}`")))?;
            let outcome = parts
                .next()
                .ok_or_else(|| Error::MalformedRecord(format!("missing outcome in `{line}`")))?;
            let seed: u64 = parts
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| Error::MalformedRecord(format!("bad seed in `{line}`")))?;
            if trial != record.entries.len() as u64 {
                return Err(Error::MalformedRecord(format!(
                    "trial index {trial} out of sequence"
                )));
            }
            record.append(outcome, seed);
        }
        Ok(record)
    }
}
