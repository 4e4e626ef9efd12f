//! Run configuration: flat key-value config files, command-line overrides,
//! and the validated `RunConfig` handed to experiment runners.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use fewmode::analysis::ChshSettings;
use fewmode::experiments::{SlitChoice, SlitConfig};
use fewmode::optical_elements::PhaseSetting;

use crate::errors::CliError;

/// Environment variable that redirects relative output paths.
pub const OUTPUT_DIR_ENV: &str = "FEWMODE_OUTPUT_DIR";

/// Merged raw configuration: file values overridden by command-line values,
/// all still text.
#[derive(Debug, Clone, Default)]
pub struct RawConfig {
    pub experiment: String,
    values: BTreeMap<String, String>,
}

/// Parse a flat `key = value` document: UTF-8, one pair per line, `#`
/// starts a comment.
pub fn parse_config_file(path: &Path) -> Result<BTreeMap<String, String>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let mut values = BTreeMap::new();
    for (lineno, raw_line) in text.lines().enumerate() {
        let line = match raw_line.find('#') {
            Some(idx) => &raw_line[..idx],
            None => raw_line,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(CliError::ConfigFile {
                path: path.to_path_buf(),
                message: format!("line {}: expected `key = value`", lineno + 1),
            });
        };
        let key = key.trim().to_string();
        if key.is_empty() {
            return Err(CliError::ConfigFile {
                path: path.to_path_buf(),
                message: format!("line {}: empty key", lineno + 1),
            });
        }
        if values.insert(key.clone(), value.trim().to_string()).is_some() {
            return Err(CliError::ConfigFile {
                path: path.to_path_buf(),
                message: format!("line {}: key `{key}` repeated", lineno + 1),
            });
        }
    }
    Ok(values)
}

impl RawConfig {
    /// Assemble the raw configuration for one run: optional file values
    /// first, command-line pairs overriding them.
    pub fn assemble(
        experiment: &str,
        config_path: Option<&Path>,
        cli_pairs: Vec<(&'static str, String)>,
    ) -> Result<Self, CliError> {
        let mut values = match config_path {
            Some(path) => parse_config_file(path)?,
            None => BTreeMap::new(),
        };
        if let Some(file_experiment) = values.remove("experiment") {
            if file_experiment != experiment {
                return Err(CliError::ExperimentMismatch {
                    file: file_experiment,
                    cli: experiment.to_string(),
                });
            }
        }
        for (key, value) in cli_pairs {
            values.insert(key.to_string(), value);
        }
        Ok(Self {
            experiment: experiment.to_string(),
            values,
        })
    }

    /// Reject any key the experiment does not understand.
    pub fn check_keys(&self, allowed: &[&str]) -> Result<(), CliError> {
        for key in self.values.keys() {
            if !allowed.contains(&key.as_str()) {
                return Err(CliError::UnsupportedField {
                    field: key.clone(),
                    experiment: self.experiment.clone(),
                });
            }
        }
        Ok(())
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    pub fn get_f64(&self, key: &str) -> Result<Option<f64>, CliError> {
        self.get(key)
            .map(|v| {
                v.parse::<f64>().map_err(|_| CliError::MalformedNumber {
                    field: key.to_string(),
                    value: v.to_string(),
                })
            })
            .transpose()
    }

    pub fn get_u64(&self, key: &str) -> Result<Option<u64>, CliError> {
        self.get(key)
            .map(|v| {
                v.parse::<u64>().map_err(|_| CliError::MalformedNumber {
                    field: key.to_string(),
                    value: v.to_string(),
                })
            })
            .transpose()
    }

    pub fn get_usize(&self, key: &str) -> Result<Option<usize>, CliError> {
        self.get(key)
            .map(|v| {
                v.parse::<usize>().map_err(|_| CliError::MalformedNumber {
                    field: key.to_string(),
                    value: v.to_string(),
                })
            })
            .transpose()
    }

    /// A phase field: finite radians, reduced into [0, 2π).
    pub fn get_phase(&self, key: &str) -> Result<Option<PhaseSetting>, CliError> {
        match self.get_f64(key)? {
            None => Ok(None),
            Some(radians) => PhaseSetting::new(radians)
                .map(Some)
                .map_err(|e| CliError::InvalidField {
                    field: key.to_string(),
                    message: e.to_string(),
                }),
        }
    }

    pub fn f64_or(&self, key: &str, default: f64) -> Result<f64, CliError> {
        Ok(self.get_f64(key)?.unwrap_or(default))
    }

    pub fn phase_or_zero(&self, key: &str) -> Result<PhaseSetting, CliError> {
        Ok(self.get_phase(key)?.unwrap_or(PhaseSetting::ZERO))
    }
}

/// `start:stop:steps` sweep: `steps` evenly spaced points including
/// `start`, excluding `stop`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl SweepSpec {
    pub fn parse(field: &str, text: &str) -> Result<Self, CliError> {
        let parts: Vec<&str> = text.split(':').collect();
        let invalid = |message: String| CliError::InvalidField {
            field: field.to_string(),
            message,
        };
        if parts.len() != 3 {
            return Err(invalid(format!(
                "expected `start:stop:steps`, got `{text}`"
            )));
        }
        let number = |s: &str| -> Result<f64, CliError> {
            s.parse::<f64>().map_err(|_| CliError::MalformedNumber {
                field: field.to_string(),
                value: s.to_string(),
            })
        };
        let start = number(parts[0])?;
        let stop = number(parts[1])?;
        let steps: usize = parts[2].parse().map_err(|_| CliError::MalformedNumber {
            field: field.to_string(),
            value: parts[2].to_string(),
        })?;
        if !start.is_finite() || !stop.is_finite() {
            return Err(invalid("sweep bounds must be finite".into()));
        }
        if steps < 1 {
            return Err(invalid("steps must be at least 1".into()));
        }
        if steps > 1_000_000 {
            return Err(invalid(format!("steps {steps} exceeds the 1e6 cap")));
        }
        if stop < start {
            return Err(invalid(format!("stop {stop} is below start {start}")));
        }
        Ok(Self { start, stop, steps })
    }

    pub fn points(&self) -> Vec<f64> {
        let width = (self.stop - self.start) / self.steps as f64;
        (0..self.steps)
            .map(|k| self.start + k as f64 * width)
            .collect()
    }
}

/// Where CSV rows go.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OutputTarget {
    Stdout,
    File(PathBuf),
}

/// Prefix relative paths with `FEWMODE_OUTPUT_DIR` when it is set.
pub fn resolve_path(raw: &str) -> PathBuf {
    let path = PathBuf::from(raw);
    if path.is_relative() {
        if let Ok(dir) = std::env::var(OUTPUT_DIR_ENV) {
            if !dir.is_empty() {
                return PathBuf::from(dir).join(path);
            }
        }
    }
    path
}

/// Options shared by every experiment.
#[derive(Debug, Clone)]
pub struct CommonOpts {
    pub sweep: Option<SweepSpec>,
    /// Trials per sweep point; 0 means analytic evaluation.
    pub shots: u64,
    pub seed: u64,
    pub output: OutputTarget,
    pub record: Option<PathBuf>,
}

impl CommonOpts {
    pub fn parse(raw: &RawConfig) -> Result<Self, CliError> {
        let sweep = raw
            .get("sweep")
            .map(|text| SweepSpec::parse("sweep", text))
            .transpose()?;
        let shots = raw.get_u64("shots")?.unwrap_or(0);
        let seed = raw.get_u64("seed")?.unwrap_or(0);
        let output = match raw.get("output") {
            None | Some("-") => OutputTarget::Stdout,
            Some(path) => OutputTarget::File(resolve_path(path)),
        };
        let record = raw.get("record").map(resolve_path);
        Ok(Self {
            sweep,
            shots,
            seed,
            output,
            record,
        })
    }
}

/// Interferometer arrangement requested on the command line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MzModeArg {
    Open,
    Closed,
    Delayed { front_fraction: f64 },
}

/// Where a Bell run gets its analyzer settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BellSource {
    Canonical,
    Delta(f64),
    Explicit(ChshSettings),
    /// Settings derived per sweep point from the swept phase difference.
    SweptDelta,
}

/// Experiment-specific validated parameters.
#[derive(Debug, Clone)]
pub enum ExperimentParams {
    Mz {
        mode: MzModeArg,
        phi1: PhaseSetting,
        phi2: PhaseSetting,
    },
    Rto {
        phi_a: PhaseSetting,
        phi_b: PhaseSetting,
    },
    DoubleSlit {
        slit: SlitConfig,
        impacts: Option<PathBuf>,
    },
    Cat,
    Bell {
        source: BellSource,
    },
    TableOne,
}

/// A fully validated run: common options plus experiment parameters.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub common: CommonOpts,
    pub params: ExperimentParams,
}

pub fn parse_slit_choice(raw: &RawConfig) -> Result<SlitChoice, CliError> {
    match raw.get("slits") {
        None | Some("both") => Ok(SlitChoice::Both),
        Some("slit1") => Ok(SlitChoice::Slit1),
        Some("slit2") => Ok(SlitChoice::Slit2),
        Some(other) => Err(CliError::InvalidField {
            field: "slits".into(),
            message: format!("expected one of both, slit1, slit2; got `{other}`"),
        }),
    }
}

pub fn parse_slit_config(raw: &RawConfig) -> Result<SlitConfig, CliError> {
    let wavelength = raw.f64_or("wavelength", 633e-9)?;
    let separation = raw.f64_or("slit-separation", 1e-4)?;
    let width = raw.f64_or("slit-width", 2e-5)?;
    let distance = raw.f64_or("distance", 1.0)?;
    let half_width = raw.f64_or("half-width", 0.025)?;
    let bins = raw.get_usize("bins")?.unwrap_or(256);
    let slits = parse_slit_choice(raw)?;
    SlitConfig::new(
        wavelength, separation, width, distance, slits, half_width, bins,
    )
    .map_err(CliError::from)
}
