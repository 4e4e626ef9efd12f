//! `double-slit` subcommand: screen profile rows, optional impact samples.

use std::fs::File;
use std::io::{BufWriter, Write};

use fewmode::experiments::{double_slit_intensity, double_slit_sample};
use fewmode::quantum_core::SeededRng;

use crate::config::{CommonOpts, ExperimentParams, RawConfig, RunConfig};
use crate::config::resolve_path;
use crate::emit::{ensure_unit_sum, fmt12, open_output, write_line, write_record_file};
use crate::errors::CliError;
use crate::registry::Experiment;

pub struct DoubleSlitRunner;

const KEYS: &[&str] = &[
    "shots",
    "seed",
    "output",
    "record",
    "wavelength",
    "slit-separation",
    "slit-width",
    "distance",
    "half-width",
    "bins",
    "slits",
    "impacts",
];

impl Experiment for DoubleSlitRunner {
    fn name(&self) -> &'static str {
        "double-slit"
    }

    fn allowed_keys(&self) -> &'static [&'static str] {
        KEYS
    }

    fn parse(&self, raw: &RawConfig) -> Result<RunConfig, CliError> {
        let common = CommonOpts::parse(raw)?;
        let slit = crate::config::parse_slit_config(raw)?;
        let impacts = raw.get("impacts").map(resolve_path);
        Ok(RunConfig {
            common,
            params: ExperimentParams::DoubleSlit { slit, impacts },
        })
    }

    fn execute(&self, cfg: &RunConfig) -> Result<(), CliError> {
        let ExperimentParams::DoubleSlit { slit, impacts } = &cfg.params else {
            unreachable!("registry pairs parse with execute");
        };
        let profile = double_slit_intensity(slit);
        ensure_unit_sum(profile.mass(), "double-slit profile")?;

        let mut out = open_output(&cfg.common.output)?;
        write_line(&mut out, &["x".into(), "intensity".into()])?;
        for (k, mass) in profile.mass().iter().enumerate() {
            write_line(&mut out, &[fmt12(profile.bin_center(k)), fmt12(*mass)])?;
        }

        if cfg.common.shots > 0 {
            let mut rng = SeededRng::new(cfg.common.seed);
            let (coordinates, record) = double_slit_sample(slit, cfg.common.shots, &mut rng);
            if let Some(path) = impacts {
                let file = File::create(path).map_err(|source| CliError::Io {
                    path: path.clone(),
                    source,
                })?;
                let mut w = BufWriter::new(file);
                let io_err = |source| CliError::Io {
                    path: path.clone(),
                    source,
                };
                writeln!(w, "trial,x").map_err(io_err)?;
                for (trial, x) in coordinates.iter().enumerate() {
                    writeln!(w, "{trial},{}", fmt12(*x)).map_err(io_err)?;
                }
            }
            if let Some(path) = &cfg.common.record {
                write_record_file(path, &record)?;
            }
        } else if let Some(path) = &cfg.common.record {
            write_record_file(path, &Default::default())?;
        }
        Ok(())
    }
}
