//! `rto` subcommand: joint two-photon statistics per phase-difference point.

use std::f64::consts::TAU;

use fewmode::experiments::{rto_joint, rto_sample, JointStats, MeasurementRecord, RtoConfig};
use fewmode::optical_elements::PhaseSetting;
use fewmode::quantum_core::SeededRng;

use crate::config::{CommonOpts, ExperimentParams, RawConfig, RunConfig};
use crate::emit::{ensure_unit_sum, fmt12, open_output, write_line, write_record_file};
use crate::errors::CliError;
use crate::registry::{run_points, Experiment};

pub struct RtoRunner;

const KEYS: &[&str] = &["sweep", "shots", "seed", "output", "record", "phi-a", "phi-b"];

impl Experiment for RtoRunner {
    fn name(&self) -> &'static str {
        "rto"
    }

    fn allowed_keys(&self) -> &'static [&'static str] {
        KEYS
    }

    fn parse(&self, raw: &RawConfig) -> Result<RunConfig, CliError> {
        Ok(RunConfig {
            common: CommonOpts::parse(raw)?,
            params: ExperimentParams::Rto {
                phi_a: raw.phase_or_zero("phi-a")?,
                phi_b: raw.phase_or_zero("phi-b")?,
            },
        })
    }

    fn execute(&self, cfg: &RunConfig) -> Result<(), CliError> {
        let ExperimentParams::Rto { phi_a, phi_b } = &cfg.params else {
            unreachable!("registry pairs parse with execute");
        };
        // a sweep varies φ_B against the fixed φ_A
        let points: Vec<f64> = match &cfg.common.sweep {
            Some(sweep) => sweep.points(),
            None => vec![phi_b.radians()],
        };
        let shots = cfg.common.shots;
        let seed = cfg.common.seed;
        let results = run_points(&points, |k, point| {
            let pb = PhaseSetting::new(point).map_err(CliError::from)?;
            let config = RtoConfig::new(*phi_a, pb);
            let (stats, record): (JointStats, Option<MeasurementRecord>) = if shots > 0 {
                let mut rng = SeededRng::for_point(seed, k);
                let (stats, record) = rto_sample(&config, shots, &mut rng);
                (stats, Some(record))
            } else {
                (rto_joint(&config), None)
            };
            ensure_unit_sum(
                &[stats.p_a1_b1, stats.p_a1_b2, stats.p_a2_b1, stats.p_a2_b2],
                "rto joint row",
            )?;
            let phase_diff = (pb.radians() - phi_a.radians()).rem_euclid(TAU);
            let row = vec![
                fmt12(phase_diff),
                fmt12(stats.p_correlated()),
                fmt12(stats.p_anticorrelated()),
                fmt12(stats.correlation),
                fmt12(stats.p_a1),
                fmt12(stats.p_b1),
            ];
            Ok((row, record))
        })?;

        let mut out = open_output(&cfg.common.output)?;
        write_line(
            &mut out,
            &[
                "phase_diff".into(),
                "p_corr".into(),
                "p_anti".into(),
                "E".into(),
                "pA1".into(),
                "pB1".into(),
            ],
        )?;
        let mut merged = MeasurementRecord::new();
        for (row, record) in results {
            write_line(&mut out, &row)?;
            if let Some(r) = record {
                merged.extend_from(&r);
            }
        }
        if let Some(path) = &cfg.common.record {
            write_record_file(path, &merged)?;
        }
        Ok(())
    }
}
