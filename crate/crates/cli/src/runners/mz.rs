//! `mz` subcommand: interferometer detection statistics per phase point.

use std::f64::consts::TAU;

use fewmode::experiments::{mz_delayed, mz_run, DetectionStats, MeasurementRecord, MzConfig};
use fewmode::optical_elements::PhaseSetting;
use fewmode::quantum_core::SeededRng;

use crate::config::{CommonOpts, ExperimentParams, MzModeArg, RawConfig, RunConfig};
use crate::emit::{ensure_unit_sum, fmt12, open_output, write_line, write_record_file};
use crate::errors::CliError;
use crate::registry::{run_points, Experiment};

pub struct MzRunner;

const KEYS: &[&str] = &[
    "sweep",
    "shots",
    "seed",
    "output",
    "record",
    "mode",
    "front-fraction",
    "phi1",
    "phi2",
];

impl Experiment for MzRunner {
    fn name(&self) -> &'static str {
        "mz"
    }

    fn allowed_keys(&self) -> &'static [&'static str] {
        KEYS
    }

    fn parse(&self, raw: &RawConfig) -> Result<RunConfig, CliError> {
        let common = CommonOpts::parse(raw)?;
        let mode = match raw.get("mode") {
            Some("open") => MzModeArg::Open,
            Some("closed") => MzModeArg::Closed,
            Some("delayed") => {
                let front_fraction = raw
                    .get_f64("front-fraction")?
                    .ok_or(CliError::MissingField("front-fraction"))?;
                if !(0.0..=1.0).contains(&front_fraction) {
                    return Err(CliError::InvalidField {
                        field: "front-fraction".into(),
                        message: format!("must be in [0, 1], got {front_fraction}"),
                    });
                }
                MzModeArg::Delayed { front_fraction }
            }
            Some(other) => {
                return Err(CliError::InvalidField {
                    field: "mode".into(),
                    message: format!("expected open, closed or delayed; got `{other}`"),
                })
            }
            None => return Err(CliError::MissingField("mode")),
        };
        Ok(RunConfig {
            common,
            params: ExperimentParams::Mz {
                mode,
                phi1: raw.phase_or_zero("phi1")?,
                phi2: raw.phase_or_zero("phi2")?,
            },
        })
    }

    fn execute(&self, cfg: &RunConfig) -> Result<(), CliError> {
        let ExperimentParams::Mz { mode, phi1, phi2 } = &cfg.params else {
            unreachable!("registry pairs parse with execute");
        };
        let points: Vec<f64> = match &cfg.common.sweep {
            Some(sweep) => sweep.points(),
            None => vec![phi1.radians()],
        };
        let shots = cfg.common.shots;
        let seed = cfg.common.seed;
        let results = run_points(&points, |k, point| {
            let p1 = PhaseSetting::new(point).map_err(CliError::from)?;
            let stats = stats_at(*mode, p1, *phi2);
            let phase_diff = (p1.radians() - phi2.radians()).rem_euclid(TAU);
            let (reported, record) = if shots > 0 {
                let mut rng = SeededRng::for_point(seed, k);
                let (empirical, record) = sample_detections(&stats, shots, &mut rng);
                (empirical, Some(record))
            } else {
                (stats, None)
            };
            ensure_unit_sum(&[reported.p_d1, reported.p_d2], "mz detection row")?;
            let row = vec![
                fmt12(phase_diff),
                fmt12(reported.p_d1),
                fmt12(reported.p_d2),
            ];
            Ok((row, record))
        })?;

        let mut out = open_output(&cfg.common.output)?;
        write_line(&mut out, &["phase_diff".into(), "p_d1".into(), "p_d2".into()])?;
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

fn stats_at(mode: MzModeArg, phi1: PhaseSetting, phi2: PhaseSetting) -> DetectionStats {
    match mode {
        MzModeArg::Open => mz_run(&MzConfig::open(phi1, phi2)),
        MzModeArg::Closed => mz_run(&MzConfig::closed(phi1, phi2)),
        MzModeArg::Delayed { front_fraction } => {
            mz_delayed(phi1, phi2, front_fraction).expect("fraction validated at parse")
        }
    }
}

/// Register single-photon detections one at a time from the detection
/// distribution (which may be a delayed-choice mixture).
fn sample_detections(
    stats: &DetectionStats,
    shots: u64,
    rng: &mut SeededRng,
) -> (DetectionStats, MeasurementRecord) {
    let seed = rng.seed();
    let mut record = MeasurementRecord::new();
    let mut hits_d1 = 0u64;
    for _ in 0..shots {
        let draw = rng.uniform();
        if draw < stats.p_d1 {
            hits_d1 += 1;
            record.append("D1", seed);
        } else {
            record.append("D2", seed);
        }
    }
    let p_d1 = hits_d1 as f64 / shots as f64;
    let empirical = DetectionStats::new(p_d1, 1.0 - p_d1).expect("frequencies sum to 1");
    (empirical, record)
}
