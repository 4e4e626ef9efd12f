//! `cat` subcommand: a decaying atom measured by a detector wired to a
//! cat, read as a table of correlations between atom and cat states.
//!
//! The table itself is analytic; sampled trials (`--shots`) are observable
//! through the record file.

use fewmode::experiments::{correlation_table, von_neumann_measure, DetectorModel, MeasurementRecord};
use fewmode::quantum_core::{make_state, sample_outcome, ModeBasis, SeededRng};
use fewmode::num_complex::Complex64;
use std::f64::consts::FRAC_1_SQRT_2;

use crate::config::{CommonOpts, ExperimentParams, RawConfig, RunConfig};
use crate::emit::{ensure_unit_sum, fmt12, open_output, write_line, write_record_file};
use crate::errors::CliError;
use crate::registry::Experiment;

pub struct CatRunner;

const KEYS: &[&str] = &["shots", "seed", "output", "record"];

impl Experiment for CatRunner {
    fn name(&self) -> &'static str {
        "cat"
    }

    fn allowed_keys(&self) -> &'static [&'static str] {
        KEYS
    }

    fn parse(&self, raw: &RawConfig) -> Result<RunConfig, CliError> {
        Ok(RunConfig {
            common: CommonOpts::parse(raw)?,
            params: ExperimentParams::Cat,
        })
    }

    fn execute(&self, cfg: &RunConfig) -> Result<(), CliError> {
        let atom_basis = ModeBasis::new(["undecayed", "decayed"]).expect("distinct labels");
        // the atom at its half-life
        let amp = Complex64::new(FRAC_1_SQRT_2, 0.0);
        let atom = make_state(&[("undecayed", amp), ("decayed", amp)]).expect("normalized");
        let detector = DetectorModel::new(atom_basis, vec!["alive", "dead"], "ready")
            .expect("one pointer per eigenstate");
        let joint = von_neumann_measure(&atom, &detector).map_err(CliError::from)?;
        let table = correlation_table(&joint, detector.eigen_basis(), detector.pointer_basis())
            .map_err(CliError::from)?;

        let flat: Vec<f64> = table.joint.iter().flatten().copied().collect();
        ensure_unit_sum(&flat, "cat joint table")?;

        let mut out = open_output(&cfg.common.output)?;
        write_line(
            &mut out,
            &[
                "system".into(),
                "pointer".into(),
                "p_joint".into(),
                "p_pointer_given_system".into(),
            ],
        )?;
        for (i, system) in table.labels_a.iter().enumerate() {
            for (j, pointer) in table.labels_b.iter().enumerate() {
                write_line(
                    &mut out,
                    &[
                        system.clone(),
                        pointer.clone(),
                        fmt12(table.joint[i][j]),
                        fmt12(table.conditional_b_given_a[i][j]),
                    ],
                )?;
            }
        }

        if let Some(path) = &cfg.common.record {
            let mut record = MeasurementRecord::new();
            if cfg.common.shots > 0 {
                let mut rng = SeededRng::new(cfg.common.seed);
                let seed = rng.seed();
                for _ in 0..cfg.common.shots {
                    let sample =
                        sample_outcome(&joint, joint.basis(), &mut rng).map_err(CliError::from)?;
                    record.append(sample.outcome, seed);
                }
            }
            write_record_file(path, &record)?;
        }
        Ok(())
    }
}
