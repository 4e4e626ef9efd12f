//! `bell` subcommand: CHSH score, the exhaustive local-strategy bound, and
//! the violation verdict.

use fewmode::analysis::{chsh, lhv_max, rto_correlator, sampled_rto_correlator, ChshSettings};

use crate::config::{BellSource, CommonOpts, ExperimentParams, RawConfig, RunConfig};
use crate::emit::{fmt12, open_output, write_line};
use crate::errors::CliError;
use crate::registry::{run_points, Experiment};

pub struct BellRunner;

const KEYS: &[&str] = &[
    "sweep",
    "shots",
    "seed",
    "output",
    "canonical",
    "delta",
    "a",
    "a-prime",
    "b",
    "b-prime",
];

impl Experiment for BellRunner {
    fn name(&self) -> &'static str {
        "bell"
    }

    fn allowed_keys(&self) -> &'static [&'static str] {
        KEYS
    }

    fn parse(&self, raw: &RawConfig) -> Result<RunConfig, CliError> {
        let common = CommonOpts::parse(raw)?;
        let canonical = match raw.get("canonical") {
            None => false,
            Some("true") => true,
            Some("false") => false,
            Some(other) => {
                return Err(CliError::InvalidField {
                    field: "canonical".into(),
                    message: format!("expected true or false, got `{other}`"),
                })
            }
        };
        let delta = raw.get_f64("delta")?;
        let angle_keys = ["a", "a-prime", "b", "b-prime"];
        let angles_given = angle_keys.iter().filter(|k| raw.get(k).is_some()).count();

        let mut groups: Vec<&'static str> = Vec::new();
        if canonical {
            groups.push("canonical");
        }
        if delta.is_some() {
            groups.push("delta");
        }
        if angles_given > 0 {
            groups.push("a/a-prime/b/b-prime");
        }
        if common.sweep.is_some() {
            groups.push("sweep");
        }
        if groups.len() > 1 {
            return Err(CliError::MutuallyExclusive(groups[0], groups[1]));
        }

        let source = if common.sweep.is_some() {
            BellSource::SweptDelta
        } else if angles_given > 0 {
            if angles_given < 4 {
                let missing = angle_keys
                    .iter()
                    .find(|k| raw.get(k).is_none())
                    .expect("some angle is missing");
                return Err(CliError::InvalidField {
                    field: (*missing).into(),
                    message: "explicit settings need all of a, a-prime, b, b-prime".into(),
                });
            }
            let settings = ChshSettings::new(
                raw.get_f64("a")?.expect("presence checked"),
                raw.get_f64("a-prime")?.expect("presence checked"),
                raw.get_f64("b")?.expect("presence checked"),
                raw.get_f64("b-prime")?.expect("presence checked"),
            )
            .map_err(CliError::from)?;
            BellSource::Explicit(settings)
        } else if let Some(d) = delta {
            BellSource::Delta(d)
        } else {
            BellSource::Canonical
        };
        Ok(RunConfig {
            common,
            params: ExperimentParams::Bell { source },
        })
    }

    fn execute(&self, cfg: &RunConfig) -> Result<(), CliError> {
        let ExperimentParams::Bell { source } = &cfg.params else {
            unreachable!("registry pairs parse with execute");
        };
        let settings_list: Vec<ChshSettings> = match (source, &cfg.common.sweep) {
            (BellSource::SweptDelta, Some(sweep)) => sweep
                .points()
                .into_iter()
                .map(ChshSettings::from_difference)
                .collect::<Result<_, _>>()
                .map_err(CliError::from)?,
            (BellSource::Canonical, _) => vec![ChshSettings::canonical()],
            (BellSource::Delta(d), _) => {
                vec![ChshSettings::from_difference(*d).map_err(CliError::from)?]
            }
            (BellSource::Explicit(s), _) => vec![*s],
            (BellSource::SweptDelta, None) => unreachable!("swept source implies a sweep"),
        };

        let shots = cfg.common.shots;
        let seed = cfg.common.seed;
        let indices: Vec<f64> = (0..settings_list.len()).map(|k| k as f64).collect();
        let rows = run_points(&indices, |k, _| {
            let settings = settings_list[k as usize];
            let stats = if shots > 0 {
                chsh(&settings, sampled_rto_correlator(shots, seed ^ k))
            } else {
                chsh(&settings, rto_correlator())
            };
            let bound = lhv_max(&settings);
            Ok(vec![
                fmt12(settings.a.radians()),
                fmt12(settings.a_prime.radians()),
                fmt12(settings.b.radians()),
                fmt12(settings.b_prime.radians()),
                fmt12(stats.s),
                fmt12(bound),
                stats.violation.to_string(),
            ])
        })?;

        let mut out = open_output(&cfg.common.output)?;
        write_line(
            &mut out,
            &[
                "a".into(),
                "a_prime".into(),
                "b".into(),
                "b_prime".into(),
                "S".into(),
                "lhv_max".into(),
                "violation".into(),
            ],
        )?;
        for row in rows {
            write_line(&mut out, &row)?;
        }
        Ok(())
    }
}
