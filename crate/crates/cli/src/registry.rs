//! Name-keyed registry of experiment runners. Each experiment sits behind
//! the same trait and is selected at runtime from the subcommand or a
//! config file's `experiment` key.

use rayon::prelude::*;

use crate::config::{RawConfig, RunConfig};
use crate::errors::CliError;
use crate::runners;

pub trait Experiment: Sync {
    /// Registry key; also the subcommand and the config-file `experiment`
    /// value.
    fn name(&self) -> &'static str;

    /// Every config key this experiment understands; anything else is
    /// rejected before parsing.
    fn allowed_keys(&self) -> &'static [&'static str];

    /// Validate the merged raw configuration into a runnable one.
    fn parse(&self, raw: &RawConfig) -> Result<RunConfig, CliError>;

    /// Execute the run, writing CSV and any record files.
    fn execute(&self, cfg: &RunConfig) -> Result<(), CliError>;
}

static REGISTRY: [&dyn Experiment; 6] = [
    &runners::mz::MzRunner,
    &runners::rto::RtoRunner,
    &runners::double_slit::DoubleSlitRunner,
    &runners::cat::CatRunner,
    &runners::bell::BellRunner,
    &runners::table_one::TableOneRunner,
];

pub fn registry() -> &'static [&'static dyn Experiment] {
    &REGISTRY
}

pub fn find(name: &str) -> Result<&'static dyn Experiment, CliError> {
    registry()
        .iter()
        .find(|e| e.name() == name)
        .copied()
        .ok_or_else(|| CliError::UnknownExperiment(name.to_string()))
}

/// Evaluate sweep points in parallel, preserving sweep order in the
/// result. Each point must derive any randomness from its own index.
pub fn run_points<T, F>(points: &[f64], per_point: F) -> Result<Vec<T>, CliError>
where
    T: Send,
    F: Fn(u64, f64) -> Result<T, CliError> + Sync,
{
    points
        .par_iter()
        .enumerate()
        .map(|(k, &p)| per_point(k as u64, p))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_covers_the_cli_surface() {
        let names: Vec<&str> = registry().iter().map(|e| e.name()).collect();
        assert_eq!(
            names,
            ["mz", "rto", "double-slit", "cat", "bell", "table-one"]
        );
    }

    #[test]
    fn unknown_experiment_is_an_error() {
        assert!(matches!(
            find("laser"),
            Err(CliError::UnknownExperiment(_))
        ));
    }
}
