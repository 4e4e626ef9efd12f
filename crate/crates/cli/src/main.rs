//! Sweep-and-emit front end for the fewmode simulator.

mod args;
mod config;
mod emit;
mod errors;
mod registry;
mod runners;

use std::process::ExitCode;

use clap::Parser;

use args::Cli;
use config::RawConfig;
use errors::CliError;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let lowered = cli.command.lower()?;
    let raw = RawConfig::assemble(
        lowered.experiment,
        lowered.config.as_deref(),
        lowered.pairs,
    )?;
    let experiment = registry::find(lowered.experiment)?;
    raw.check_keys(experiment.allowed_keys())?;
    let cfg = experiment.parse(&raw)?;
    experiment.execute(&cfg)
}
