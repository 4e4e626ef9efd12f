//! CLI error type with structured, field-naming variants.

use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("unknown experiment `{0}`")]
    UnknownExperiment(String),

    #[error("config file `{path}`: {message}")]
    ConfigFile { path: PathBuf, message: String },

    #[error("config file names experiment `{file}` but the `{cli}` subcommand was invoked")]
    ExperimentMismatch { file: String, cli: String },

    #[error("field `{field}`: malformed number `{value}`")]
    MalformedNumber { field: String, value: String },

    #[error("field `{field}`: {message}")]
    InvalidField { field: String, message: String },

    #[error("missing required field `{0}`")]
    MissingField(&'static str),

    #[error("flags {0} and {1} are mutually exclusive")]
    MutuallyExclusive(&'static str, &'static str),

    #[error("field `{field}` is not supported by experiment `{experiment}`")]
    UnsupportedField { field: String, experiment: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("numerical invariant breached: {0}")]
    Invariant(String),

    #[error(transparent)]
    Core(#[from] fewmode::Error),
}

impl CliError {
    /// Validation problems exit 2; runtime failures exit 1.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Invariant(_) => 1,
            _ => 2,
        }
    }
}
