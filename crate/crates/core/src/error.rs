//! Crate-wide error type.

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("basis must contain at least one mode")]
    EmptyBasis,

    #[error("duplicate basis label `{0}`")]
    DuplicateLabel(String),

    #[error("unknown mode `{0}`")]
    UnknownMode(String),

    #[error("all amplitudes are zero; state is degenerate")]
    DegenerateState,

    #[error("amplitude for `{0}` is not finite")]
    NonFiniteAmplitude(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix is not unitary: max deviation of U\u{2020}U from identity is {deviation:.3e}")]
    NotUnitary { deviation: f64 },

    #[error("matrix is not a density operator: {0}")]
    InvalidDensity(String),

    #[error("basis lacks bipartition metadata; build composite states with `tensor`")]
    MissingBipartition,

    #[error("basis mismatch: {0}")]
    BasisMismatch(String),

    #[error("phase must be finite, got {0}")]
    NonFinitePhase(f64),

    #[error("{name} must be {constraint}, got {value}")]
    OutOfRange {
        name: &'static str,
        constraint: &'static str,
        value: f64,
    },

    #[error("degenerate geometry: {0}")]
    DegenerateGeometry(String),

    #[error("detector model invalid: {0}")]
    InvalidDetector(String),

    #[error("sweep needs at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },

    #[error("sweep must cover a full period of 2\u{3c0}")]
    IncompletePeriod,

    #[error("sweep values must be nonnegative with a positive peak; visibility undefined")]
    NonPositiveSignal,

    #[error("measurement record is malformed: {0}")]
    MalformedRecord(String),
}
