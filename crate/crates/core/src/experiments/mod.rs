//! Executable models of the four experiments: Mach-Zehnder interferometry
//! (open, closed, encounter-delayed-choice), two-photon nonlocal
//! correlations, double-slit accumulation, and the von Neumann measurement
//! chain.

pub mod double_slit;
pub mod mz;
pub mod record;
pub mod rto;
pub mod von_neumann;

pub use double_slit::{double_slit_intensity, double_slit_sample, IntensityProfile, SlitChoice, SlitConfig};
pub use mz::{mz_delayed, mz_run, DetectionStats, MzConfig, MzMode};
pub use record::{MeasurementRecord, RecordEntry};
pub use rto::{entangled_pair_state, rto_joint, rto_sample, JointStats, RtoConfig, RtoModel};
pub use von_neumann::{correlation_table, von_neumann_measure, CorrelationTable, DetectorModel};
