//! Exact few-mode quantum state simulation and the experiments built on it.
//!
//! The crate is organized around four layers:
//!
//! - [`quantum_core`]: states on labeled mode bases, tensor products,
//!   unitaries, density operators, partial trace, and Born-rule sampling
//!   with collapse.
//! - [`optical_elements`]: 50-50 beam splitters, phase shifters, and
//!   circuit composition.
//! - [`experiments`]: Mach-Zehnder interferometry, the entangled
//!   two-photon experiment, double-slit accumulation, and von Neumann
//!   measurement.
//! - [`analysis`]: degree of correlation, CHSH with its exhaustive
//!   local-strategy baseline, no-signaling scans, and fringe visibility.
//!
//! All values are immutable after construction and safe to share across
//! threads; Monte Carlo entry points take explicit seeded generators and
//! reproduce their streams exactly for a given seed.

pub mod analysis;
pub mod error;
pub mod experiments;
pub mod optical_elements;
pub mod quantum_core;

pub use error::{Error, Result};

// re-exported so downstream crates share one set of numeric types
pub use ndarray;
pub use num_complex;
