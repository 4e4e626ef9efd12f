//! Exact linear-algebra engine: states, tensor products, unitaries,
//! density operators, partial trace, and Born-rule sampling with collapse.
//!
//! Everything here is an immutable value after construction; sampling takes
//! an explicit generator, so parallel callers use independent per-task
//! seeds.

pub mod basis;
pub mod density;
pub mod sampling;
pub mod state;
pub mod unitary;

pub use basis::{Bipartition, ModeBasis, Subsystem, TENSOR_SEP};
pub use density::{density_of, DensityOperator};
pub use sampling::{sample_outcome, OutcomeSample, SeededRng};
pub use state::{
    apply_full, apply_unitary, born_probabilities, is_entangled, make_state, make_state_on,
    tensor, StateVector, INPUT_NORM_TOL,
};
pub use unitary::{UnitaryElement, UNITARITY_REJECT};
