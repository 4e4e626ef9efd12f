//! Density operators, partial trace, and purity.

use ndarray::Array2;
use num_complex::Complex64;

use super::basis::{ModeBasis, Subsystem};
use super::state::StateVector;
use super::unitary::UnitaryElement;
use crate::error::{Error, Result};

const HERMITICITY_TOL: f64 = 1e-12;
const TRACE_TOL: f64 = 1e-12;

/// A Hermitian, unit-trace, positive operator on a labeled basis.
///
/// Every construction path here (outer product, partial trace, unitary
/// conjugation) preserves positivity, so validation checks Hermiticity,
/// trace, and the diagonal rather than running an eigensolver.
#[derive(Debug, Clone)]
pub struct DensityOperator {
    basis: ModeBasis,
    matrix: Array2<Complex64>,
}

impl DensityOperator {
    pub fn new(basis: ModeBasis, matrix: Array2<Complex64>) -> Result<Self> {
        let dim = basis.dimension();
        if matrix.nrows() != dim || matrix.ncols() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: matrix.nrows().max(matrix.ncols()),
            });
        }
        for i in 0..dim {
            for j in 0..dim {
                let diff = (matrix[[i, j]] - matrix[[j, i]].conj()).norm();
                if diff > HERMITICITY_TOL {
                    return Err(Error::InvalidDensity(format!(
                        "not Hermitian at ({i},{j}): deviation {diff:.3e}"
                    )));
                }
            }
            if matrix[[i, i]].re < -1e-12 {
                return Err(Error::InvalidDensity(format!(
                    "negative diagonal at {i}: {}",
                    matrix[[i, i]].re
                )));
            }
        }
        let trace: Complex64 = (0..dim).map(|i| matrix[[i, i]]).sum();
        if (trace.re - 1.0).abs() > TRACE_TOL || trace.im.abs() > TRACE_TOL {
            return Err(Error::InvalidDensity(format!(
                "trace is {trace}, expected 1"
            )));
        }
        Ok(Self { basis, matrix })
    }

    pub fn basis(&self) -> &ModeBasis {
        &self.basis
    }

    pub fn matrix(&self) -> &Array2<Complex64> {
        &self.matrix
    }

    pub fn dimension(&self) -> usize {
        self.basis.dimension()
    }

    pub fn trace(&self) -> f64 {
        (0..self.dimension()).map(|i| self.matrix[[i, i]].re).sum()
    }

    /// Tr(ρ²): 1 for pure states, down to 1/dim for the maximally mixed one.
    pub fn purity(&self) -> f64 {
        let dim = self.dimension();
        let mut total = Complex64::new(0.0, 0.0);
        for i in 0..dim {
            for j in 0..dim {
                total += self.matrix[[i, j]] * self.matrix[[j, i]];
            }
        }
        total.re
    }

    /// Trace out one factor of a bipartite operator, keeping `keep`.
    pub fn partial_trace(&self, keep: Subsystem) -> Result<DensityOperator> {
        let bp = self
            .basis
            .bipartition()
            .ok_or(Error::MissingBipartition)?
            .clone();
        let (dl, dr) = (bp.left().len(), bp.right().len());
        let (kept_labels, kept_dim) = match keep {
            Subsystem::Left => (bp.left(), dl),
            Subsystem::Right => (bp.right(), dr),
        };
        let mut reduced = Array2::zeros((kept_dim, kept_dim));
        for a in 0..kept_dim {
            for b in 0..kept_dim {
                let mut sum = Complex64::new(0.0, 0.0);
                match keep {
                    Subsystem::Left => {
                        for j in 0..dr {
                            sum += self.matrix[[a * dr + j, b * dr + j]];
                        }
                    }
                    Subsystem::Right => {
                        for i in 0..dl {
                            sum += self.matrix[[i * dr + a, i * dr + b]];
                        }
                    }
                }
                reduced[[a, b]] = sum;
            }
        }
        DensityOperator::new(ModeBasis::new(kept_labels.to_vec())?, reduced)
    }

    /// U ρ U†, the operator expressed after a basis rotation.
    pub fn conjugated(&self, u: &UnitaryElement) -> Result<DensityOperator> {
        if u.dimension() != self.dimension() {
            return Err(Error::DimensionMismatch {
                expected: self.dimension(),
                got: u.dimension(),
            });
        }
        let rotated = u
            .matrix()
            .dot(&self.matrix)
            .dot(&u.matrix().t().mapv(|z| z.conj()));
        DensityOperator::new(self.basis.clone(), rotated)
    }

    /// Largest |difference| against another operator on the same basis.
    pub fn max_entry_diff(&self, other: &DensityOperator) -> Result<f64> {
        if self.basis != other.basis {
            return Err(Error::BasisMismatch(
                "operators live on different bases".into(),
            ));
        }
        Ok(self
            .matrix
            .iter()
            .zip(other.matrix.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// The maximally mixed operator I/dim on `basis`.
    pub fn maximally_mixed(basis: ModeBasis) -> Self {
        let dim = basis.dimension();
        let matrix = Array2::eye(dim).mapv(|z: Complex64| z / dim as f64);
        Self { basis, matrix }
    }
}

/// ρ = |ψ⟩⟨ψ|, the projector onto a pure state.
pub fn density_of(state: &StateVector) -> DensityOperator {
    let dim = state.dimension();
    let mut matrix = Array2::zeros((dim, dim));
    for (i, a) in state.amplitudes().iter().enumerate() {
        for (j, b) in state.amplitudes().iter().enumerate() {
            matrix[[i, j]] = a * b.conj();
        }
    }
    DensityOperator {
        basis: state.basis().clone(),
        matrix,
    }
}
