//! Unitary elements acting on labeled mode bases.

use ndarray::Array2;
use num_complex::Complex64;

use super::basis::ModeBasis;
use crate::error::{Error, Result};

/// Deviation threshold above which a matrix is rejected as non-unitary.
pub const UNITARITY_REJECT: f64 = 1e-10;

/// A unitary matrix bound to a mode basis.
///
/// Construction validates unitarity, so a value of this type can always be
/// applied safely. The basis names the element's own ports; application
/// maps ports to state modes positionally.
#[derive(Debug, Clone)]
pub struct UnitaryElement {
    basis: ModeBasis,
    matrix: Array2<Complex64>,
}

impl UnitaryElement {
    /// Bind `matrix` to `basis`, rejecting shape mismatches and matrices
    /// whose deviation from unitarity exceeds `UNITARITY_REJECT`.
    pub fn new(basis: ModeBasis, matrix: Array2<Complex64>) -> Result<Self> {
        let dim = basis.dimension();
        if matrix.nrows() != dim || matrix.ncols() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: matrix.nrows().max(matrix.ncols()),
            });
        }
        let deviation = unitarity_deviation(&matrix);
        if deviation.is_nan() || deviation > UNITARITY_REJECT {
            return Err(Error::NotUnitary { deviation });
        }
        Ok(Self { basis, matrix })
    }

    pub fn identity(basis: ModeBasis) -> Self {
        let dim = basis.dimension();
        Self {
            basis,
            matrix: Array2::eye(dim),
        }
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

    /// Conjugate transpose, the inverse element.
    pub fn dagger(&self) -> Self {
        Self {
            basis: self.basis.clone(),
            matrix: self.matrix.t().mapv(|z| z.conj()),
        }
    }

    /// The element that applies `self` first and `next` second.
    pub fn then(&self, next: &UnitaryElement) -> Result<Self> {
        if next.basis != self.basis {
            return Err(Error::BasisMismatch(
                "composed elements must share a basis".into(),
            ));
        }
        UnitaryElement::new(self.basis.clone(), next.matrix.dot(&self.matrix))
    }

    /// Kronecker product acting on the composite basis `self ⊗ other`,
    /// with the left factor as the slow index (matching state tensoring).
    pub fn tensor(&self, other: &UnitaryElement) -> Result<Self> {
        let basis = ModeBasis::tensor(&self.basis, &other.basis)?;
        let (da, db) = (self.dimension(), other.dimension());
        let mut m = Array2::zeros((da * db, da * db));
        for i in 0..da {
            for ip in 0..da {
                for j in 0..db {
                    for jp in 0..db {
                        m[[i * db + j, ip * db + jp]] =
                            self.matrix[[i, ip]] * other.matrix[[j, jp]];
                    }
                }
            }
        }
        UnitaryElement::new(basis, m)
    }

    /// Max row sum of |U†U − I|, the ∞-norm deviation from unitarity.
    pub fn unitarity_deviation(&self) -> f64 {
        unitarity_deviation(&self.matrix)
    }
}

pub(crate) fn unitarity_deviation(matrix: &Array2<Complex64>) -> f64 {
    let dim = matrix.nrows();
    let dagger = matrix.t().mapv(|z| z.conj());
    let product = dagger.dot(matrix);
    (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| {
                    let expected = if i == j { 1.0 } else { 0.0 };
                    (product[[i, j]] - expected).norm()
                })
                .sum::<f64>()
        })
        .fold(0.0, f64::max)
}

/// Embed `u` into a `dim`-dimensional space, acting on the coordinates in
/// `targets` (positionally) and as identity elsewhere.
pub(crate) fn embed_matrix(
    u: &Array2<Complex64>,
    dim: usize,
    targets: &[usize],
) -> Array2<Complex64> {
    let mut m = Array2::eye(dim);
    for (i, &ti) in targets.iter().enumerate() {
        for (j, &tj) in targets.iter().enumerate() {
            m[[ti, tj]] = u[[i, j]];
        }
    }
    m
}
