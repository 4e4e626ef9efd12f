//! Pure states over labeled mode bases.

use ndarray::Array1;
use num_complex::Complex64;

use super::basis::ModeBasis;
use super::unitary::{embed_matrix, UnitaryElement};
use crate::error::{Error, Result};

/// Inputs whose norm is further than this from 1 are renormalized (and the
/// state flagged); anything closer is accepted unchanged.
pub const INPUT_NORM_TOL: f64 = 1e-9;

/// A normalized pure state: one complex amplitude per basis label.
///
/// Global phase is physical data here and is never stripped; callers that
/// want phase-insensitive comparisons must say so explicitly.
#[derive(Debug, Clone)]
pub struct StateVector {
    basis: ModeBasis,
    amplitudes: Array1<Complex64>,
    renormalized: bool,
}

impl StateVector {
    /// Bind amplitudes to an existing basis. Normalizes (and flags) inputs
    /// whose norm is off by more than `INPUT_NORM_TOL`.
    pub fn new(basis: ModeBasis, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != basis.dimension() {
            return Err(Error::DimensionMismatch {
                expected: basis.dimension(),
                got: amplitudes.len(),
            });
        }
        for (amp, label) in amplitudes.iter().zip(basis.labels()) {
            if !amp.re.is_finite() || !amp.im.is_finite() {
                return Err(Error::NonFiniteAmplitude(label.clone()));
            }
        }
        let norm_sqr: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if norm_sqr == 0.0 {
            return Err(Error::DegenerateState);
        }
        if !norm_sqr.is_finite() {
            return Err(Error::OutOfRange {
                name: "state norm",
                constraint: "finite",
                value: norm_sqr,
            });
        }
        let norm = norm_sqr.sqrt();
        let mut amplitudes = Array1::from(amplitudes);
        let renormalized = (norm - 1.0).abs() > INPUT_NORM_TOL;
        if renormalized {
            amplitudes.mapv_inplace(|a| a / norm);
        }
        Ok(Self {
            basis,
            amplitudes,
            renormalized,
        })
    }

    pub fn basis(&self) -> &ModeBasis {
        &self.basis
    }

    pub fn dimension(&self) -> usize {
        self.basis.dimension()
    }

    pub fn amplitudes(&self) -> &Array1<Complex64> {
        &self.amplitudes
    }

    pub fn amplitude(&self, label: &str) -> Option<Complex64> {
        self.basis.index_of(label).map(|i| self.amplitudes[i])
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// True when the constructor had to rescale the input amplitudes.
    pub fn was_renormalized(&self) -> bool {
        self.renormalized
    }

    /// Largest |difference| between this state's amplitudes and another's,
    /// in shared basis order. Errors when the bases differ.
    pub fn max_amplitude_diff(&self, other: &StateVector) -> Result<f64> {
        if self.basis != other.basis {
            return Err(Error::BasisMismatch(
                "states live on different bases".into(),
            ));
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(other.amplitudes.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub(crate) fn from_parts(
        basis: ModeBasis,
        amplitudes: Array1<Complex64>,
        renormalized: bool,
    ) -> Self {
        Self {
            basis,
            amplitudes,
            renormalized,
        }
    }
}

/// Build a state from (label, amplitude) pairs, creating the basis from the
/// pair order. Inputs off norm by more than `INPUT_NORM_TOL` are normalized
/// and flagged; an all-zero input is rejected as degenerate.
pub fn make_state(pairs: &[(&str, Complex64)]) -> Result<StateVector> {
    let basis = ModeBasis::new(pairs.iter().map(|(l, _)| *l))?;
    let amps = pairs.iter().map(|(_, a)| *a).collect();
    StateVector::new(basis, amps)
}

/// Build a state on an existing basis from (label, amplitude) pairs.
/// Labels not listed get amplitude zero; unknown or repeated labels error.
pub fn make_state_on(basis: &ModeBasis, pairs: &[(&str, Complex64)]) -> Result<StateVector> {
    let mut amps = vec![Complex64::new(0.0, 0.0); basis.dimension()];
    let mut seen = vec![false; basis.dimension()];
    for (label, amp) in pairs {
        let idx = basis
            .index_of(label)
            .ok_or_else(|| Error::UnknownMode((*label).into()))?;
        if seen[idx] {
            return Err(Error::DuplicateLabel((*label).into()));
        }
        seen[idx] = true;
        amps[idx] = *amp;
    }
    StateVector::new(basis.clone(), amps)
}

/// Tensor product of two states. The composite basis records the
/// bipartition, with `sa` as the left (slow) factor.
pub fn tensor(sa: &StateVector, sb: &StateVector) -> Result<StateVector> {
    let basis = ModeBasis::tensor(sa.basis(), sb.basis())?;
    let mut amps = Array1::zeros(basis.dimension());
    let db = sb.dimension();
    for (i, a) in sa.amplitudes.iter().enumerate() {
        for (j, b) in sb.amplitudes.iter().enumerate() {
            amps[i * db + j] = a * b;
        }
    }
    Ok(StateVector::from_parts(
        basis,
        amps,
        sa.renormalized || sb.renormalized,
    ))
}

/// Apply `u` to the coordinates named by `targets` (positionally: the k-th
/// port of `u` acts on the k-th target label), identity elsewhere.
pub fn apply_unitary(
    state: &StateVector,
    u: &UnitaryElement,
    targets: &[&str],
) -> Result<StateVector> {
    if targets.len() != u.dimension() {
        return Err(Error::DimensionMismatch {
            expected: u.dimension(),
            got: targets.len(),
        });
    }
    let mut indices = Vec::with_capacity(targets.len());
    for label in targets {
        let idx = state
            .basis
            .index_of(label)
            .ok_or_else(|| Error::UnknownMode((*label).into()))?;
        if indices.contains(&idx) {
            return Err(Error::DuplicateLabel((*label).into()));
        }
        indices.push(idx);
    }
    let big = embed_matrix(u.matrix(), state.dimension(), &indices);
    let amps = big.dot(&state.amplitudes);
    Ok(StateVector::from_parts(
        state.basis.clone(),
        amps,
        state.renormalized,
    ))
}

/// Apply a unitary that spans the state's full basis.
pub fn apply_full(state: &StateVector, u: &UnitaryElement) -> Result<StateVector> {
    if u.basis().dimension() != state.dimension() {
        return Err(Error::DimensionMismatch {
            expected: state.dimension(),
            got: u.basis().dimension(),
        });
    }
    let amps = u.matrix().dot(&state.amplitudes);
    Ok(StateVector::from_parts(
        state.basis.clone(),
        amps,
        state.renormalized,
    ))
}

/// Born-rule probabilities of `state` read in `basis`.
///
/// `basis` is either the state's own basis or a relabeling of it (same
/// dimension); the k-th amplitude maps to the k-th label either way.
pub fn born_probabilities(state: &StateVector, basis: &ModeBasis) -> Result<Vec<(String, f64)>> {
    if basis.dimension() != state.dimension() {
        return Err(Error::DimensionMismatch {
            expected: state.dimension(),
            got: basis.dimension(),
        });
    }
    Ok(basis
        .labels()
        .iter()
        .zip(state.amplitudes.iter())
        .map(|(label, amp)| (label.clone(), amp.norm_sqr()))
        .collect())
}

/// True when a bipartite pure state cannot be factored into a product of
/// single-subsystem states, detected as a mixed reduced operator.
pub fn is_entangled(state: &StateVector) -> Result<bool> {
    use super::basis::Subsystem;
    use super::density::density_of;
    let rho = density_of(state);
    let reduced = rho.partial_trace(Subsystem::Left)?;
    Ok(reduced.purity() < 1.0 - 1e-9)
}
