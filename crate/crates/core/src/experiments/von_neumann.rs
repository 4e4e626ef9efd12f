//! Measurement as entanglement with a detector's pointer states.
//!
//! A detector that distinguishes the eigenstates {|Ai⟩} carries one
//! macroscopically distinct pointer state |Di⟩ per eigenstate plus a
//! pre-measurement `ready` state. Measuring maps |Ai⟩|ready⟩ to
//! |αi⟩|Di⟩; by linearity a superposition input becomes the entangled
//! joint state Σ aᵢ|αi⟩|Di⟩. The default disturbance leaves eigenstates
//! untouched (αi = Ai), the way laboratory devices are built.

use ndarray::Array1;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quantum_core::{born_probabilities, ModeBasis, StateVector};

/// A detector: its measured observable's eigenbasis, its pointer basis,
/// and how it disturbs each eigenstate.
#[derive(Debug, Clone)]
pub struct DetectorModel {
    eigen_basis: ModeBasis,
    pointer_basis: ModeBasis,
    ready_label: String,
    /// Post-measurement system state per eigenstate; `None` means the
    /// identity map (each eigenstate left undisturbed).
    disturbance: Option<Vec<StateVector>>,
}

impl DetectorModel {
    /// A detector whose i-th pointer label registers the i-th eigenstate.
    pub fn new<S: Into<String>>(
        eigen_basis: ModeBasis,
        pointer_labels: Vec<S>,
        ready_label: impl Into<String>,
    ) -> Result<Self> {
        let ready_label = ready_label.into();
        let pointer_basis = ModeBasis::new(pointer_labels)?;
        if pointer_basis.dimension() != eigen_basis.dimension() {
            return Err(Error::InvalidDetector(format!(
                "need one pointer state per eigenstate: {} pointers for {} eigenstates",
                pointer_basis.dimension(),
                eigen_basis.dimension()
            )));
        }
        if pointer_basis.index_of(&ready_label).is_some() {
            return Err(Error::InvalidDetector(format!(
                "ready label `{ready_label}` collides with a pointer label"
            )));
        }
        Ok(Self {
            eigen_basis,
            pointer_basis,
            ready_label,
            disturbance: None,
        })
    }

    /// Replace the identity disturbance with explicit post-measurement
    /// states |αi⟩, one per eigenstate, each on the eigenbasis.
    pub fn with_disturbance(mut self, states: Vec<StateVector>) -> Result<Self> {
        if states.len() != self.eigen_basis.dimension() {
            return Err(Error::InvalidDetector(format!(
                "need {} disturbance states, got {}",
                self.eigen_basis.dimension(),
                states.len()
            )));
        }
        for s in &states {
            if s.basis() != &self.eigen_basis {
                return Err(Error::InvalidDetector(
                    "disturbance states must live on the eigenbasis".into(),
                ));
            }
        }
        self.disturbance = Some(states);
        Ok(self)
    }

    pub fn eigen_basis(&self) -> &ModeBasis {
        &self.eigen_basis
    }

    pub fn pointer_basis(&self) -> &ModeBasis {
        &self.pointer_basis
    }

    pub fn ready_label(&self) -> &str {
        &self.ready_label
    }
}

/// Entangle `system` with the detector: Σ aᵢ|αi⟩|Di⟩ on the joint
/// system ⊗ pointer basis (bipartition recorded).
pub fn von_neumann_measure(system: &StateVector, det: &DetectorModel) -> Result<StateVector> {
    if system.dimension() != det.eigen_basis.dimension() {
        return Err(Error::DimensionMismatch {
            expected: det.eigen_basis.dimension(),
            got: system.dimension(),
        });
    }
    let dim = det.eigen_basis.dimension();
    let joint_basis = ModeBasis::tensor(&det.eigen_basis, &det.pointer_basis)?;
    let mut amps = Array1::from(vec![Complex64::new(0.0, 0.0); dim * dim]);
    for (i, a) in system.amplitudes().iter().enumerate() {
        match &det.disturbance {
            None => amps[i * dim + i] = *a,
            Some(alphas) => {
                for (j, alpha_j) in alphas[i].amplitudes().iter().enumerate() {
                    amps[j * dim + i] += a * alpha_j;
                }
            }
        }
    }
    StateVector::new(joint_basis, amps.to_vec())
}

/// Joint and conditional outcome probabilities of a bipartite state: the
/// "superposition of correlations" reading of an entangled pair.
#[derive(Debug, Clone)]
pub struct CorrelationTable {
    pub labels_a: Vec<String>,
    pub labels_b: Vec<String>,
    /// P(aᵢ, bⱼ) indexed `[i][j]`.
    pub joint: Vec<Vec<f64>>,
    pub marginal_a: Vec<f64>,
    pub marginal_b: Vec<f64>,
    /// P(bⱼ | aᵢ) indexed `[i][j]`; zero where P(aᵢ) = 0.
    pub conditional_b_given_a: Vec<Vec<f64>>,
}

/// Tabulate joint and conditional probabilities of `joint` over the given
/// subsystem bases, which must match the state's recorded bipartition.
pub fn correlation_table(
    joint: &StateVector,
    basis_a: &ModeBasis,
    basis_b: &ModeBasis,
) -> Result<CorrelationTable> {
    let bp = joint
        .basis()
        .bipartition()
        .ok_or(Error::MissingBipartition)?;
    if bp.left() != basis_a.labels() || bp.right() != basis_b.labels() {
        return Err(Error::BasisMismatch(
            "subsystem bases do not match the state's bipartition".into(),
        ));
    }
    let (da, db) = (basis_a.dimension(), basis_b.dimension());
    let probs = born_probabilities(joint, joint.basis())?;
    let mut table = vec![vec![0.0; db]; da];
    for (idx, (_, p)) in probs.iter().enumerate() {
        let (i, j) = bp.split_index(idx);
        table[i][j] = *p;
    }
    let marginal_a: Vec<f64> = table.iter().map(|row| row.iter().sum()).collect();
    let marginal_b: Vec<f64> = (0..db).map(|j| table.iter().map(|row| row[j]).sum()).collect();
    let conditional = table
        .iter()
        .zip(&marginal_a)
        .map(|(row, &pa)| {
            row.iter()
                .map(|&p| if pa > 0.0 { p / pa } else { 0.0 })
                .collect()
        })
        .collect();
    Ok(CorrelationTable {
        labels_a: basis_a.labels().to_vec(),
        labels_b: basis_b.labels().to_vec(),
        joint: table,
        marginal_a,
        marginal_b,
        conditional_b_given_a: conditional,
    })
}
