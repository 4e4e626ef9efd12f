//! Two-photon interferometry on the momentum-entangled pair state
//! (|A1⟩|B1⟩ + |A2⟩|B2⟩)/√2.
//!
//! Each side carries a variable phase shifter in one arm and a recombining
//! beam splitter in front of its detectors. Interference lives entirely in
//! the joint outcomes: the single-side marginals are flat 50-50 at every
//! phase setting, while the degree of correlation traces cos(φ_B − φ_A).

use num_complex::Complex64;

use super::record::MeasurementRecord;
use crate::error::{Error, Result};
use crate::optical_elements::{beam_splitter, phase_shifter, PhaseSetting};
use crate::quantum_core::{
    apply_full, born_probabilities, make_state_on, sample_outcome, ModeBasis, SeededRng,
    StateVector, UnitaryElement,
};
use ndarray::Array2;

/// Variable phase settings for the two sides.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RtoConfig {
    pub phi_a: PhaseSetting,
    pub phi_b: PhaseSetting,
}

impl RtoConfig {
    pub fn new(phi_a: PhaseSetting, phi_b: PhaseSetting) -> Self {
        Self { phi_a, phi_b }
    }
}

/// Probabilities of the four joint outcomes plus marginals and the degree
/// of correlation E = P(correlated) − P(anticorrelated).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JointStats {
    pub p_a1_b1: f64,
    pub p_a1_b2: f64,
    pub p_a2_b1: f64,
    pub p_a2_b2: f64,
    pub p_a1: f64,
    pub p_a2: f64,
    pub p_b1: f64,
    pub p_b2: f64,
    pub correlation: f64,
}

impl JointStats {
    pub fn from_joints(p_a1_b1: f64, p_a1_b2: f64, p_a2_b1: f64, p_a2_b2: f64) -> Result<Self> {
        let total = p_a1_b1 + p_a1_b2 + p_a2_b1 + p_a2_b2;
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::OutOfRange {
                name: "joint probabilities",
                constraint: "summing to 1",
                value: total,
            });
        }
        for p in [p_a1_b1, p_a1_b2, p_a2_b1, p_a2_b2] {
            if !(-1e-12..=1.0 + 1e-12).contains(&p) {
                return Err(Error::OutOfRange {
                    name: "joint probability",
                    constraint: "in [0, 1]",
                    value: p,
                });
            }
        }
        Ok(Self {
            p_a1_b1,
            p_a1_b2,
            p_a2_b1,
            p_a2_b2,
            p_a1: p_a1_b1 + p_a1_b2,
            p_a2: p_a2_b1 + p_a2_b2,
            p_b1: p_a1_b1 + p_a2_b1,
            p_b2: p_a1_b2 + p_a2_b2,
            correlation: (p_a1_b1 + p_a2_b2) - (p_a1_b2 + p_a2_b1),
        })
    }

    pub fn p_correlated(&self) -> f64 {
        self.p_a1_b1 + self.p_a2_b2
    }

    pub fn p_anticorrelated(&self) -> f64 {
        self.p_a1_b2 + self.p_a2_b1
    }
}

/// The fixed optical layout: which arm each variable shifter occupies, and
/// the calibration trim that makes zero settings come out perfectly
/// correlated. Calibration is data, not physics; it plays the role of the
/// arm-length trim an experimenter dials in before taking data.
#[derive(Debug, Clone)]
pub struct RtoModel {
    basis_a: ModeBasis,
    basis_b: ModeBasis,
    /// Arm of side A carrying the variable shifter φ_A.
    pub shifter_arm_a: &'static str,
    /// Arm of side B carrying the variable shifter φ_B.
    pub shifter_arm_b: &'static str,
    /// Arm of side B carrying the fixed half-turn trim.
    pub trim_arm: &'static str,
}

pub const A_ARMS: [&str; 2] = ["A1", "A2"];
pub const B_ARMS: [&str; 2] = ["B1", "B2"];

impl Default for RtoModel {
    fn default() -> Self {
        Self::standard()
    }
}

impl RtoModel {
    /// The calibrated layout: φ_A on arm A1, φ_B on arm B2, trim on B2.
    pub fn standard() -> Self {
        Self {
            basis_a: ModeBasis::new(A_ARMS).expect("distinct arm labels"),
            basis_b: ModeBasis::new(B_ARMS).expect("distinct arm labels"),
            shifter_arm_a: "A1",
            shifter_arm_b: "B2",
            trim_arm: "B2",
        }
    }

    /// The entangled source state (|A1⟩|B1⟩ + |A2⟩|B2⟩)/√2 on the joint
    /// basis, bipartition recorded.
    pub fn source_state(&self) -> StateVector {
        let joint = ModeBasis::tensor(&self.basis_a, &self.basis_b).expect("distinct labels");
        let amp = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        make_state_on(&joint, &[("A1⊗B1", amp), ("A2⊗B2", amp)]).expect("valid pair state")
    }

    /// Fixed half-turn trim on the calibration arm, written as the exact
    /// diagonal (1, −1) so that perfectly correlated settings produce
    /// exactly zero anticorrelated amplitude.
    fn trim_element(&self) -> UnitaryElement {
        let idx = self
            .basis_b
            .index_of(self.trim_arm)
            .expect("trim arm exists");
        let mut m = Array2::eye(2);
        m[[idx, idx]] = Complex64::new(-1.0, 0.0);
        UnitaryElement::new(self.basis_b.clone(), m).expect("diagonal sign flip is unitary")
    }

    /// The joint detection-stage unitary for the given settings:
    /// (BS_A · φ_A) ⊗ (BS_B · trim · φ_B).
    pub fn detection_unitary(&self, config: &RtoConfig) -> UnitaryElement {
        let bs_a = beam_splitter(&self.basis_a).expect("two arms");
        let bs_b = beam_splitter(&self.basis_b).expect("two arms");
        let ps_a =
            phase_shifter(&self.basis_a, self.shifter_arm_a, config.phi_a).expect("known arm");
        let ps_b =
            phase_shifter(&self.basis_b, self.shifter_arm_b, config.phi_b).expect("known arm");
        let side_a = ps_a.then(&bs_a).expect("same basis");
        let side_b = ps_b.then(&self.trim_element()).expect("same basis");
        let side_b = side_b.then(&bs_b).expect("same basis");
        side_a.tensor(&side_b).expect("disjoint arm labels")
    }

    /// The post-circuit joint state for the given settings.
    pub fn output_state(&self, config: &RtoConfig) -> StateVector {
        let u = self.detection_unitary(config);
        apply_full(&self.source_state(), &u).expect("matching dimensions")
    }
}

/// Build the entangled pair state used by the experiment.
pub fn entangled_pair_state() -> StateVector {
    RtoModel::standard().source_state()
}

/// Exact joint statistics for the given phase settings, computed by
/// running the calibrated circuit and reading Born probabilities.
pub fn rto_joint(config: &RtoConfig) -> JointStats {
    let model = RtoModel::standard();
    let out = model.output_state(config);
    let probs = born_probabilities(&out, out.basis()).expect("same basis");
    // joint basis order: A1⊗B1, A1⊗B2, A2⊗B1, A2⊗B2
    JointStats::from_joints(probs[0].1, probs[1].1, probs[2].1, probs[3].1)
        .expect("circuit output is normalized")
}

/// Sample `shots` trials (at least one) from the joint distribution,
/// logging each outcome. Returns the empirical statistics alongside the
/// record.
pub fn rto_sample(
    config: &RtoConfig,
    shots: u64,
    rng: &mut SeededRng,
) -> (JointStats, MeasurementRecord) {
    assert!(shots >= 1, "sampling requires at least one shot");
    let model = RtoModel::standard();
    let out = model.output_state(config);
    let mut counts = [0u64; 4];
    let mut record = MeasurementRecord::new();
    let seed = rng.seed();
    for _ in 0..shots {
        let sample = sample_outcome(&out, out.basis(), rng).expect("same basis");
        let idx = out
            .basis()
            .index_of(&sample.outcome)
            .expect("outcome is a basis label");
        counts[idx] += 1;
        record.append(sample.outcome, seed);
    }
    let n = shots as f64;
    let stats = JointStats::from_joints(
        counts[0] as f64 / n,
        counts[1] as f64 / n,
        counts[2] as f64 / n,
        counts[3] as f64 / n,
    )
    .expect("frequencies sum to 1");
    (stats, record)
}
