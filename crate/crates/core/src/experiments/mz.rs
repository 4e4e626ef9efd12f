//! Mach-Zehnder interferometer: open, closed, and encounter-delayed-choice
//! configurations.
//!
//! The interferometer is always evaluated by building the optical circuit
//! and reading Born probabilities off the output state, never by quoting
//! the fringe formula. Port naming is a calibration choice: D1 is the
//! output port that receives all the light at zero phase difference, which
//! with the symmetric splitter convention is the swap port.

use crate::error::{Error, Result};
use crate::optical_elements::{beam_splitter, phase_shifter, Circuit, PhaseSetting};
use crate::quantum_core::{apply_full, born_probabilities, make_state, ModeBasis, StateVector};
use num_complex::Complex64;

const PATH_1: &str = "1";
const PATH_2: &str = "2";
/// Calibrated port map: at zero phase difference the input port's light
/// exits on the crossed mode, so that mode is detector D1.
const D1_MODE: &str = PATH_2;

/// Which pieces of the interferometer are in place for a run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MzMode {
    /// No recombining splitter: paths go straight to the detectors.
    Open,
    /// Second splitter inserted: paths interfere before detection.
    Closed,
    /// Second splitter inserted while the wavepacket straddles the
    /// crossing: the leading fraction sees the open configuration, the
    /// rest the closed one.
    Delayed { front_fraction: f64 },
}

/// A runnable interferometer setting.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MzConfig {
    pub phi1: PhaseSetting,
    pub phi2: PhaseSetting,
    pub mode: MzMode,
}

impl MzConfig {
    pub fn open(phi1: PhaseSetting, phi2: PhaseSetting) -> Self {
        Self {
            phi1,
            phi2,
            mode: MzMode::Open,
        }
    }

    pub fn closed(phi1: PhaseSetting, phi2: PhaseSetting) -> Self {
        Self {
            phi1,
            phi2,
            mode: MzMode::Closed,
        }
    }

    pub fn delayed(phi1: PhaseSetting, phi2: PhaseSetting, front_fraction: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&front_fraction) {
            return Err(Error::OutOfRange {
                name: "front_fraction",
                constraint: "in [0, 1]",
                value: front_fraction,
            });
        }
        Ok(Self {
            phi1,
            phi2,
            mode: MzMode::Delayed { front_fraction },
        })
    }
}

/// Detection probabilities at the two output detectors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetectionStats {
    pub p_d1: f64,
    pub p_d2: f64,
}

impl DetectionStats {
    pub fn new(p_d1: f64, p_d2: f64) -> Result<Self> {
        let ok = (-1e-12..=1.0 + 1e-12).contains(&p_d1)
            && (-1e-12..=1.0 + 1e-12).contains(&p_d2)
            && (p_d1 + p_d2 - 1.0).abs() <= 1e-12;
        if !ok {
            return Err(Error::OutOfRange {
                name: "detection probabilities",
                constraint: "in [0,1] and summing to 1",
                value: p_d1 + p_d2,
            });
        }
        Ok(Self { p_d1, p_d2 })
    }
}

fn path_basis() -> ModeBasis {
    ModeBasis::new([PATH_1, PATH_2]).expect("distinct path labels")
}

fn input_photon() -> StateVector {
    make_state(&[
        (PATH_1, Complex64::new(1.0, 0.0)),
        (PATH_2, Complex64::new(0.0, 0.0)),
    ])
    .expect("unit input state")
}

fn stats_from_state(state: &StateVector) -> DetectionStats {
    let probs = born_probabilities(state, state.basis()).expect("same basis");
    let p = |mode: &str| {
        probs
            .iter()
            .find(|(label, _)| label == mode)
            .map(|(_, p)| *p)
            .expect("mode exists")
    };
    let p_d1 = p(D1_MODE);
    let p_d2 = p(if D1_MODE == PATH_1 { PATH_2 } else { PATH_1 });
    DetectionStats::new(p_d1, p_d2).expect("circuit output is normalized")
}

fn run_fixed(phi1: PhaseSetting, phi2: PhaseSetting, closed: bool) -> DetectionStats {
    let basis = path_basis();
    let bs = beam_splitter(&basis).expect("two-mode basis");
    let mut circuit = Circuit::new(basis.clone());
    circuit.push_full(bs.clone()).expect("basis-wide element");
    circuit
        .push_full(phase_shifter(&basis, PATH_1, phi1).expect("known mode"))
        .expect("basis-wide element");
    circuit
        .push_full(phase_shifter(&basis, PATH_2, phi2).expect("known mode"))
        .expect("basis-wide element");
    if closed {
        circuit.push_full(bs).expect("basis-wide element");
    }
    let u = circuit.compose().expect("valid circuit");
    let out = apply_full(&input_photon(), &u).expect("matching dimensions");
    stats_from_state(&out)
}

/// Run the interferometer in its configured mode.
pub fn mz_run(config: &MzConfig) -> DetectionStats {
    match config.mode {
        MzMode::Open => run_fixed(config.phi1, config.phi2, false),
        MzMode::Closed => run_fixed(config.phi1, config.phi2, true),
        MzMode::Delayed { front_fraction } => {
            mz_delayed(config.phi1, config.phi2, front_fraction)
                .expect("fraction validated at construction")
        }
    }
}

/// Encounter-delayed choice: the front fraction of the wavepacket clears
/// the crossing before the second splitter appears and is detected under
/// open statistics; the rear fraction is detected under closed statistics.
/// The result is the convex mixture of the two. A 16-step insertion-time
/// grid corresponds to front fractions k/15, k = 0..15.
pub fn mz_delayed(
    phi1: PhaseSetting,
    phi2: PhaseSetting,
    front_fraction: f64,
) -> Result<DetectionStats> {
    if !(0.0..=1.0).contains(&front_fraction) {
        return Err(Error::OutOfRange {
            name: "front_fraction",
            constraint: "in [0, 1]",
            value: front_fraction,
        });
    }
    let open = run_fixed(phi1, phi2, false);
    let closed = run_fixed(phi1, phi2, true);
    let mix = |o: f64, c: f64| front_fraction * o + (1.0 - front_fraction) * c;
    DetectionStats::new(mix(open.p_d1, closed.p_d1), mix(open.p_d2, closed.p_d2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn phase(x: f64) -> PhaseSetting {
        PhaseSetting::new(x).unwrap()
    }

    #[test]
    fn closed_zero_difference_sends_all_light_to_d1() {
        let stats = mz_run(&MzConfig::closed(PhaseSetting::ZERO, PhaseSetting::ZERO));
        assert!((stats.p_d1 - 1.0).abs() < 1e-12);
        assert!(stats.p_d2.abs() < 1e-12);
    }

    #[test]
    fn closed_half_wave_difference_sends_all_light_to_d2() {
        let stats = mz_run(&MzConfig::closed(phase(PI), PhaseSetting::ZERO));
        assert!(stats.p_d1.abs() < 1e-12);
        assert!((stats.p_d2 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn closed_quarter_wave_difference_is_even() {
        let stats = mz_run(&MzConfig::closed(phase(PI / 2.0), PhaseSetting::ZERO));
        assert!((stats.p_d1 - 0.5).abs() < 1e-12);
        assert!((stats.p_d2 - 0.5).abs() < 1e-12);
    }

    #[test]
    fn open_is_flat_regardless_of_phases() {
        for (p1, p2) in [(0.0, 0.0), (1.0, 2.5), (PI, PI / 3.0), (5.9, 0.1)] {
            let stats = mz_run(&MzConfig::open(phase(p1), phase(p2)));
            assert!((stats.p_d1 - 0.5).abs() < 1e-12);
            assert!((stats.p_d2 - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn closed_matches_cos_squared_and_depends_only_on_difference() {
        let mut lcg: u64 = 0x9e3779b97f4a7c15;
        let mut next = || {
            lcg = lcg.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (lcg >> 11) as f64 / (1u64 << 53) as f64 * std::f64::consts::TAU
        };
        for _ in 0..100 {
            let (p1, p2, delta) = (next(), next(), next());
            let stats = mz_run(&MzConfig::closed(phase(p1), phase(p2)));
            let expected = (0.5 * (p1 - p2)).cos().powi(2);
            assert!((stats.p_d1 - expected).abs() < 1e-12);
            let shifted = mz_run(&MzConfig::closed(phase(p1 + delta), phase(p2 + delta)));
            assert!((stats.p_d1 - shifted.p_d1).abs() < 1e-12);
        }
    }

    #[test]
    fn delayed_endpoints_match_open_and_closed() {
        let (p1, p2) = (phase(0.9), phase(0.2));
        let open = mz_run(&MzConfig::open(p1, p2));
        let closed = mz_run(&MzConfig::closed(p1, p2));
        let at = |r: f64| mz_delayed(p1, p2, r).unwrap();
        assert!((at(1.0).p_d1 - open.p_d1).abs() < 1e-12);
        assert!((at(0.0).p_d1 - closed.p_d1).abs() < 1e-12);
    }

    #[test]
    fn delayed_half_at_zero_difference() {
        let stats = mz_delayed(PhaseSetting::ZERO, PhaseSetting::ZERO, 0.5).unwrap();
        assert!((stats.p_d1 - 0.75).abs() < 1e-12);
        assert!((stats.p_d2 - 0.25).abs() < 1e-12);
    }

    #[test]
    fn delayed_is_affine_in_front_fraction() {
        let (p1, p2) = (phase(2.2), phase(0.7));
        let p0 = mz_delayed(p1, p2, 0.0).unwrap().p_d1;
        let p1_end = mz_delayed(p1, p2, 1.0).unwrap().p_d1;
        for k in 0..=10 {
            let r = k as f64 / 10.0;
            let chord = p0 + r * (p1_end - p0);
            let actual = mz_delayed(p1, p2, r).unwrap().p_d1;
            assert!((actual - chord).abs() < 1e-12);
        }
    }

    #[test]
    fn delayed_rejects_fraction_outside_unit_interval() {
        assert!(mz_delayed(PhaseSetting::ZERO, PhaseSetting::ZERO, 1.5).is_err());
        assert!(MzConfig::delayed(PhaseSetting::ZERO, PhaseSetting::ZERO, -0.1).is_err());
    }
}
