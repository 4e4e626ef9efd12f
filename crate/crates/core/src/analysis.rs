//! Correlation, Bell/CHSH, local-hidden-variable baseline, no-signaling,
//! and fringe-visibility analytics over experiment outputs.

use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::experiments::rto::{rto_joint, rto_sample, JointStats, RtoConfig};
use crate::optical_elements::PhaseSetting;
use crate::quantum_core::SeededRng;

/// P(correlated) − P(anticorrelated) of a joint distribution.
pub fn degree_of_correlation(stats: &JointStats) -> f64 {
    stats.p_correlated() - stats.p_anticorrelated()
}

/// The four analyzer phases of a CHSH run: a, a′ on side A and b, b′ on
/// side B.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChshSettings {
    pub a: PhaseSetting,
    pub a_prime: PhaseSetting,
    pub b: PhaseSetting,
    pub b_prime: PhaseSetting,
}

impl ChshSettings {
    pub fn new(a: f64, a_prime: f64, b: f64, b_prime: f64) -> Result<Self> {
        Ok(Self {
            a: PhaseSetting::new(a)?,
            a_prime: PhaseSetting::new(a_prime)?,
            b: PhaseSetting::new(b)?,
            b_prime: PhaseSetting::new(b_prime)?,
        })
    }

    /// The settings that maximize the quantum score at 2√2:
    /// a = 0, a′ = π/2, b = π/4, b′ = 3π/4.
    pub fn canonical() -> Self {
        Self::new(0.0, TAU / 4.0, TAU / 8.0, 3.0 * TAU / 8.0).expect("finite constants")
    }

    /// Settings built from a single phase difference: pair differences are
    /// {±Δ, 3Δ}, reducing to the canonical scheme at Δ = π/4.
    pub fn from_difference(delta: f64) -> Result<Self> {
        Self::new(0.0, 2.0 * delta, delta, 3.0 * delta)
    }
}

/// A CHSH evaluation: the four correlations, the combined score, and
/// whether it beats every local deterministic strategy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BellStats {
    pub settings: ChshSettings,
    pub e_ab: f64,
    pub e_ab_prime: f64,
    pub e_a_prime_b: f64,
    pub e_a_prime_b_prime: f64,
    pub s: f64,
    /// True when S clears the local bound 2 by more than float noise.
    pub violation: bool,
}

/// Evaluate the CHSH combination S = |E(a,b) − E(a,b′) + E(a′,b) +
/// E(a′,b′)| with the minus sign on the (a, b′) term, using any correlator
/// from analyzer phases to E.
pub fn chsh<F>(settings: &ChshSettings, correlator: F) -> BellStats
where
    F: Fn(f64, f64) -> f64,
{
    let (a, ap) = (settings.a.radians(), settings.a_prime.radians());
    let (b, bp) = (settings.b.radians(), settings.b_prime.radians());
    let e_ab = correlator(a, b);
    let e_ab_prime = correlator(a, bp);
    let e_a_prime_b = correlator(ap, b);
    let e_a_prime_b_prime = correlator(ap, bp);
    let s = (e_ab - e_ab_prime + e_a_prime_b + e_a_prime_b_prime).abs();
    BellStats {
        settings: *settings,
        e_ab,
        e_ab_prime,
        e_a_prime_b,
        e_a_prime_b_prime,
        s,
        violation: s > 2.0 + 1e-9,
    }
}

/// Exact correlator of the two-photon experiment: E(φ_A, φ_B) from the
/// full circuit, equal to cos(φ_B − φ_A).
pub fn rto_correlator() -> impl Fn(f64, f64) -> f64 {
    |phi_a, phi_b| {
        let config = RtoConfig::new(
            PhaseSetting::new(phi_a).expect("finite setting"),
            PhaseSetting::new(phi_b).expect("finite setting"),
        );
        degree_of_correlation(&rto_joint(&config))
    }
}

/// Monte Carlo correlator: empirical E from `shots` trials per setting
/// pair, with the per-pair generator derived from `seed` and the settings
/// so distinct pairs get independent streams.
pub fn sampled_rto_correlator(shots: u64, seed: u64) -> impl Fn(f64, f64) -> f64 {
    move |phi_a, phi_b| {
        let config = RtoConfig::new(
            PhaseSetting::new(phi_a).expect("finite setting"),
            PhaseSetting::new(phi_b).expect("finite setting"),
        );
        let pair_seed = seed ^ phi_a.to_bits() ^ phi_b.to_bits().rotate_left(32);
        let mut rng = SeededRng::new(pair_seed);
        let (stats, _) = rto_sample(&config, shots, &mut rng);
        degree_of_correlation(&stats)
    }
}

/// One deterministic local strategy: a fixed ±1 answer per side per
/// setting, the building block of the local-hidden-variable bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LhvStrategy {
    pub a: i8,
    pub a_prime: i8,
    pub b: i8,
    pub b_prime: i8,
}

impl LhvStrategy {
    /// CHSH value of this strategy, computed in integer arithmetic.
    pub fn chsh_value(&self) -> f64 {
        let s = (self.a as i32) * (self.b as i32) - (self.a as i32) * (self.b_prime as i32)
            + (self.a_prime as i32) * (self.b as i32)
            + (self.a_prime as i32) * (self.b_prime as i32);
        s.abs() as f64
    }

    /// A correlator that answers with this strategy's fixed outputs,
    /// matching incoming phases against the four settings.
    pub fn correlator(&self, settings: &ChshSettings) -> impl Fn(f64, f64) -> f64 {
        let strategy = *self;
        let settings = *settings;
        move |phi_a, phi_b| {
            let side_a = if (phi_a - settings.a.radians()).abs() < 1e-12 {
                strategy.a
            } else {
                strategy.a_prime
            };
            let side_b = if (phi_b - settings.b.radians()).abs() < 1e-12 {
                strategy.b
            } else {
                strategy.b_prime
            };
            (side_a as f64) * (side_b as f64)
        }
    }
}

/// All 16 deterministic local strategies.
pub fn deterministic_strategies() -> Vec<LhvStrategy> {
    let signs = [1i8, -1i8];
    let mut out = Vec::with_capacity(16);
    for a in signs {
        for a_prime in signs {
            for b in signs {
                for b_prime in signs {
                    out.push(LhvStrategy {
                        a,
                        a_prime,
                        b,
                        b_prime,
                    });
                }
            }
        }
    }
    out
}

/// Largest CHSH score any deterministic local strategy can reach. The
/// settings do not enter the enumeration; the parameter documents which
/// run the bound belongs to. Always exactly 2.
pub fn lhv_max(settings: &ChshSettings) -> f64 {
    let _ = settings;
    deterministic_strategies()
        .iter()
        .map(|s| s.chsh_value())
        .fold(0.0, f64::max)
}

/// How marginal statistics were obtained for a no-signaling check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NoSignalingMode {
    Analytic,
    Sampled { shots: u64, seed: u64 },
}

/// Outcome of a no-signaling scan over a phase grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoSignalingReport {
    /// Largest spread of an A-side marginal as the remote phase varies.
    pub max_deviation_a: f64,
    /// Largest spread of a B-side marginal as the remote phase varies.
    pub max_deviation_b: f64,
    /// Spread allowed before the check fails.
    pub tolerance: f64,
    pub passed: bool,
    pub grid_points: usize,
    pub mode: NoSignalingMode,
}

/// Scan a phase grid and verify each side's marginal statistics are
/// independent of the other side's setting: exactly (within 1e-12) in
/// analytic mode, within 5σ binomial bounds in sampled mode.
pub fn no_signaling_report(
    grid_a: &[f64],
    grid_b: &[f64],
    mode: NoSignalingMode,
) -> Result<NoSignalingReport> {
    if grid_a.is_empty() || grid_b.is_empty() {
        return Err(Error::TooFewPoints { needed: 1, got: 0 });
    }
    let stats_at = |phi_a: f64, phi_b: f64| -> Result<JointStats> {
        let config = RtoConfig::new(PhaseSetting::new(phi_a)?, PhaseSetting::new(phi_b)?);
        Ok(match mode {
            NoSignalingMode::Analytic => rto_joint(&config),
            NoSignalingMode::Sampled { shots, seed } => {
                let pair_seed = seed ^ phi_a.to_bits() ^ phi_b.to_bits().rotate_left(32);
                let mut rng = SeededRng::new(pair_seed);
                rto_sample(&config, shots, &mut rng).0
            }
        })
    };
    let mut table = Vec::with_capacity(grid_a.len());
    for &phi_a in grid_a {
        let mut row = Vec::with_capacity(grid_b.len());
        for &phi_b in grid_b {
            row.push(stats_at(phi_a, phi_b)?);
        }
        table.push(row);
    }
    let spread = |values: &mut dyn Iterator<Item = f64>| -> f64 {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for v in values {
            lo = lo.min(v);
            hi = hi.max(v);
        }
        hi - lo
    };
    // A's marginal must not move as φ_B varies (scan each row), and
    // symmetrically for B (scan each column).
    let max_deviation_a = (0..grid_a.len())
        .map(|i| spread(&mut table[i].iter().map(|s| s.p_a1)))
        .fold(0.0, f64::max);
    let max_deviation_b = (0..grid_b.len())
        .map(|j| spread(&mut table.iter().map(|row| row[j].p_b1)))
        .fold(0.0, f64::max);
    let tolerance = match mode {
        NoSignalingMode::Analytic => 1e-12,
        // spread of two independent proportion estimates at p = 1/2
        NoSignalingMode::Sampled { shots, .. } => 5.0 * (0.5 / shots as f64).sqrt(),
    };
    Ok(NoSignalingReport {
        max_deviation_a,
        max_deviation_b,
        tolerance,
        passed: max_deviation_a <= tolerance && max_deviation_b <= tolerance,
        grid_points: grid_a.len() * grid_b.len(),
        mode,
    })
}

/// Fringe visibility (max − min)/(max + min) of a sweep of nonnegative
/// values (probabilities or correlated fractions) over a full period.
pub fn visibility(sweep: &[(f64, f64)]) -> Result<f64> {
    if sweep.len() < 8 {
        return Err(Error::TooFewPoints {
            needed: 8,
            got: sweep.len(),
        });
    }
    let n = sweep.len() as f64;
    let (mut phase_lo, mut phase_hi) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for &(phase, value) in sweep {
        phase_lo = phase_lo.min(phase);
        phase_hi = phase_hi.max(phase);
        lo = lo.min(value);
        hi = hi.max(value);
    }
    // an endpoint-exclusive sweep of n points spans 2π(n−1)/n
    if phase_hi - phase_lo < TAU * (n - 1.0) / n - 1e-9 {
        return Err(Error::IncompletePeriod);
    }
    if lo < -1e-9 || hi + lo <= 0.0 {
        return Err(Error::NonPositiveSignal);
    }
    Ok((hi - lo) / (hi + lo))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments::mz::{mz_run, MzConfig};
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, PI};

    const SQRT_8: f64 = 2.8284271247461903;

    fn joint_at(delta: f64) -> JointStats {
        rto_joint(&RtoConfig::new(
            PhaseSetting::ZERO,
            PhaseSetting::new(delta).unwrap(),
        ))
    }

    #[test]
    fn degree_of_correlation_tracks_table_rows() {
        assert!((degree_of_correlation(&joint_at(0.0)) - 1.0).abs() < 1e-12);
        assert!((degree_of_correlation(&joint_at(PI)) + 1.0).abs() < 1e-12);
        assert!((degree_of_correlation(&joint_at(FRAC_PI_3)) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn canonical_settings_reach_tsirelson() {
        let stats = chsh(&ChshSettings::canonical(), rto_correlator());
        assert!((stats.s - SQRT_8).abs() < 1e-9);
        assert!(stats.violation);
    }

    #[test]
    fn degenerate_settings_sit_at_the_classical_bound() {
        let settings = ChshSettings::new(0.3, 0.3, 0.3, 0.3).unwrap();
        let stats = chsh(&settings, rto_correlator());
        assert!((stats.s - 2.0).abs() < 1e-12);
        assert!(!stats.violation);
    }

    #[test]
    fn from_difference_reduces_to_canonical_at_eighth_turn() {
        let settings = ChshSettings::from_difference(FRAC_PI_4).unwrap();
        assert!((settings.a_prime.radians() - FRAC_PI_2).abs() < 1e-15);
        let stats = chsh(&settings, rto_correlator());
        assert!((stats.s - SQRT_8).abs() < 1e-9);
    }

    #[test]
    fn every_deterministic_strategy_scores_at_most_two() {
        let strategies = deterministic_strategies();
        assert_eq!(strategies.len(), 16);
        for s in &strategies {
            assert!(s.chsh_value() <= 2.0);
        }
        assert_eq!(lhv_max(&ChshSettings::canonical()), 2.0);
    }

    #[test]
    fn strategy_correlators_never_violate() {
        let settings = ChshSettings::canonical();
        for strategy in deterministic_strategies() {
            let stats = chsh(&settings, strategy.correlator(&settings));
            assert!(stats.s <= 2.0 + 1e-12);
            assert!(!stats.violation);
        }
    }

    #[test]
    fn all_plus_strategy_is_classical_at_degenerate_settings() {
        let settings = ChshSettings::new(0.0, 0.0, 0.0, 0.0).unwrap();
        let all_plus = LhvStrategy {
            a: 1,
            a_prime: 1,
            b: 1,
            b_prime: 1,
        };
        let stats = chsh(&settings, all_plus.correlator(&settings));
        assert!((stats.s - 2.0).abs() < 1e-12);
    }

    #[test]
    fn quantum_beats_the_lhv_oracle() {
        let settings = ChshSettings::canonical();
        let quantum = chsh(&settings, rto_correlator());
        assert!(quantum.s > lhv_max(&settings));
    }

    #[test]
    fn analytic_no_signaling_is_exact_on_a_grid() {
        let grid: Vec<f64> = (0..8).map(|k| k as f64 * TAU / 8.0).collect();
        let report = no_signaling_report(&grid, &grid, NoSignalingMode::Analytic).unwrap();
        assert!(report.passed, "deviations {report:?}");
        assert!(report.max_deviation_a < 1e-12);
        assert!(report.max_deviation_b < 1e-12);
        assert_eq!(report.grid_points, 64);
    }

    #[test]
    fn single_point_grid_passes_trivially() {
        let report = no_signaling_report(&[0.4], &[1.3], NoSignalingMode::Analytic).unwrap();
        assert!(report.passed);
        assert_eq!(report.max_deviation_a, 0.0);
    }

    #[test]
    fn sampled_no_signaling_stays_within_binomial_bounds() {
        let grid: Vec<f64> = (0..4).map(|k| k as f64 * TAU / 4.0).collect();
        let report = no_signaling_report(
            &grid,
            &grid,
            NoSignalingMode::Sampled {
                shots: 10_000,
                seed: 77,
            },
        )
        .unwrap();
        assert!(report.passed, "deviations {report:?}");
    }

    #[test]
    fn empty_grid_is_rejected() {
        assert!(no_signaling_report(&[], &[0.0], NoSignalingMode::Analytic).is_err());
    }

    #[test]
    fn closed_interferometer_sweep_has_unit_visibility() {
        let sweep: Vec<(f64, f64)> = (0..64)
            .map(|k| {
                let phase = k as f64 * TAU / 64.0;
                let stats = mz_run(&MzConfig::closed(
                    PhaseSetting::new(phase).unwrap(),
                    PhaseSetting::ZERO,
                ));
                (phase, stats.p_d1)
            })
            .collect();
        assert!((visibility(&sweep).unwrap() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn open_interferometer_sweep_has_zero_visibility() {
        let sweep: Vec<(f64, f64)> = (0..64)
            .map(|k| {
                let phase = k as f64 * TAU / 64.0;
                let stats = mz_run(&MzConfig::open(
                    PhaseSetting::new(phase).unwrap(),
                    PhaseSetting::ZERO,
                ));
                (phase, stats.p_d1)
            })
            .collect();
        assert!(visibility(&sweep).unwrap() < 1e-12);
    }

    #[test]
    fn single_side_sweep_shows_no_interference() {
        let sweep: Vec<(f64, f64)> = (0..64)
            .map(|k| {
                let phase = k as f64 * TAU / 64.0;
                (phase, joint_at(phase).p_a1)
            })
            .collect();
        assert!(visibility(&sweep).unwrap() < 1e-12);
    }

    #[test]
    fn correlated_fraction_sweep_has_unit_visibility() {
        let sweep: Vec<(f64, f64)> = (0..64)
            .map(|k| {
                let phase = k as f64 * TAU / 64.0;
                (phase, joint_at(phase).p_correlated())
            })
            .collect();
        assert!((visibility(&sweep).unwrap() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn visibility_rejects_bad_sweeps() {
        let short: Vec<(f64, f64)> = (0..4).map(|k| (k as f64, 0.5)).collect();
        assert!(matches!(
            visibility(&short),
            Err(Error::TooFewPoints { .. })
        ));
        let half_period: Vec<(f64, f64)> = (0..16).map(|k| (k as f64 * PI / 16.0, 0.5)).collect();
        assert!(matches!(visibility(&half_period), Err(Error::IncompletePeriod)));
        let zero: Vec<(f64, f64)> = (0..16).map(|k| (k as f64 * TAU / 16.0, 0.0)).collect();
        assert!(matches!(visibility(&zero), Err(Error::NonPositiveSignal)));
    }
}
