//! Far-field double-slit accumulation: analytic screen profile plus
//! pointillist Monte Carlo impacts.
//!
//! The screen intensity is the standard Fraunhofer form
//! I(x) ∝ cos²(πdx/λL) · sinc²(πwx/λL) with both slits open, and the bare
//! sinc² envelope with a single slit (the d/2 lateral offset of one slit is
//! far below a bin width at any sensible geometry and is dropped). The
//! profile is discretized into bins and sampled by inverse CDF.

use num_complex::Complex64;
use rand::Rng;
use std::f64::consts::PI;

use super::record::MeasurementRecord;
use crate::error::{Error, Result};
use crate::quantum_core::SeededRng;

/// Which slits are open.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlitChoice {
    Both,
    Slit1,
    Slit2,
}

/// Geometry of the apparatus; all lengths in meters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlitConfig {
    pub wavelength: f64,
    pub slit_separation: f64,
    pub slit_width: f64,
    pub screen_distance: f64,
    pub slits: SlitChoice,
    pub screen_half_width: f64,
    pub bins: usize,
}

impl SlitConfig {
    pub fn new(
        wavelength: f64,
        slit_separation: f64,
        slit_width: f64,
        screen_distance: f64,
        slits: SlitChoice,
        screen_half_width: f64,
        bins: usize,
    ) -> Result<Self> {
        for (name, value) in [
            ("wavelength", wavelength),
            ("slit_separation", slit_separation),
            ("slit_width", slit_width),
            ("screen_distance", screen_distance),
            ("screen_half_width", screen_half_width),
        ] {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::DegenerateGeometry(format!(
                    "{name} must be positive and finite, got {value}"
                )));
            }
        }
        if slit_width >= slit_separation {
            return Err(Error::DegenerateGeometry(format!(
                "slit width {slit_width} must be smaller than separation {slit_separation}"
            )));
        }
        if bins < 16 {
            return Err(Error::OutOfRange {
                name: "bins",
                constraint: "at least 16",
                value: bins as f64,
            });
        }
        Ok(Self {
            wavelength,
            slit_separation,
            slit_width,
            screen_distance,
            slits,
            screen_half_width,
            bins,
        })
    }

    /// Spacing of adjacent bright fringes, λL/d.
    pub fn fringe_spacing(&self) -> f64 {
        self.wavelength * self.screen_distance / self.slit_separation
    }

    /// Half-width of the central diffraction envelope, λL/w.
    pub fn envelope_half_width(&self) -> f64 {
        self.wavelength * self.screen_distance / self.slit_width
    }
}

/// Normalized probability mass per screen bin.
#[derive(Debug, Clone)]
pub struct IntensityProfile {
    screen_half_width: f64,
    mass: Vec<f64>,
}

impl IntensityProfile {
    pub fn bins(&self) -> usize {
        self.mass.len()
    }

    pub fn bin_width(&self) -> f64 {
        2.0 * self.screen_half_width / self.mass.len() as f64
    }

    pub fn screen_half_width(&self) -> f64 {
        self.screen_half_width
    }

    pub fn mass(&self) -> &[f64] {
        &self.mass
    }

    pub fn bin_center(&self, k: usize) -> f64 {
        -self.screen_half_width + (k as f64 + 0.5) * self.bin_width()
    }

    pub fn bin_left_edge(&self, k: usize) -> f64 {
        -self.screen_half_width + k as f64 * self.bin_width()
    }
}

fn sinc(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else {
        x.sin() / x
    }
}

/// Complex far-field amplitude at screen position `x` contributed by one
/// slit; `sign` is +1 for slit 1 and −1 for slit 2.
fn slit_amplitude(cfg: &SlitConfig, x: f64, sign: f64) -> Complex64 {
    let scale = PI * x / (cfg.wavelength * cfg.screen_distance);
    let envelope = sinc(cfg.slit_width * scale);
    let phase = sign * cfg.slit_separation * scale;
    Complex64::from_polar(1.0, phase) * envelope
}

fn intensity_at(cfg: &SlitConfig, x: f64) -> f64 {
    match cfg.slits {
        SlitChoice::Both => (slit_amplitude(cfg, x, 1.0) + slit_amplitude(cfg, x, -1.0)).norm_sqr(),
        SlitChoice::Slit1 => slit_amplitude(cfg, x, 1.0).norm_sqr(),
        SlitChoice::Slit2 => slit_amplitude(cfg, x, -1.0).norm_sqr(),
    }
}

/// Discretize the screen intensity into a normalized per-bin profile.
pub fn double_slit_intensity(cfg: &SlitConfig) -> IntensityProfile {
    let half = cfg.screen_half_width;
    let width = 2.0 * half / cfg.bins as f64;
    let mut mass: Vec<f64> = (0..cfg.bins)
        .map(|k| intensity_at(cfg, -half + (k as f64 + 0.5) * width))
        .collect();
    let total: f64 = mass.iter().sum();
    for m in &mut mass {
        *m /= total;
    }
    IntensityProfile {
        screen_half_width: half,
        mass,
    }
}

/// Draw `n` impact coordinates (at least one) i.i.d. from the binned
/// profile via inverse CDF (bin by cumulative sum, position uniform within
/// the bin), logging the struck bin per trial.
pub fn double_slit_sample(
    cfg: &SlitConfig,
    n: u64,
    rng: &mut SeededRng,
) -> (Vec<f64>, MeasurementRecord) {
    assert!(n >= 1, "sampling requires at least one impact");
    let profile = double_slit_intensity(cfg);
    let seed = rng.seed();
    let mut impacts = Vec::with_capacity(n as usize);
    let mut record = MeasurementRecord::new();
    for _ in 0..n {
        let draw: f64 = rng.gen();
        let mut cumulative = 0.0;
        let mut bin = None;
        for (k, m) in profile.mass().iter().enumerate() {
            cumulative += m;
            if draw < cumulative {
                bin = Some(k);
                break;
            }
        }
        let k = bin.unwrap_or_else(|| {
            profile
                .mass()
                .iter()
                .rposition(|m| *m > 0.0)
                .expect("profile has positive mass")
        });
        let within: f64 = rng.gen();
        impacts.push(profile.bin_left_edge(k) + within * profile.bin_width());
        record.append(format!("bin{k}"), seed);
    }
    (impacts, record)
}
