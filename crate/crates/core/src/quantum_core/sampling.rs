//! Born-rule sampling with collapse.

use ndarray::Array1;
use num_complex::Complex64;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::basis::ModeBasis;
use super::state::{born_probabilities, StateVector};
use crate::error::Result;

/// Deterministic generator that remembers the 64-bit seed it was built
/// from, so measurement records can log provenance. The integer stream is
/// identical across platforms for a given seed.
#[derive(Debug, Clone)]
pub struct SeededRng {
    seed: u64,
    rng: ChaCha8Rng,
}

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Independent generator for one sweep point, seeded as
    /// base_seed ⊕ point_index so points can run in any order.
    pub fn for_point(base_seed: u64, point_index: u64) -> Self {
        Self::new(base_seed ^ point_index)
    }

    /// Uniform draw from [0, 1).
    pub fn uniform(&mut self) -> f64 {
        self.rng.gen()
    }
}

impl RngCore for SeededRng {
    fn next_u32(&mut self) -> u32 {
        self.rng.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    fn fill_bytes(&mut self, dest: &mut [u8]) {
        self.rng.fill_bytes(dest)
    }

    fn try_fill_bytes(&mut self, dest: &mut [u8]) -> std::result::Result<(), rand::Error> {
        self.rng.try_fill_bytes(dest)
    }
}

/// One sampled measurement: the selected label, the collapsed state, and
/// the probability the outcome had.
#[derive(Debug, Clone)]
pub struct OutcomeSample {
    pub outcome: String,
    pub collapsed: StateVector,
    pub probability: f64,
}

/// Draw one outcome from the Born distribution of `state` read in `basis`
/// and collapse onto it.
///
/// Selection inverts the cumulative sum over labels in basis order with
/// half-open intervals [c_{k-1}, c_k), so a label with zero probability can
/// never be selected. The collapsed state keeps the outcome amplitude's
/// phase, has exactly zero amplitude everywhere else, and re-measures to
/// the same outcome with certainty.
pub fn sample_outcome<R: Rng + ?Sized>(
    state: &StateVector,
    basis: &ModeBasis,
    rng: &mut R,
) -> Result<OutcomeSample> {
    let probs = born_probabilities(state, basis)?;
    let draw: f64 = rng.gen();
    let mut cumulative = 0.0;
    let mut chosen = None;
    for (idx, (_, p)) in probs.iter().enumerate() {
        cumulative += p;
        if draw < cumulative {
            chosen = Some(idx);
            break;
        }
    }
    // cumulative sums can land a hair under 1; fall back to the last label
    // that carries any probability
    let idx = match chosen {
        Some(idx) => idx,
        None => probs
            .iter()
            .rposition(|(_, p)| *p > 0.0)
            .expect("a valid state has at least one nonzero probability"),
    };
    let amp = state.amplitudes()[idx];
    let mut collapsed = Array1::from(vec![Complex64::new(0.0, 0.0); state.dimension()]);
    collapsed[idx] = amp / amp.norm();
    Ok(OutcomeSample {
        outcome: probs[idx].0.clone(),
        collapsed: StateVector::from_parts(basis.clone(), collapsed, false),
        probability: probs[idx].1,
    })
}
