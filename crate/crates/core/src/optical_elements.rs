//! Beam splitters, phase shifters, and their composition into circuits.
//!
//! Conventions fixed here and used everywhere else:
//! - The 50-50 beam splitter is the symmetric one, (1/√2)·[[1, i], [i, 1]]:
//!   transmission is real, reflection picks up i. Two back-to-back
//!   splitters then give i·[[0, 1], [1, 0]] — a clean port swap up to
//!   global phase.
//! - Mirrors are identity: their common phase is global and unobservable.

use std::f64::consts::{FRAC_1_SQRT_2, TAU};

use ndarray::Array2;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quantum_core::{ModeBasis, UnitaryElement};

/// A phase in radians, reduced into [0, 2π) at construction. One full
/// wavelength of extra path length is one full turn.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseSetting {
    radians: f64,
}

impl PhaseSetting {
    pub const ZERO: PhaseSetting = PhaseSetting { radians: 0.0 };

    pub fn new(radians: f64) -> Result<Self> {
        if !radians.is_finite() {
            return Err(Error::NonFinitePhase(radians));
        }
        Ok(Self {
            radians: radians.rem_euclid(TAU),
        })
    }

    pub fn radians(self) -> f64 {
        self.radians
    }
}

/// Symmetric 50-50 beam splitter on a 2-mode basis.
pub fn beam_splitter(basis: &ModeBasis) -> Result<UnitaryElement> {
    if basis.dimension() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: basis.dimension(),
        });
    }
    let t = Complex64::new(FRAC_1_SQRT_2, 0.0);
    let r = Complex64::new(0.0, FRAC_1_SQRT_2);
    let matrix = Array2::from_shape_vec((2, 2), vec![t, r, r, t]).expect("2x2 shape");
    UnitaryElement::new(basis.clone(), matrix)
}

/// Diagonal element with e^{iφ} on the named mode and 1 elsewhere.
pub fn phase_shifter(basis: &ModeBasis, mode: &str, phi: PhaseSetting) -> Result<UnitaryElement> {
    let idx = basis
        .index_of(mode)
        .ok_or_else(|| Error::UnknownMode(mode.into()))?;
    let mut matrix = Array2::eye(basis.dimension());
    matrix[[idx, idx]] = Complex64::from_polar(1.0, phi.radians());
    UnitaryElement::new(basis.clone(), matrix)
}

/// An ordered list of elements with their target modes, applied first to
/// last against a fixed circuit basis.
#[derive(Debug, Clone)]
pub struct Circuit {
    basis: ModeBasis,
    steps: Vec<(UnitaryElement, Vec<String>)>,
}

impl Circuit {
    pub fn new(basis: ModeBasis) -> Self {
        Self {
            basis,
            steps: Vec::new(),
        }
    }

    pub fn basis(&self) -> &ModeBasis {
        &self.basis
    }

    /// Append an element acting on the named target modes (positionally:
    /// the element's k-th port drives the k-th target).
    pub fn push(&mut self, element: UnitaryElement, targets: &[&str]) -> Result<&mut Self> {
        if targets.len() != element.dimension() {
            return Err(Error::DimensionMismatch {
                expected: element.dimension(),
                got: targets.len(),
            });
        }
        let mut seen = Vec::with_capacity(targets.len());
        for t in targets {
            if self.basis.index_of(t).is_none() {
                return Err(Error::UnknownMode((*t).into()));
            }
            if seen.contains(t) {
                return Err(Error::DuplicateLabel((*t).into()));
            }
            seen.push(t);
        }
        self.steps
            .push((element, targets.iter().map(|t| t.to_string()).collect()));
        Ok(self)
    }

    /// Append an element that spans the whole circuit basis.
    pub fn push_full(&mut self, element: UnitaryElement) -> Result<&mut Self> {
        let labels: Vec<String> = self.basis.labels().to_vec();
        let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
        self.push(element, &refs)
    }

    /// Collapse the circuit into a single unitary: the ordered product with
    /// the first pushed element applied first. An empty circuit composes to
    /// the identity.
    pub fn compose(&self) -> Result<UnitaryElement> {
        let mut total = UnitaryElement::identity(self.basis.clone());
        for (element, targets) in &self.steps {
            let indices: Vec<usize> = targets
                .iter()
                .map(|t| self.basis.index_of(t).expect("validated at push"))
                .collect();
            let embedded = crate::quantum_core::unitary::embed_matrix(
                element.matrix(),
                self.basis.dimension(),
                &indices,
            );
            let step = UnitaryElement::new(self.basis.clone(), embedded)?;
            total = total.then(&step)?;
        }
        Ok(total)
    }
}
