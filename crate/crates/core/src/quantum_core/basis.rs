//! Labeled, ordered mode bases with optional bipartition metadata.

use crate::error::{Error, Result};

/// Separator used when forming composite labels at tensor time.
pub const TENSOR_SEP: char = '\u{2297}'; // ⊗

/// An ordered set of distinct mode labels.
///
/// Ordering is part of the identity: two bases with the same labels in a
/// different order are distinct, and amplitude vectors are always aligned
/// with this order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModeBasis {
    labels: Vec<String>,
    bipartition: Option<Bipartition>,
}

/// Explicit (left, right) split of a composite basis, recorded when the
/// basis is built by `tensor`. Partial tracing requires it; it is never
/// inferred from label text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    left: Vec<String>,
    right: Vec<String>,
}

/// Which factor of a bipartite system an operation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    Left,
    Right,
}

impl Bipartition {
    pub fn left(&self) -> &[String] {
        &self.left
    }

    pub fn right(&self) -> &[String] {
        &self.right
    }

    /// Composite index of the pair (left index, right index).
    ///
    /// The left factor is the slow index: composite order is
    /// `l0⊗r0, l0⊗r1, ..., l1⊗r0, ...`.
    pub fn composite_index(&self, left_idx: usize, right_idx: usize) -> usize {
        left_idx * self.right.len() + right_idx
    }

    /// Split a composite index back into (left index, right index).
    pub fn split_index(&self, composite: usize) -> (usize, usize) {
        (composite / self.right.len(), composite % self.right.len())
    }
}

impl ModeBasis {
    /// Build a basis from distinct labels. Order is preserved.
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::EmptyBasis);
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        Ok(Self {
            labels,
            bipartition: None,
        })
    }

    /// Composite basis of two factors, labels joined as `a⊗b` with the
    /// left factor as the slow index. Records the bipartition.
    pub fn tensor(left: &ModeBasis, right: &ModeBasis) -> Result<Self> {
        let mut labels = Vec::with_capacity(left.dimension() * right.dimension());
        for a in &left.labels {
            for b in &right.labels {
                labels.push(format!("{a}{TENSOR_SEP}{b}"));
            }
        }
        let mut basis = Self::new(labels)?;
        basis.bipartition = Some(Bipartition {
            left: left.labels.clone(),
            right: right.labels.clone(),
        });
        Ok(basis)
    }

    pub fn dimension(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, idx: usize) -> &str {
        &self.labels[idx]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn bipartition(&self) -> Option<&Bipartition> {
        self.bipartition.as_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicate_labels() {
        let err = ModeBasis::new(["A1", "A1"]).unwrap_err();
        assert_eq!(err, Error::DuplicateLabel("A1".into()));
    }

    #[test]
    fn rejects_empty_basis() {
        assert_eq!(
            ModeBasis::new(Vec::<String>::new()).unwrap_err(),
            Error::EmptyBasis
        );
    }

    #[test]
    fn ordering_is_part_of_identity() {
        let a = ModeBasis::new(["A1", "A2"]).unwrap();
        let b = ModeBasis::new(["A2", "A1"]).unwrap();
        assert_ne!(a, b);
    }

    #[test]
    fn tensor_rejects_colliding_composite_labels() {
        let left = ModeBasis::new(["a", "a⊗b"]).unwrap();
        let right = ModeBasis::new(["b⊗c", "c"]).unwrap();
        // "a" ⊗ "b⊗c" and "a⊗b" ⊗ "c" both read "a⊗b⊗c"
        assert!(matches!(
            ModeBasis::tensor(&left, &right),
            Err(Error::DuplicateLabel(_))
        ));
    }

    #[test]
    fn tensor_orders_left_slow() {
        let a = ModeBasis::new(["A1", "A2"]).unwrap();
        let b = ModeBasis::new(["B1", "B2"]).unwrap();
        let ab = ModeBasis::tensor(&a, &b).unwrap();
        assert_eq!(ab.labels(), ["A1⊗B1", "A1⊗B2", "A2⊗B1", "A2⊗B2"]);
        let bp = ab.bipartition().unwrap();
        assert_eq!(bp.composite_index(1, 0), 2);
        assert_eq!(bp.split_index(3), (1, 1));
    }
}
