use std::sync::Arc;

use crate::error::{domain, Error, Result};

/// Whether formulas keep per-divisor detail (`Concrete`) or aggregate all
/// separating divisors into one symbol (`Generic`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    Generic,
    Concrete,
}

/// Genus and marking set of a moduli stack of stable curves.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuliSpec {
    genus: u32,
    labels: Vec<String>,
    mode: Mode,
}

/// Concrete mode stores a separating side as a bitmask over the labels.
pub const MAX_CONCRETE_LABELS: usize = 63;

fn default_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("p{i}")).collect()
}

impl ModuliSpec {
    fn build(genus: u32, labels: Vec<String>, mode: Mode) -> Result<Arc<Self>> {
        let n = labels.len();
        if (n as i64) <= 2 - 2 * genus as i64 {
            return Err(Error::Unstable { g: genus, n });
        }
        Ok(Arc::new(ModuliSpec { genus, labels, mode }))
    }

    pub fn generic(genus: u32, n: usize) -> Result<Arc<Self>> {
        Self::build(genus, default_labels(n), Mode::Generic)
    }

    /// Concrete data with labels `p1, ..., pn`.
    pub fn concrete_n(genus: u32, n: usize) -> Result<Arc<Self>> {
        Self::concrete(genus, default_labels(n))
    }

    pub fn concrete(genus: u32, labels: Vec<String>) -> Result<Arc<Self>> {
        if labels.len() > MAX_CONCRETE_LABELS {
            return domain(format!("concrete mode supports at most {MAX_CONCRETE_LABELS} labels"));
        }
        let mut seen = std::collections::BTreeSet::new();
        for l in &labels {
            if l.is_empty() || !l.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return domain(format!("invalid marking label {l:?}"));
            }
            if !seen.insert(l) {
                return domain(format!("duplicate marking label {l:?}"));
            }
        }
        Self::build(genus, labels, Mode::Concrete)
    }

    /// Same genus and labels in the other mode.
    pub fn with_mode(&self, mode: Mode) -> Arc<Self> {
        Arc::new(ModuliSpec { mode, ..self.clone() })
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn is_concrete(&self) -> bool {
        self.mode == Mode::Concrete
    }

    /// `3g - 3 + n`, the dimension and the rank of the (co)tangent bundle.
    pub fn dimension(&self) -> i64 {
        3 * self.genus as i64 - 3 + self.n() as i64
    }

    /// Largest degree an expression of truncation order `order` keeps.
    pub fn degree_bound(&self, order: u32) -> u32 {
        match self.mode {
            Mode::Generic => order,
            Mode::Concrete => order.min(self.dimension().max(0) as u32),
        }
    }

    /// Bitmask with one bit per label.
    pub fn full_mask(&self) -> u64 {
        if self.n() == 0 {
            0
        } else {
            u64::MAX >> (64 - self.n())
        }
    }

    /// Stability of the two sides `(h, |A|)` and `(g - h, n - |A|)` of a separating node.
    pub fn separating_side_is_stable(&self, h: u32, side_size: usize) -> bool {
        if h > self.genus || side_size > self.n() {
            return false;
        }
        let left = 2 * h as i64 - 1 + side_size as i64;
        let right = 2 * (self.genus - h) as i64 - 1 + (self.n() - side_size) as i64;
        left > 0 && right > 0
    }

    /// Whether any separating boundary divisor exists.
    pub fn has_separating_divisors(&self) -> bool {
        (0..=self.genus).any(|h| (0..=self.n()).any(|a| self.separating_side_is_stable(h, a)))
    }

    pub fn has_irreducible_divisor(&self) -> bool {
        self.genus >= 1
    }
}
