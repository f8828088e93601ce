use crate::linalg::Vector;

/// A location where an identity failed, with the nonzero residual found there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation<K> {
    pub at: K,
    pub residual: Vector,
}

/// Outcome of an exhaustive identity scan. Violations are listed in scan
/// order, which every checker fixes to lexicographic index order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport<K> {
    pub violations: Vec<Violation<K>>,
}

impl<K> Default for CheckReport<K> {
    fn default() -> Self {
        Self { violations: Vec::new() }
    }
}

impl<K> CheckReport<K> {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub(crate) fn record(&mut self, at: K, residual: Vector) {
        if !residual.is_zero() {
            self.violations.push(Violation { at, residual });
        }
    }
}

pub type PairReport = CheckReport<(usize, usize)>;
pub type TripleReport = CheckReport<(usize, usize, usize)>;
