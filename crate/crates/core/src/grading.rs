//! Gradings of a Lie algebra by a finitely generated abelian group.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{check_dim, Error, Result};
use crate::lie::LieAlgebra;
use crate::linalg::Vector;
use crate::report::PairReport;

/// Supported grading groups.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GradingGroup {
    /// ℤ₂ᵏ; `Z2Pow(1)` is ℤ₂.
    Z2Pow(usize),
    /// ℤᵏ.
    ZPow(usize),
}

impl GradingGroup {
    pub const Z2: GradingGroup = GradingGroup::Z2Pow(1);

    pub fn rank(self) -> usize {
        match self {
            GradingGroup::Z2Pow(k) | GradingGroup::ZPow(k) => k,
        }
    }

    fn reduce(self, mut coords: Vec<i64>) -> Degree {
        if let GradingGroup::Z2Pow(_) = self {
            for c in &mut coords {
                *c = c.rem_euclid(2);
            }
        }
        Degree(coords)
    }

    pub fn element(self, coords: Vec<i64>) -> Result<Degree> {
        check_dim(self.rank(), coords.len())?;
        Ok(self.reduce(coords))
    }

    pub fn zero(self) -> Degree {
        Degree(vec![0; self.rank()])
    }

    pub fn add(self, a: &Degree, b: &Degree) -> Degree {
        self.reduce(a.0.iter().zip(&b.0).map(|(x, y)| x.saturating_add(*y)).collect())
    }

    pub fn sub(self, a: &Degree, b: &Degree) -> Degree {
        self.reduce(a.0.iter().zip(&b.0).map(|(x, y)| x.saturating_sub(*y)).collect())
    }

    /// Every element for ℤ₂ᵏ, in lexicographic order; `None` for infinite groups.
    pub fn finite_elements(self) -> Option<Vec<Degree>> {
        match self {
            GradingGroup::Z2Pow(k) if k < 16 => Some(
                (0..1u32 << k).map(|bits| Degree((0..k).rev().map(|b| i64::from((bits >> b) & 1)).collect())).collect(),
            ),
            _ => None,
        }
    }
}

impl fmt::Display for GradingGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GradingGroup::Z2Pow(1) => write!(f, "z2"),
            GradingGroup::Z2Pow(k) => write!(f, "z2^{k}"),
            GradingGroup::ZPow(k) => write!(f, "z^{k}"),
        }
    }
}

/// A group element, stored reduced (coordinates in {0,1} for ℤ₂ᵏ).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Degree(Vec<i64>);

impl Degree {
    pub fn coords(&self) -> &[i64] {
        &self.0
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Assignment of a degree to every basis index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grading {
    group: GradingGroup,
    degrees: Vec<Degree>,
}

impl Grading {
    pub fn new(group: GradingGroup, degrees: Vec<Vec<i64>>) -> Result<Self> {
        if group.rank() == 0 {
            return Err(Error::InvalidInput("grading group must have positive rank".into()));
        }
        let degrees = degrees.into_iter().map(|d| group.element(d)).collect::<Result<_>>()?;
        Ok(Self { group, degrees })
    }

    /// Every basis vector in degree zero.
    pub fn trivial(group: GradingGroup, dim: usize) -> Self {
        Self { group, degrees: vec![group.zero(); dim] }
    }

    pub fn group(&self) -> GradingGroup {
        self.group
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn degree(&self, i: usize) -> &Degree {
        &self.degrees[i]
    }

    pub fn degrees(&self) -> &[Degree] {
        &self.degrees
    }

    /// Degrees a homogeneous linear map can have: all of a finite group, else
    /// the differences between basis degrees.
    pub fn map_degrees(&self) -> Vec<Degree> {
        if let Some(all) = self.group.finite_elements() {
            return all;
        }
        let distinct: BTreeSet<&Degree> = self.degrees.iter().collect();
        let mut out = BTreeSet::new();
        for a in &distinct {
            for b in &distinct {
                out.insert(self.group.sub(a, b));
            }
        }
        out.into_iter().collect()
    }
}

/// Reports every pair `i < j` whose bracket has a component outside degree
/// `deg(i) + deg(j)`; the residual is that stray component.
pub fn check_grading(alg: &LieAlgebra, grading: &Grading) -> Result<PairReport> {
    check_dim(alg.dim(), grading.dim())?;
    let group = grading.group();
    let mut report = PairReport::default();
    for ((i, j), v) in alg.brackets() {
        let expected = group.add(grading.degree(i), grading.degree(j));
        let mut stray = Vector::zeros(alg.dim());
        for (k, c) in v.nonzeros() {
            if *grading.degree(k) != expected {
                stray[k] = c.clone();
            }
        }
        report.record((i, j), stray);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z2_arithmetic_wraps() {
        let g = GradingGroup::Z2;
        let one = g.element(vec![1]).unwrap();
        assert_eq!(g.add(&one, &one), g.zero());
        assert_eq!(g.element(vec![-3]).unwrap(), one);
        assert!(g.element(vec![1, 0]).is_err());
    }

    #[test]
    fn finite_elements_enumerate_group() {
        let els = GradingGroup::Z2Pow(2).finite_elements().unwrap();
        let shown: Vec<String> = els.iter().map(ToString::to_string).collect();
        assert_eq!(shown, ["0,0", "0,1", "1,0", "1,1"]);
        assert!(GradingGroup::ZPow(1).finite_elements().is_none());
    }

    #[test]
    fn integer_grading_map_degrees_are_differences() {
        let g = Grading::new(GradingGroup::ZPow(1), vec![vec![0], vec![2]]).unwrap();
        let shown: Vec<String> = g.map_degrees().iter().map(ToString::to_string).collect();
        assert_eq!(shown, ["-2", "0", "2"]);
    }
}
