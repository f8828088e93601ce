use num_traits::{One, Zero};

use crate::error::{check_dim, Result};
use crate::lie::LieAlgebra;
use crate::linalg::Vector;
use crate::scalar::Scalar;

/// A linear endomorphism of a `dim`-dimensional algebra.
///
/// Stored column-major: entry `i * dim + k` is the coefficient of `e_k` in
/// the image of `e_i`. This is the same ordering as the unknowns of the
/// derivation constraint system, so flattening is free.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearMap {
    dim: usize,
    entries: Vec<Scalar>,
}

impl LinearMap {
    pub fn zero(dim: usize) -> Self {
        Self { dim, entries: vec![Scalar::zero(); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zero(dim);
        for i in 0..dim {
            m.set(i, i, Scalar::one());
        }
        m
    }

    /// Builds from the images of the basis vectors.
    pub fn from_columns(dim: usize, columns: &[Vector]) -> Result<Self> {
        check_dim(dim, columns.len())?;
        let mut entries = Vec::with_capacity(dim * dim);
        for c in columns {
            check_dim(dim, c.dim())?;
            entries.extend(c.iter().cloned());
        }
        Ok(Self { dim, entries })
    }

    /// Reshapes a flat coordinate vector of length `dim²`.
    pub fn from_flat(dim: usize, flat: Vector) -> Result<Self> {
        check_dim(dim * dim, flat.dim())?;
        Ok(Self { dim, entries: flat.into_inner() })
    }

    pub fn to_flat(&self) -> Vector {
        Vector::from(self.entries.clone())
    }

    /// The adjoint map `y ↦ [x, y]`.
    pub fn adjoint(alg: &LieAlgebra, x: &Vector) -> Result<Self> {
        let cols: Vec<Vector> = (0..alg.dim()).map(|i| alg.bracket(x, &alg.unit(i))).collect::<Result<_>>()?;
        Self::from_columns(alg.dim(), &cols)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Coefficient of `e_target` in the image of `e_source`.
    pub fn entry(&self, target: usize, source: usize) -> &Scalar {
        &self.entries[source * self.dim + target]
    }

    pub fn set(&mut self, target: usize, source: usize, value: Scalar) {
        self.entries[source * self.dim + target] = value;
    }

    /// Image of `e_source`.
    pub fn image(&self, source: usize) -> Vector {
        Vector::from(self.entries[source * self.dim..(source + 1) * self.dim].to_vec())
    }

    pub(crate) fn column(&self, source: usize) -> &[Scalar] {
        &self.entries[source * self.dim..(source + 1) * self.dim]
    }

    pub fn apply(&self, v: &Vector) -> Result<Vector> {
        check_dim(self.dim, v.dim())?;
        let mut out = Vector::zeros(self.dim);
        for (i, c) in v.nonzeros() {
            for (k, a) in self.column(i).iter().enumerate() {
                if !a.is_zero() {
                    out[k] += c * a;
                }
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn scaled(&self, c: &Scalar) -> Self {
        Self { dim: self.dim, entries: self.entries.iter().map(|x| x * c).collect() }
    }

    pub fn add(&self, other: &LinearMap) -> Result<Self> {
        check_dim(self.dim, other.dim)?;
        Ok(Self { dim: self.dim, entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect() })
    }

    /// Nonzero entries as `(target, source, value)`, ordered by source then target.
    pub fn nonzeros(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> + '_ {
        self.entries.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(move |(p, v)| (p % self.dim, p / self.dim, v))
    }
}
