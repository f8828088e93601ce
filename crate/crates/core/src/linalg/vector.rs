use std::ops::{Add, Index, IndexMut, Neg, Sub};

use num_traits::Zero;

use crate::scalar::Scalar;

/// A dense coordinate vector over ℚ.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Vector(Vec<Scalar>);

impl Vector {
    pub fn zeros(dim: usize) -> Self {
        Self(vec![Scalar::zero(); dim])
    }

    /// The `i`-th standard basis vector.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[i] = num_traits::One::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[Scalar] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<Scalar> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Scalar> {
        self.0.iter()
    }

    /// Nonzero coordinates in increasing index order.
    pub fn nonzeros(&self) -> impl Iterator<Item = (usize, &Scalar)> + '_ {
        self.0.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scaled(&self, c: &Scalar) -> Self {
        Self(self.0.iter().map(|x| x * c).collect())
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, c: &Scalar, other: &Vector) {
        debug_assert_eq!(self.dim(), other.dim());
        if c.is_zero() {
            return;
        }
        for (i, x) in other.nonzeros() {
            self.0[i] += c * x;
        }
    }
}

impl From<Vec<Scalar>> for Vector {
    fn from(v: Vec<Scalar>) -> Self {
        Self(v)
    }
}

impl FromIterator<Scalar> for Vector {
    fn from_iter<T: IntoIterator<Item = Scalar>>(iter: T) -> Self {
        Self(iter.into_iter().collect())
    }
}

impl Index<usize> for Vector {
    type Output = Scalar;
    fn index(&self, i: usize) -> &Scalar {
        &self.0[i]
    }
}

impl IndexMut<usize> for Vector {
    fn index_mut(&mut self, i: usize) -> &mut Scalar {
        &mut self.0[i]
    }
}

impl Add for &Vector {
    type Output = Vector;
    fn add(self, rhs: &Vector) -> Vector {
        assert_eq!(self.dim(), rhs.dim(), "vector dimension mismatch");
        self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect()
    }
}

impl Sub for &Vector {
    type Output = Vector;
    fn sub(self, rhs: &Vector) -> Vector {
        assert_eq!(self.dim(), rhs.dim(), "vector dimension mismatch");
        self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect()
    }
}

impl Neg for &Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        self.0.iter().map(|a| -a).collect()
    }
}
