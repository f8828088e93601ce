use num_traits::Zero;

use crate::error::{check_dim, Error, Result};
use crate::linalg::Vector;
use crate::scalar::Scalar;

/// Row-compressed sparse matrix over ℚ. Each row keeps its entries sorted by
/// column, with no explicit zeros and no repeated columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    ncols: usize,
    rows: Vec<Vec<(usize, Scalar)>>,
}

impl SparseMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Self { ncols, rows: vec![Vec::new(); nrows] }
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n).map(|i| vec![(i, num_traits::One::one())]).collect();
        Self { ncols: n, rows }
    }

    /// Builds a matrix from `(row, col, value)` triplets. Zero values are
    /// dropped; repeated keys and out-of-range indices are rejected.
    pub fn from_triplets(
        nrows: usize,
        ncols: usize,
        entries: impl IntoIterator<Item = (usize, usize, Scalar)>,
    ) -> Result<Self> {
        let mut rows: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); nrows];
        for (r, c, v) in entries {
            if r >= nrows {
                return Err(Error::IndexOutOfRange { index: r, dim: nrows });
            }
            if c >= ncols {
                return Err(Error::IndexOutOfRange { index: c, dim: ncols });
            }
            rows[r].push((c, v));
        }
        for row in &mut rows {
            row.sort_by_key(|(c, _)| *c);
            if let Some(w) = row.windows(2).find(|w| w[0].0 == w[1].0) {
                return Err(Error::InvalidInput(format!("duplicate entry in column {}", w[0].0)));
            }
            row.retain(|(_, v)| !v.is_zero());
        }
        Ok(Self { ncols, rows })
    }

    pub fn from_dense(ncols: usize, dense: &[Vec<Scalar>]) -> Result<Self> {
        let rows = dense
            .iter()
            .map(|r| {
                check_dim(ncols, r.len())?;
                Ok(r.iter().cloned().enumerate().filter(|(_, v)| !v.is_zero()).collect())
            })
            .collect::<Result<_>>()?;
        Ok(Self { ncols, rows })
    }

    /// Builds from already-sorted, zero-free rows.
    pub(crate) fn from_sorted_rows(ncols: usize, rows: Vec<Vec<(usize, Scalar)>>) -> Self {
        debug_assert!(rows.iter().all(|r| r.windows(2).all(|w| w[0].0 < w[1].0)));
        debug_assert!(rows.iter().flatten().all(|(c, v)| *c < ncols && !v.is_zero()));
        Self { ncols, rows }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn row(&self, r: usize) -> &[(usize, Scalar)] {
        &self.rows[r]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[(usize, Scalar)]> + '_ {
        self.rows.iter().map(Vec::as_slice)
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        match self.rows[r].binary_search_by_key(&c, |(k, _)| *k) {
            Ok(pos) => self.rows[r][pos].1.clone(),
            Err(_) => Scalar::zero(),
        }
    }

    /// All stored entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> + '_ {
        self.rows.iter().enumerate().flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v)))
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    pub fn mul_vec(&self, v: &Vector) -> Result<Vector> {
        check_dim(self.ncols, v.dim())?;
        Ok(self.rows.iter().map(|row| row.iter().fold(Scalar::zero(), |acc, (c, a)| acc + a * &v[*c])).collect())
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        check_dim(self.ncols, other.ncols)?;
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Ok(Self { ncols: self.ncols, rows })
    }

    /// Appends `b` as an extra last column.
    pub(crate) fn augment(&self, b: &Vector) -> Result<SparseMatrix> {
        check_dim(self.nrows(), b.dim())?;
        let rows = self
            .rows
            .iter()
            .zip(b.iter())
            .map(|(row, bi)| {
                let mut row = row.clone();
                if !bi.is_zero() {
                    row.push((self.ncols, bi.clone()));
                }
                row
            })
            .collect();
        Ok(Self { ncols: self.ncols + 1, rows })
    }
}
