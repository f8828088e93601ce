//! Finite-dimensional Lie algebras given by structure constants.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{check_dim, Error, Result};
use crate::linalg::Vector;
use crate::report::{PairReport, TripleReport};
use crate::scalar::Scalar;

type SparseVec = Vec<(usize, Scalar)>;

/// A Lie algebra on a labelled basis `e_0, …, e_{d-1}`.
///
/// Only brackets `[e_i, e_j]` with `i < j` are stored; `[e_j, e_i]` follows by
/// antisymmetry and `[e_i, e_i] = 0`. The Jacobi identity is not assumed: use
/// [`LieAlgebra::check_jacobi`].
#[derive(Clone, Debug)]
pub struct LieAlgebra {
    name: String,
    labels: Vec<String>,
    brackets: BTreeMap<(usize, usize), Vector>,
    // table[i] = sorted (j, sparse [e_i, e_j]) over nonzero brackets, both orientations.
    table: Vec<Vec<(usize, SparseVec)>>,
}

impl PartialEq for LieAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.labels == other.labels && self.brackets == other.brackets
    }
}

impl Eq for LieAlgebra {}

impl LieAlgebra {
    /// Builds an algebra from bracket declarations `(i, j, [e_i, e_j])`.
    ///
    /// Pairs with `i > j` are stored as `(j, i)` with the vector negated. Zero
    /// brackets are dropped. Rejects out-of-range indices, vectors of the wrong
    /// length, nonzero `[e_i, e_i]` and any pair declared twice.
    pub fn new(
        name: impl Into<String>,
        labels: Vec<String>,
        brackets: impl IntoIterator<Item = (usize, usize, Vector)>,
    ) -> Result<Self> {
        let dim = labels.len();
        let mut table = BTreeMap::new();
        for (i, j, v) in brackets {
            for idx in [i, j] {
                if idx >= dim {
                    return Err(Error::IndexOutOfRange { index: idx, dim });
                }
            }
            check_dim(dim, v.dim())?;
            if i == j {
                if !v.is_zero() {
                    return Err(Error::InvalidInput(format!("nonzero self-bracket [{0}, {0}]", labels[i])));
                }
                continue;
            }
            let (key, v) = if i < j { ((i, j), v) } else { ((j, i), -&v) };
            if table.insert(key, v).is_some() {
                return Err(Error::InvalidInput(format!(
                    "bracket [{}, {}] declared twice",
                    labels[key.0], labels[key.1]
                )));
            }
        }
        table.retain(|_, v| !v.is_zero());
        Ok(Self::from_parts(name.into(), labels, table))
    }

    /// The abelian algebra with the given basis labels.
    pub fn abelian(name: impl Into<String>, labels: Vec<String>) -> Self {
        Self::from_parts(name.into(), labels, BTreeMap::new())
    }

    fn from_parts(name: String, labels: Vec<String>, brackets: BTreeMap<(usize, usize), Vector>) -> Self {
        let dim = labels.len();
        let mut table: Vec<Vec<(usize, SparseVec)>> = vec![Vec::new(); dim];
        for (&(i, j), v) in &brackets {
            let sparse: SparseVec = v.nonzeros().map(|(k, c)| (k, c.clone())).collect();
            let neg: SparseVec = sparse.iter().map(|(k, c)| (*k, -c)).collect();
            table[i].push((j, sparse));
            table[j].push((i, neg));
        }
        for row in &mut table {
            row.sort_by_key(|(j, _)| *j);
        }
        Self { name, labels, brackets, table }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Nonzero stored brackets, `i < j`, in lexicographic order.
    pub fn brackets(&self) -> impl Iterator<Item = ((usize, usize), &Vector)> + '_ {
        self.brackets.iter().map(|(k, v)| (*k, v))
    }

    pub fn is_abelian(&self) -> bool {
        self.brackets.is_empty()
    }

    /// Sparse expansion of `[e_i, e_j]` for any orientation.
    pub(crate) fn structure(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        match self.table[i].binary_search_by_key(&j, |(k, _)| *k) {
            Ok(pos) => &self.table[i][pos].1,
            Err(_) => &[],
        }
    }

    /// All `j` with `[e_i, e_j] ≠ 0`, with the expansion.
    pub(crate) fn partners(&self, i: usize) -> &[(usize, SparseVec)] {
        &self.table[i]
    }

    pub fn basis_bracket(&self, i: usize, j: usize) -> Vector {
        let mut v = Vector::zeros(self.dim());
        for (k, c) in self.structure(i, j) {
            v[*k] = c.clone();
        }
        v
    }

    pub fn bracket(&self, x: &Vector, y: &Vector) -> Result<Vector> {
        check_dim(self.dim(), x.dim())?;
        check_dim(self.dim(), y.dim())?;
        Ok(self.bracket_unchecked(x, y))
    }

    pub(crate) fn bracket_unchecked(&self, x: &Vector, y: &Vector) -> Vector {
        let mut out = Vector::zeros(self.dim());
        for (i, xi) in x.nonzeros() {
            for (j, expansion) in self.partners(i) {
                let yj = &y[*j];
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                for (k, v) in expansion {
                    out[*k] += &c * v;
                }
            }
        }
        out
    }

    /// `[[e_i, e_j], e_k]` as a dense vector.
    fn nested(&self, i: usize, j: usize, k: usize, out: &mut Vector) {
        for (m, c) in self.structure(i, j) {
            for (t, v) in self.structure(*m, k) {
                out[*t] += c * v;
            }
        }
    }

    /// Scans every triple `i < j < k` for
    /// `[[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j] = 0`.
    pub fn check_jacobi(&self) -> TripleReport {
        let d = self.dim();
        let mut report = TripleReport::default();
        for i in 0..d {
            for j in i + 1..d {
                for k in j + 1..d {
                    let mut r = Vector::zeros(d);
                    self.nested(i, j, k, &mut r);
                    self.nested(j, k, i, &mut r);
                    self.nested(k, i, j, &mut r);
                    report.record((i, j, k), r);
                }
            }
        }
        report
    }

    /// Evaluates `[e_i, e_j] + [e_j, e_i]` through the bilinear bracket for
    /// every ordered pair, including `i = j`.
    pub fn check_antisymmetry(&self) -> PairReport {
        let d = self.dim();
        let units: Vec<Vector> = (0..d).map(|i| Vector::unit(d, i)).collect();
        let mut report = PairReport::default();
        for i in 0..d {
            for j in i..d {
                let a = self.bracket_unchecked(&units[i], &units[j]);
                let b = self.bracket_unchecked(&units[j], &units[i]);
                report.record((i, j), &a + &b);
            }
        }
        report
    }

    /// Zero vector of the algebra's dimension.
    pub fn zero(&self) -> Vector {
        Vector::zeros(self.dim())
    }

    /// Basis vector `e_i`.
    pub fn unit(&self, i: usize) -> Vector {
        Vector::unit(self.dim(), i)
    }

    pub fn coefficient(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.structure(i, j).iter().find(|(t, _)| *t == k).map_or_else(Scalar::zero, |(_, c)| c.clone())
    }
}
