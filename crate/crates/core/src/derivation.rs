//! δ-derivations: linear maps with `φ([x,y]) = δ([φ(x),y] + [x,φ(y)])`.
//!
//! δ = 1 gives ordinary derivations and δ = 1/2 the ½-derivations that
//! govern transposed Poisson structures. The solution space is the kernel of
//! a linear system in the `dim²` matrix entries of φ.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{check_dim, Error, Result};
use crate::grading::{check_grading, Degree, Grading};
use crate::lie::LieAlgebra;
use crate::linalg::{nullspace_basis, rank, SparseMatrix, Vector};
use crate::map::LinearMap;
use crate::report::PairReport;
use crate::scalar::{ratio, Scalar};

pub fn half() -> Scalar {
    ratio(1, 2)
}

/// Constraint matrix for δ-derivations of `alg`.
///
/// Column `i * dim + k` is the unknown coefficient of `e_k` in `φ(e_i)`. Row
/// `p * dim + c` is coordinate `c` of `φ([e_i,e_j]) − δ([φ(e_i),e_j] + [e_i,φ(e_j)])`
/// for the `p`-th pair `i < j` in lexicographic order.
pub fn derivation_constraints(alg: &LieAlgebra, delta: &Scalar) -> SparseMatrix {
    let d = alg.dim();
    let mut rows: Vec<Vec<(usize, Scalar)>> = Vec::with_capacity(d * d * d.saturating_sub(1) / 2);
    let mut block: Vec<BTreeMap<usize, Scalar>> = vec![BTreeMap::new(); d];
    let add = |block: &mut Vec<BTreeMap<usize, Scalar>>, row: usize, col: usize, v: Scalar| {
        *block[row].entry(col).or_insert_with(Scalar::zero) += v;
    };
    for i in 0..d {
        for j in i + 1..d {
            for (m, c) in alg.structure(i, j) {
                for coord in 0..d {
                    add(&mut block, coord, m * d + coord, c.clone());
                }
            }
            // −δ[φ(e_i), e_j]: [e_k, e_j] = −[e_j, e_k].
            for (k, expansion) in alg.partners(j) {
                for (coord, v) in expansion {
                    add(&mut block, *coord, i * d + k, delta * v);
                }
            }
            // −δ[e_i, φ(e_j)].
            for (k, expansion) in alg.partners(i) {
                for (coord, v) in expansion {
                    add(&mut block, *coord, j * d + k, -(delta * v));
                }
            }
            for row in block.iter_mut() {
                rows.push(std::mem::take(row).into_iter().filter(|(_, v)| !v.is_zero()).collect());
            }
        }
    }
    SparseMatrix::from_sorted_rows(d * d, rows)
}

/// Basis of the δ-derivations of an algebra.
#[derive(Clone, Debug)]
pub struct DerivationSpace<'a> {
    pub algebra: &'a LieAlgebra,
    pub delta: Scalar,
    pub basis: Vec<LinearMap>,
    pub constraint_rank: usize,
}

impl DerivationSpace<'_> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// True when every δ-derivation is a scalar multiple of the identity.
    pub fn is_trivial(&self) -> bool {
        if self.basis.is_empty() {
            return true;
        }
        let n = self.algebra.dim();
        let mut rows: Vec<Vec<Scalar>> = self.basis.iter().map(|m| m.to_flat().into_inner()).collect();
        rows.push(LinearMap::identity(n).to_flat().into_inner());
        let stacked = SparseMatrix::from_dense(n * n, &rows).expect("square maps");
        rank(&stacked) <= 1
    }

    /// Whether `phi` lies in the span of the basis.
    pub fn contains(&self, phi: &LinearMap) -> Result<bool> {
        check_dim(self.algebra.dim(), phi.dim())?;
        let n = self.algebra.dim();
        let mut rows: Vec<Vec<Scalar>> = self.basis.iter().map(|m| m.to_flat().into_inner()).collect();
        let base = rank(&SparseMatrix::from_dense(n * n, &rows)?);
        rows.push(phi.to_flat().into_inner());
        Ok(rank(&SparseMatrix::from_dense(n * n, &rows)?) == base)
    }
}

/// Solves for all δ-derivations; the basis is the canonical kernel basis of
/// [`derivation_constraints`], reshaped into maps.
pub fn derivation_space<'a>(alg: &'a LieAlgebra, delta: &Scalar) -> DerivationSpace<'a> {
    let d = alg.dim();
    let constraints = derivation_constraints(alg, delta);
    let kernel = nullspace_basis(&constraints);
    let basis: Vec<LinearMap> =
        kernel.into_iter().map(|v| LinearMap::from_flat(d, v).expect("kernel vectors have length dim²")).collect();
    for phi in &basis {
        let report = is_delta_derivation(alg, phi, delta).expect("dimensions match");
        assert!(report.is_ok(), "solver produced a map failing the δ-derivation identity");
    }
    DerivationSpace { algebra: alg, delta: delta.clone(), constraint_rank: d * d - basis.len(), basis }
}

/// Direct check of the δ-derivation identity on every basis pair `i < j`;
/// residuals are `φ([e_i,e_j]) − δ([φ(e_i),e_j] + [e_i,φ(e_j)])`.
pub fn is_delta_derivation(alg: &LieAlgebra, phi: &LinearMap, delta: &Scalar) -> Result<PairReport> {
    check_dim(alg.dim(), phi.dim())?;
    let d = alg.dim();
    let images: Vec<Vector> = (0..d).map(|i| phi.image(i)).collect();
    let mut report = PairReport::default();
    for i in 0..d {
        for j in i + 1..d {
            let mut lhs = Vector::zeros(d);
            for (m, c) in alg.structure(i, j) {
                lhs.add_scaled(c, &images[*m]);
            }
            let rhs =
                &alg.bracket_unchecked(&images[i], &alg.unit(j)) + &alg.bracket_unchecked(&alg.unit(i), &images[j]);
            report.record((i, j), &lhs - &rhs.scaled(delta));
        }
    }
    Ok(report)
}

/// Homogeneous components `φ_g = Σ_m ρ_{g+m} ∘ φ ∘ ρ_m`, keyed by degree;
/// only nonzero components are returned.
pub fn graded_components(phi: &LinearMap, grading: &Grading) -> Result<BTreeMap<Degree, LinearMap>> {
    check_dim(grading.dim(), phi.dim())?;
    let group = grading.group();
    let mut out: BTreeMap<Degree, LinearMap> = BTreeMap::new();
    for (target, source, v) in phi.nonzeros() {
        let g = group.sub(grading.degree(target), grading.degree(source));
        out.entry(g).or_insert_with(|| LinearMap::zero(phi.dim())).set(target, source, v.clone());
    }
    Ok(out)
}

fn block_degree(grading: &Grading, target: usize, source: usize) -> Degree {
    grading.group().sub(grading.degree(target), grading.degree(source))
}

/// Splits the solution space into homogeneous pieces.
///
/// For each possible map degree `g`, the degree-`g` piece is the
/// intersection of the span of `ds.basis` with the maps supported on the
/// `deg(h) → deg(g+h)` blocks. Every returned map is re-verified.
pub fn decompose_derivation_space(
    ds: &DerivationSpace<'_>,
    grading: &Grading,
) -> Result<BTreeMap<Degree, Vec<LinearMap>>> {
    let alg = ds.algebra;
    if !check_grading(alg, grading)?.is_ok() {
        return Err(Error::InvalidInput("grading is not compatible with the bracket".into()));
    }
    let d = alg.dim();
    let r = ds.basis.len();
    let mut out = BTreeMap::new();
    let mut total = 0;
    for g in grading.map_degrees() {
        // Coefficients c with Σ c_a B_a vanishing off the g-blocks.
        let mut rows = Vec::new();
        for source in 0..d {
            for target in 0..d {
                if block_degree(grading, target, source) == g {
                    continue;
                }
                let row: Vec<(usize, Scalar)> = ds
                    .basis
                    .iter()
                    .enumerate()
                    .map(|(a, m)| (a, m.entry(target, source).clone()))
                    .filter(|(_, v)| !v.is_zero())
                    .collect();
                if !row.is_empty() {
                    rows.push(row);
                }
            }
        }
        let system = SparseMatrix::from_sorted_rows(r, rows);
        let mut piece = Vec::new();
        for coeffs in nullspace_basis(&system) {
            let mut phi = LinearMap::zero(d);
            for (a, c) in coeffs.nonzeros() {
                phi = phi.add(&ds.basis[a].scaled(c))?;
            }
            if !is_delta_derivation(alg, &phi, &ds.delta)?.is_ok() {
                return Err(Error::InvalidInput(format!("degree {g} component fails the δ-derivation identity")));
            }
            piece.push(phi);
        }
        total += piece.len();
        out.insert(g, piece);
    }
    if total != r {
        return Err(Error::InvalidInput(format!("homogeneous pieces have total dimension {total}, expected {r}")));
    }
    Ok(out)
}

pub(crate) fn is_one_half(delta: &Scalar) -> bool {
    delta.numer().is_one() && *delta.denom() == num_bigint::BigInt::from(2)
}
