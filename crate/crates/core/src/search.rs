//! Search for transposed Poisson structures on a fixed Lie algebra.
//!
//! Every left multiplication of such a structure is a ½-derivation, so the
//! ansatz `l_{e_k} = Σ_a λ_{k,a} D_a` over a ½-derivation basis `D_a` covers
//! all candidates, and the compatibility axiom holds for every choice of λ.
//! Commutativity is linear in λ and is eliminated exactly. Associativity is
//! quadratic; it is handed to the case-splitting solver in [`crate::poly`].

use num_traits::Zero;

use crate::derivation::{is_one_half, DerivationSpace};
use crate::error::{check_dim, Error, Result};
use crate::lie::LieAlgebra;
use crate::linalg::{solve_affine, SparseMatrix, Vector};
use crate::poisson::{check_transposed_poisson, Product};
use crate::poly::{solve_system, Affine, Monomial, Polynomial, PolynomialConstraint, Solution};
use crate::scalar::{format_scalar, int, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchStatus {
    Complete,
    Unresolved,
}

impl SearchStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            SearchStatus::Complete => "complete",
            SearchStatus::Unresolved => "unresolved",
        }
    }
}

/// An affine family `base + Σ p_f · directions[f]` of products.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductFamily {
    pub parameters: Vec<String>,
    pub base: Product,
    pub directions: Vec<Product>,
}

impl ProductFamily {
    pub fn dim(&self) -> usize {
        self.directions.len()
    }

    /// A family is non-trivial when it contains a nonzero product.
    pub fn is_nontrivial(&self) -> bool {
        !self.base.is_zero() || self.directions.iter().any(|d| !d.is_zero())
    }

    pub fn member(&self, values: &[Scalar]) -> Result<Product> {
        check_dim(self.directions.len(), values.len())?;
        self.directions.iter().zip(values).try_fold(self.base.clone(), |acc, (d, v)| acc.add(&d.scaled(v)))
    }

    /// Human-readable listing of the nonzero products, e.g. `s12·s12 = c1*z`.
    pub fn describe(&self, alg: &LieAlgebra) -> String {
        let d = self.base.dim();
        let mut lines = Vec::new();
        for i in 0..d {
            for j in i..d {
                let mut terms = Vec::new();
                for k in 0..d {
                    let mut coeff = Polynomial::zero();
                    coeff.add_term(Monomial::constant(), self.base.basis_product(i, j)[k].clone());
                    for (f, dir) in self.directions.iter().enumerate() {
                        coeff.add_term(Monomial::var(f), dir.basis_product(i, j)[k].clone());
                    }
                    if coeff.is_zero() {
                        continue;
                    }
                    let rendered = coeff.render(&self.parameters);
                    let single = coeff.terms().count() == 1;
                    terms.push(match (rendered.as_str(), single) {
                        ("1", _) => alg.label(k).to_string(),
                        ("-1", _) => format!("-{}", alg.label(k)),
                        (r, true) => format!("{r}*{}", alg.label(k)),
                        (r, false) => format!("({r})*{}", alg.label(k)),
                    });
                }
                if !terms.is_empty() {
                    lines.push(format!("{}·{} = {}", alg.label(i), alg.label(j), terms.join(" + ")));
                }
            }
        }
        if lines.is_empty() {
            "zero product".into()
        } else {
            lines.join("; ")
        }
    }
}

/// Output of [`search_structures`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    /// Names `t1, t2, …` of the parameters left after commutativity.
    pub parameters: Vec<String>,
    /// Commutative candidates `base + Σ t_s · directions[s]`.
    pub base: Product,
    pub directions: Vec<Product>,
    /// Associativity equations in the `t` parameters, deduplicated and monic.
    pub residual_constraints: Vec<PolynomialConstraint>,
    /// Solution families with their descriptions; empty when unresolved.
    pub classified: Vec<(String, ProductFamily)>,
    pub status: SearchStatus,
}

impl SearchResult {
    pub fn nontrivial(&self) -> impl Iterator<Item = &(String, ProductFamily)> + '_ {
        self.classified.iter().filter(|(_, f)| f.is_nontrivial())
    }

    /// True when the search finished and only the zero product survived.
    pub fn only_zero_product(&self) -> bool {
        self.status == SearchStatus::Complete && self.nontrivial().next().is_none()
    }
}

fn product_from_lambda(ds: &DerivationSpace<'_>, lambda: &[Scalar]) -> Product {
    let d = ds.algebra.dim();
    let r = ds.basis.len();
    let mut entries = Vec::new();
    for k in 0..d {
        for j in k..d {
            let mut v = Vector::zeros(d);
            for (a, map) in ds.basis.iter().enumerate() {
                let c = &lambda[k * r + a];
                if !c.is_zero() {
                    v.add_scaled(c, &map.image(j));
                }
            }
            entries.push((k, j, v));
        }
    }
    Product::new(d, entries).expect("indices in range")
}

/// Associativity residuals of `Σ t_s M_s` as polynomials in `t`.
fn associativity_constraints(dirs: &[Product], dim: usize) -> Vec<Polynomial> {
    let tables: Vec<Vec<Vec<Vector>>> =
        dirs.iter().map(|p| (0..dim).map(|i| (0..dim).map(|j| p.basis_product(i, j)).collect()).collect()).collect();
    let mul = |s: usize, x: &Vector, k: usize, left: bool| -> Vector {
        let mut out = Vector::zeros(dim);
        for (m, c) in x.nonzeros() {
            let v = if left { &tables[s][m][k] } else { &tables[s][k][m] };
            out.add_scaled(c, v);
        }
        out
    };
    let mut found: Vec<Polynomial> = Vec::new();
    for i in 0..dim {
        for j in 0..dim {
            for k in 0..dim {
                let mut coords = vec![Polynomial::zero(); dim];
                for s in 0..dirs.len() {
                    for u in 0..dirs.len() {
                        // (M_s(e_i,e_j))·_u e_k − e_i ·_u M_s(e_j,e_k)
                        let a = mul(u, &tables[s][i][j], k, true);
                        let b = mul(u, &tables[s][j][k], i, false);
                        for (c, val) in (&a - &b).nonzeros() {
                            coords[c].add_term(Monomial::product(s, u), val.clone());
                        }
                    }
                }
                for p in coords.into_iter().filter(|p| !p.is_zero()) {
                    let p = p.monic();
                    if !found.contains(&p) {
                        found.push(p);
                    }
                }
            }
        }
    }
    found
}

fn family_from_affine(comp: &Affine, dirs: &[Product], dim: usize) -> ProductFamily {
    let combine = |coeffs: &[Scalar]| -> Product {
        coeffs
            .iter()
            .zip(dirs)
            .try_fold(Product::zero(dim), |acc, (c, p)| acc.add(&p.scaled(c)))
            .expect("same dimension")
    };
    let offsets: Vec<Scalar> = comp.rows.iter().map(|(_, c)| c.clone()).collect();
    let base = combine(&offsets);
    let directions = (0..comp.nfree)
        .map(|f| {
            let coeffs: Vec<Scalar> = comp.rows.iter().map(|(row, _)| row[f].clone()).collect();
            combine(&coeffs)
        })
        .collect();
    ProductFamily { parameters: (1..=comp.nfree).map(|f| format!("c{f}")).collect(), base, directions }
}

/// Verifies a family exhaustively: the axioms are at most quadratic in the
/// family parameters, so checking at `0`, `u_f`, `2u_f` and `u_f + u_g`
/// covers every coefficient.
fn family_passes(alg: &LieAlgebra, fam: &ProductFamily) -> Result<bool> {
    let m = fam.dim();
    let mut points = vec![vec![Scalar::zero(); m]];
    for f in 0..m {
        for scale in [1, 2] {
            let mut p = vec![Scalar::zero(); m];
            p[f] = int(scale);
            points.push(p);
        }
        for g in f + 1..m {
            let mut p = vec![Scalar::zero(); m];
            p[f] = int(1);
            p[g] = int(1);
            points.push(p);
        }
    }
    for p in points {
        if !check_transposed_poisson(alg, &fam.member(&p)?)?.is_ok() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Finds all transposed Poisson structures on `alg`, given its ½-derivations.
pub fn search_structures(alg: &LieAlgebra, ds: &DerivationSpace<'_>) -> Result<SearchResult> {
    if !is_one_half(&ds.delta) {
        return Err(Error::InvalidInput(format!("search needs ½-derivations, got δ = {}", format_scalar(&ds.delta))));
    }
    if ds.algebra != alg {
        return Err(Error::InvalidInput("derivation space belongs to a different algebra".into()));
    }
    let d = alg.dim();
    let r = ds.basis.len();

    // Commutativity: l_{e_i}(e_j) − l_{e_j}(e_i) = 0 for i < j.
    let mut triplets = Vec::new();
    let mut row = 0;
    for i in 0..d {
        for j in i + 1..d {
            for c in 0..d {
                for (a, map) in ds.basis.iter().enumerate() {
                    let plus = map.entry(c, j);
                    let minus = map.entry(c, i);
                    let mut coeff_i = Scalar::zero();
                    coeff_i += plus;
                    let mut coeff_j = Scalar::zero();
                    coeff_j -= minus;
                    triplets.push((row, i * r + a, coeff_i));
                    triplets.push((row, j * r + a, coeff_j));
                }
                row += 1;
            }
        }
    }
    let system = SparseMatrix::from_triplets(row, d * r, triplets)?;
    let (particular, kernel) = solve_affine(&system, &Vector::zeros(row))?.expect("homogeneous systems are consistent");
    let base = product_from_lambda(ds, particular.as_slice());
    let directions: Vec<Product> = kernel.iter().map(|h| product_from_lambda(ds, h.as_slice())).collect();
    let parameters: Vec<String> = (1..=directions.len()).map(|s| format!("t{s}")).collect();

    let residual = associativity_constraints(&directions, d);
    let residual_constraints =
        residual.iter().map(|p| PolynomialConstraint { variables: parameters.clone(), poly: p.clone() }).collect();

    let (classified, status) = match solve_system(&residual, directions.len()) {
        Solution::Components(components) => {
            let mut out = Vec::new();
            for comp in &components {
                let fam = family_from_affine(comp, &directions, d);
                assert!(family_passes(alg, &fam)?, "classified family fails the transposed Poisson axioms");
                out.push((fam.describe(alg), fam));
            }
            (out, SearchStatus::Complete)
        }
        Solution::Unresolved(_) => (Vec::new(), SearchStatus::Unresolved),
    };
    Ok(SearchResult { parameters, base, directions, residual_constraints, classified, status })
}
