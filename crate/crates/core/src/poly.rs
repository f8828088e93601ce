//! Polynomials of degree at most two over ℚ, and a small solver for systems
//! of them.
//!
//! The solver only handles systems that reduce, after linear elimination, to
//! equations that are linear or factor into two linear forms. Each factored
//! equation splits the search into two cases. Anything else, or a case tree
//! with more than [`MAX_BRANCHES`] leaves, is reported as unresolved.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::linalg::{rank, solve_affine, SparseMatrix, Vector};
use crate::scalar::{format_scalar, Scalar};

pub const MAX_BRANCHES: usize = 64;

/// A monomial as a sorted multiset of variable indices; the empty monomial
/// is the constant term.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<usize>);

impl Monomial {
    pub fn constant() -> Self {
        Self(Vec::new())
    }

    pub fn var(v: usize) -> Self {
        Self(vec![v])
    }

    pub fn product(a: usize, b: usize) -> Self {
        Self(if a <= b { vec![a, b] } else { vec![b, a] })
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn vars(&self) -> &[usize] {
        &self.0
    }
}

/// A polynomial of total degree ≤ 2 in indexed variables. No zero
/// coefficients are stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Scalar>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        assert!(m.degree() <= 2, "degree exceeds two");
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m.clone()).or_insert_with(Scalar::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> + '_ {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Scaled so the coefficient of the highest-ordered monomial among those
    /// of top degree is one.
    pub fn monic(&self) -> Self {
        let top = self.degree();
        let lead = self.terms.iter().filter(|(m, _)| m.degree() == top).map(|(_, c)| c.clone()).next();
        match lead {
            Some(lead) => Self { terms: self.terms.iter().map(|(m, c)| (m.clone(), c / &lead)).collect() },
            None => self.clone(),
        }
    }

    pub fn evaluate(&self, point: &[Scalar]) -> Scalar {
        self.terms
            .iter()
            .map(|(m, c)| m.vars().iter().fold(c.clone(), |acc, &v| acc * &point[v]))
            .fold(Scalar::zero(), |a, b| a + b)
    }

    /// Substitutes `x_v = coeffs_v · y + const_v` for every variable.
    fn substitute(&self, subst: &Affine) -> Self {
        let linear = |v: usize| -> Vec<(Option<usize>, Scalar)> {
            let (coeffs, c) = &subst.rows[v];
            let mut out: Vec<(Option<usize>, Scalar)> = coeffs.nonzeros().map(|(f, a)| (Some(f), a.clone())).collect();
            if !c.is_zero() {
                out.push((None, c.clone()));
            }
            out
        };
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            match m.vars() {
                [] => out.add_term(Monomial::constant(), c.clone()),
                [a] => {
                    for (f, x) in linear(*a) {
                        out.add_term(f.map_or_else(Monomial::constant, Monomial::var), c * x);
                    }
                }
                [a, b] => {
                    let la = linear(*a);
                    let lb = linear(*b);
                    for (f, x) in &la {
                        for (g, y) in &lb {
                            let mono = match (f, g) {
                                (Some(f), Some(g)) => Monomial::product(*f, *g),
                                (Some(f), None) | (None, Some(f)) => Monomial::var(*f),
                                (None, None) => Monomial::constant(),
                            };
                            out.add_term(mono, c * x * y);
                        }
                    }
                }
                _ => unreachable!("degree ≤ 2"),
            }
        }
        out
    }

    /// Writes the polynomial with the given variable names, e.g. `t1^2 - 2*t1*t2 + 1/2`.
    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut ordered: Vec<(&Monomial, &Scalar)> = self.terms.iter().collect();
        ordered.sort_by(|a, b| b.0.degree().cmp(&a.0.degree()).then(a.0.cmp(b.0)));
        let mut out = String::new();
        for (idx, (m, c)) in ordered.into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let vars: Vec<String> = match m.vars() {
                [] => vec![],
                [a] => vec![names[*a].clone()],
                [a, b] if a == b => vec![format!("{}^2", names[*a])],
                [a, b] => vec![names[*a].clone(), names[*b].clone()],
                _ => unreachable!(),
            };
            if vars.is_empty() {
                out.push_str(&format_scalar(&abs));
            } else {
                if !abs.is_one() {
                    out.push_str(&format_scalar(&abs));
                    out.push('*');
                }
                out.push_str(&vars.join("*"));
            }
        }
        out
    }
}

/// A polynomial equation `poly = 0` over named parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolynomialConstraint {
    pub variables: Vec<String>,
    pub poly: Polynomial,
}

impl fmt::Display for PolynomialConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = 0", self.poly.render(&self.variables))
    }
}

/// Affine substitution: variable `v` equals `rows[v].0 · y + rows[v].1` in
/// `nfree` new variables `y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Affine {
    pub nfree: usize,
    pub rows: Vec<(Vector, Scalar)>,
}

impl Affine {
    pub fn identity(n: usize) -> Self {
        Self { nfree: n, rows: (0..n).map(|v| (Vector::unit(n, v), Scalar::zero())).collect() }
    }

    /// Point of the family for free values `y`.
    pub fn point(&self, y: &[Scalar]) -> Vec<Scalar> {
        self.rows.iter().map(|(coeffs, c)| coeffs.iter().zip(y).fold(c.clone(), |acc, (a, b)| acc + a * b)).collect()
    }

    /// `self ∘ inner`: substitute the free variables of `self` by `inner`.
    fn compose(&self, inner: &Affine) -> Affine {
        let rows = self
            .rows
            .iter()
            .map(|(coeffs, c)| {
                let mut nc = Vector::zeros(inner.nfree);
                let mut k = c.clone();
                for (f, a) in coeffs.nonzeros() {
                    nc.add_scaled(a, &inner.rows[f].0);
                    k += a * &inner.rows[f].1;
                }
                (nc, k)
            })
            .collect();
        Affine { nfree: inner.nfree, rows }
    }

    fn offset(&self) -> Vector {
        self.rows.iter().map(|(_, c)| c.clone()).collect()
    }

    fn directions(&self) -> Vec<Vector> {
        (0..self.nfree).map(|f| self.rows.iter().map(|(coeffs, _)| coeffs[f].clone()).collect()).collect()
    }

    /// Whether every point of `self` lies in `other`.
    pub fn is_subset_of(&self, other: &Affine) -> bool {
        let n = self.rows.len();
        let dirs_other: Vec<Vec<Scalar>> = other.directions().into_iter().map(Vector::into_inner).collect();
        let base = rank(&SparseMatrix::from_dense(n, &dirs_other).expect("same ambient dimension"));
        let mut extended = dirs_other;
        extended.push((&self.offset() - &other.offset()).into_inner());
        extended.extend(self.directions().into_iter().map(Vector::into_inner));
        rank(&SparseMatrix::from_dense(n, &extended).expect("same ambient dimension")) == base
    }
}

/// Outcome of [`solve_system`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    /// The solution set is the union of these affine families (no family is
    /// contained in another). Empty when the system is inconsistent.
    Components(Vec<Affine>),
    /// The solver could not decide; carries the equation it got stuck on.
    Unresolved(Polynomial),
}

/// Solves `polys = 0` in `nvars` variables.
pub fn solve_system(polys: &[Polynomial], nvars: usize) -> Solution {
    let mut leaves = 0;
    let mut components = Vec::new();
    if let Err(stuck) = solve_rec(polys.to_vec(), Affine::identity(nvars), &mut leaves, &mut components) {
        return Solution::Unresolved(stuck);
    }
    let mut kept: Vec<Affine> = Vec::new();
    for (idx, c) in components.iter().enumerate() {
        let redundant = components.iter().enumerate().any(|(other_idx, other)| {
            other_idx != idx && c.is_subset_of(other) && (!other.is_subset_of(c) || other_idx < idx)
        });
        if !redundant {
            kept.push(c.clone());
        }
    }
    Solution::Components(kept)
}

fn solve_rec(
    polys: Vec<Polynomial>,
    subst: Affine,
    leaves: &mut usize,
    out: &mut Vec<Affine>,
) -> Result<(), Polynomial> {
    let polys: Vec<Polynomial> = polys.into_iter().filter(|p| !p.is_zero()).collect();
    if polys.iter().any(|p| p.degree() == 0) {
        *leaves += 1;
        return Ok(());
    }
    if polys.is_empty() {
        *leaves += 1;
        out.push(subst);
        return Ok(());
    }
    let nvars = subst.nfree;
    let (linear, quadratic): (Vec<_>, Vec<_>) = polys.into_iter().partition(|p| p.degree() == 1);
    if !linear.is_empty() {
        let mut triplets = Vec::new();
        let mut rhs = Vec::new();
        for (r, p) in linear.iter().enumerate() {
            for (m, c) in p.terms() {
                if let [v] = m.vars() {
                    triplets.push((r, *v, c.clone()));
                }
            }
            rhs.push(-p.coefficient(&Monomial::constant()));
        }
        let a = SparseMatrix::from_triplets(linear.len(), nvars, triplets).expect("indices in range");
        let Some((particular, kernel)) = solve_affine(&a, &Vector::from(rhs)).expect("shapes match") else {
            *leaves += 1;
            return Ok(());
        };
        let step = Affine {
            nfree: kernel.len(),
            rows: (0..nvars)
                .map(|v| (kernel.iter().map(|h| h[v].clone()).collect::<Vector>(), particular[v].clone()))
                .collect(),
        };
        let rest = quadratic.iter().map(|p| p.substitute(&step)).collect();
        return solve_rec(rest, subst.compose(&step), leaves, out);
    }
    for (idx, p) in quadratic.iter().enumerate() {
        if let Some((l1, l2)) = factor_linear_pair(p, nvars) {
            for factor in [l1, l2] {
                if *leaves >= MAX_BRANCHES {
                    return Err(p.clone());
                }
                let mut branch = quadratic.clone();
                branch[idx] = factor;
                solve_rec(branch, subst.clone(), leaves, out)?;
            }
            return Ok(());
        }
    }
    Err(quadratic[0].clone())
}

// Quadratic forms in `nvars + 1` homogeneous coordinates; index `nvars` is the
// homogenizing variable.
type Form = BTreeMap<(usize, usize), Scalar>;

fn homogenize(p: &Polynomial, nvars: usize) -> Form {
    let mut q = Form::new();
    for (m, c) in p.terms() {
        let key = match m.vars() {
            [] => (nvars, nvars),
            [a] => (*a, nvars),
            [a, b] => (*a, *b),
            _ => unreachable!(),
        };
        q.insert(key, c.clone());
    }
    q
}

fn form_coeff(q: &Form, a: usize, b: usize) -> Scalar {
    let key = if a <= b { (a, b) } else { (b, a) };
    q.get(&key).cloned().unwrap_or_else(Scalar::zero)
}

fn linear_poly(u: &[Scalar], nvars: usize) -> Polynomial {
    let mut p = Polynomial::zero();
    for (v, c) in u.iter().enumerate() {
        let m = if v == nvars { Monomial::constant() } else { Monomial::var(v) };
        p.add_term(m, c.clone());
    }
    p
}

/// Exact division of `q` by the linear form `u`, if it divides.
fn divide(q: &Form, u: &[Scalar]) -> Option<Vec<Scalar>> {
    let n = u.len();
    let p = u.iter().position(|c| !c.is_zero())?;
    let vp = form_coeff(q, p, p) / &u[p];
    let mut v = vec![Scalar::zero(); n];
    for b in 0..n {
        if b != p {
            v[b] = (form_coeff(q, p, b) - &u[b] * &vp) / &u[p];
        }
    }
    v[p] = vp;
    for a in 0..n {
        for b in a..n {
            let prod = if a == b { &u[a] * &v[a] } else { &u[a] * &v[b] + &u[b] * &v[a] };
            if prod != form_coeff(q, a, b) {
                return None;
            }
        }
    }
    Some(v)
}

fn rational_sqrt(x: &Scalar) -> Option<Scalar> {
    if x.is_negative() {
        return None;
    }
    let root = |v: &BigInt| -> Option<BigInt> {
        let r = v.sqrt();
        (&r * &r == *v).then_some(r)
    };
    Some(Scalar::new(root(x.numer())?, root(x.denom())?))
}

/// Writes a polynomial of degree two as a product of two polynomials of
/// degree one, when that is possible over ℚ.
pub fn factor_linear_pair(p: &Polynomial, nvars: usize) -> Option<(Polynomial, Polynomial)> {
    if p.degree() != 2 {
        return None;
    }
    let q = homogenize(p, nvars);
    let n = nvars + 1;
    let mut candidates: Vec<Vec<Scalar>> = Vec::new();
    // Rows of the symmetric matrix: proportional to a factor when the form has
    // rank one, or when that row's diagonal entry vanishes.
    for a in 0..n {
        let row: Vec<Scalar> = (0..n)
            .map(|b| if a == b { form_coeff(&q, a, a) } else { form_coeff(&q, a, b) / Scalar::from_integer(2.into()) })
            .collect();
        if row.iter().any(|c| !c.is_zero()) {
            candidates.push(row);
        }
    }
    // Quadratic formula in a variable with a square term.
    if let Some(a) = (0..n).find(|&a| !form_coeff(&q, a, a).is_zero()) {
        let qa = form_coeff(&q, a, a);
        let others: Vec<usize> = (0..n).filter(|&b| b != a).collect();
        // D = B² − 4·qa·C over the other variables.
        let mut disc = Form::new();
        for (i, &b) in others.iter().enumerate() {
            for &c in &others[i..] {
                let bb = form_coeff(&q, a, b);
                let bc = form_coeff(&q, a, c);
                let cross = if b == c { &bb * &bc } else { Scalar::from_integer(2.into()) * &bb * &bc };
                let val = cross - Scalar::from_integer(4.into()) * &qa * form_coeff(&q, b, c);
                if !val.is_zero() {
                    disc.insert((b, c), val);
                }
            }
        }
        let mut m = vec![Scalar::zero(); n];
        let sqrt_ok = if disc.is_empty() {
            true
        } else if let Some(c) = others.iter().copied().find(|&c| !form_coeff(&disc, c, c).is_zero()) {
            match rational_sqrt(&form_coeff(&disc, c, c)) {
                Some(root) => {
                    for &b in &others {
                        m[b] = if b == c {
                            root.clone()
                        } else {
                            form_coeff(&disc, c, b) / (Scalar::from_integer(2.into()) * &root)
                        };
                    }
                    true
                }
                None => false,
            }
        } else {
            false
        };
        if sqrt_ok {
            let two_qa = Scalar::from_integer(2.into()) * &qa;
            let mut u = vec![Scalar::zero(); n];
            u[a] = Scalar::one();
            for &b in &others {
                u[b] = (form_coeff(&q, a, b) - &m[b]) / &two_qa;
            }
            candidates.push(u);
        }
    }
    for u in candidates {
        if let Some(v) = divide(&q, &u) {
            if v.iter().all(Zero::is_zero) {
                continue;
            }
            let (l1, l2) = (linear_poly(&u, nvars), linear_poly(&v, nvars));
            if l1.degree() == 1 && l2.degree() == 1 {
                return Some((l1, l2));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};

    fn poly(terms: &[(&[usize], i64)]) -> Polynomial {
        let mut p = Polynomial::zero();
        for (vars, c) in terms {
            p.add_term(Monomial(vars.to_vec()), int(*c));
        }
        p
    }

    fn names(n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("t{i}")).collect()
    }

    fn product_of(l1: &Polynomial, l2: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (a, x) in l1.terms() {
            for (b, y) in l2.terms() {
                let mut vars = a.vars().to_vec();
                vars.extend_from_slice(b.vars());
                vars.sort_unstable();
                out.add_term(Monomial(vars), x * y);
            }
        }
        out
    }

    #[test]
    fn renders_readably() {
        let p = poly(&[(&[0, 0], 1), (&[0, 1], -2), (&[1], 3), (&[], -1)]);
        assert_eq!(p.render(&names(2)), "t1^2 - 2*t1*t2 + 3*t2 - 1");
        assert_eq!(Polynomial::zero().render(&names(1)), "0");
    }

    #[test]
    fn factors_products_of_linear_forms() {
        for p in [
            poly(&[(&[0, 1], 1)]),                                   // t1 t2
            poly(&[(&[0, 0], 1), (&[1, 1], -1)]),                    // t1² − t2²
            poly(&[(&[0, 0], 4), (&[0], 4), (&[], 1)]),              // (2 t1 + 1)²
            poly(&[(&[0, 1], 1), (&[0], 1), (&[1], -2), (&[], -2)]), // (t1 − 2)(t2 + 1)
            poly(&[(&[0, 0], 2), (&[0, 1], 3), (&[1, 1], 1)]),       // (2 t1 + t2)(t1 + t2)
        ] {
            let (l1, l2) = factor_linear_pair(&p, 2).unwrap_or_else(|| panic!("{}", p.render(&names(2))));
            assert_eq!(product_of(&l1, &l2), p);
        }
    }

    #[test]
    fn irreducible_forms_do_not_factor() {
        assert!(factor_linear_pair(&poly(&[(&[0, 0], 1), (&[1, 1], 1)]), 2).is_none());
        assert!(factor_linear_pair(&poly(&[(&[0, 0], 1), (&[], -2)]), 1).is_none());
        assert!(factor_linear_pair(&poly(&[(&[0, 1], 1), (&[2, 2], 1)]), 3).is_none());
    }

    #[test]
    fn solves_case_split_system() {
        // t1 t2 = 0, t1 + t2 − 1 = 0  →  (0, 1) and (1, 0).
        let sys = [poly(&[(&[0, 1], 1)]), poly(&[(&[0], 1), (&[1], 1), (&[], -1)])];
        let Solution::Components(cs) = solve_system(&sys, 2) else { panic!("unresolved") };
        let mut points: Vec<Vec<Scalar>> = cs.iter().map(|c| c.point(&[])).collect();
        points.sort();
        assert_eq!(points, vec![vec![int(0), int(1)], vec![int(1), int(0)]]);
    }

    #[test]
    fn inconsistent_and_free_systems() {
        let Solution::Components(cs) = solve_system(&[poly(&[(&[0], 1)]), poly(&[(&[0], 1), (&[], 1)])], 1) else {
            panic!()
        };
        assert!(cs.is_empty());
        let Solution::Components(cs) = solve_system(&[], 2) else { panic!() };
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].nfree, 2);
    }

    #[test]
    fn nested_components_are_pruned() {
        // t1² = 0 splits into t1 = 0 twice; t1 t2 = 0 with t1 = 0 also arises.
        let Solution::Components(cs) = solve_system(&[poly(&[(&[0, 0], 1)]), poly(&[(&[0, 1], 1)])], 2) else {
            panic!()
        };
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].nfree, 1);
        assert_eq!(cs[0].point(&[ratio(3, 2)]), vec![int(0), ratio(3, 2)]);
    }

    #[test]
    fn irreducible_system_is_unresolved() {
        let p = poly(&[(&[0, 0], 1), (&[1, 1], 1)]);
        assert_eq!(solve_system(std::slice::from_ref(&p), 2), Solution::Unresolved(p));
    }
}
