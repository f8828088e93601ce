//! Built-in algebras: the Schrödinger algebra 𝒮ₙ and its pieces 𝔰𝔩₂, 𝔥ₙ, 𝔰𝔬ₙ.
//!
//! Basis order for 𝒮ₙ is `e, f, h, z, x_1…x_n, y_1…y_n, s_12, s_13, …,
//! s_(n-1)n` with the `s` pairs in lexicographic order. Subalgebras use the
//! same order restricted to their span. `s_jk` with `j > k` stands for
//! `-s_kj`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::grading::{Grading, GradingGroup};
use crate::lie::LieAlgebra;
use crate::linalg::Vector;
use crate::scalar::int;

/// Names understood by [`build_catalog`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CatalogName {
    Sl2,
    Heisenberg,
    So,
    Schrodinger,
}

impl CatalogName {
    pub const ALL: [CatalogName; 4] =
        [CatalogName::Sl2, CatalogName::Heisenberg, CatalogName::So, CatalogName::Schrodinger];

    pub fn as_str(self) -> &'static str {
        match self {
            CatalogName::Sl2 => "sl2",
            CatalogName::Heisenberg => "heisenberg",
            CatalogName::So => "so",
            CatalogName::Schrodinger => "schrodinger",
        }
    }

    pub fn takes_n(self) -> bool {
        self != CatalogName::Sl2
    }
}

impl fmt::Display for CatalogName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CatalogName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        CatalogName::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown algebra `{s}`")))
    }
}

/// Resolves `name` (optionally suffixed `_n`, e.g. `so_3`) and builds it.
pub fn build_catalog(name: &str, n: Option<usize>) -> Result<LieAlgebra> {
    let (base, suffix) = match name.rsplit_once('_') {
        Some((b, s)) if !s.is_empty() && s.bytes().all(|c| c.is_ascii_digit()) => {
            let v = s.parse::<usize>().map_err(|_| Error::InvalidInput(format!("bad index in `{name}`")))?;
            (b, Some(v))
        }
        _ => (name, None),
    };
    let kind: CatalogName = base.parse()?;
    let n = match (suffix, n) {
        (Some(a), Some(b)) if a != b => {
            return Err(Error::InvalidInput(format!("conflicting sizes {a} and {b} for `{base}`")))
        }
        (a, b) => a.or(b),
    };
    match (kind, n) {
        (CatalogName::Sl2, None) => Ok(sl2()),
        (CatalogName::Sl2, Some(_)) => Err(Error::InvalidInput("sl2 takes no size".into())),
        (_, None) => Err(Error::InvalidInput(format!("`{kind}` requires a size n"))),
        (CatalogName::Heisenberg, Some(n)) => heisenberg(n),
        (CatalogName::So, Some(n)) => so(n),
        (CatalogName::Schrodinger, Some(n)) => build_schrodinger(n),
    }
}

pub fn s_label(j: usize, k: usize) -> String {
    if j < 10 && k < 10 {
        format!("s{j}{k}")
    } else {
        format!("s{j}_{k}")
    }
}

fn so_pairs(n: usize) -> Vec<(usize, usize)> {
    (1..=n).flat_map(|j| (j + 1..=n).map(move |k| (j, k))).collect()
}

/// Accumulates relations `[a, b] = Σ c·t` keyed by basis index.
struct Relations {
    dim: usize,
    table: BTreeMap<(usize, usize), Vector>,
}

impl Relations {
    fn new(dim: usize) -> Self {
        Self { dim, table: BTreeMap::new() }
    }

    fn add(&mut self, a: usize, b: usize, terms: &[(i64, usize)]) {
        if terms.is_empty() {
            return;
        }
        let (key, sign) = if a < b { ((a, b), 1) } else { ((b, a), -1) };
        let v = self.table.entry(key).or_insert_with(|| Vector::zeros(self.dim));
        for &(c, t) in terms {
            v[t] += int(sign * c);
        }
    }

    fn build(self, name: String, labels: Vec<String>) -> LieAlgebra {
        let brackets = self.table.into_iter().map(|((i, j), v)| (i, j, v));
        LieAlgebra::new(name, labels, brackets).expect("catalog relations are well-formed")
    }
}

/// Index lookup for an 𝔰𝔬ₙ block starting at `offset`.
struct SoIndex {
    n: usize,
    offset: usize,
    pos: BTreeMap<(usize, usize), usize>,
}

impl SoIndex {
    fn new(n: usize, offset: usize) -> Self {
        let pos = so_pairs(n).into_iter().enumerate().map(|(p, jk)| (jk, offset + p)).collect();
        Self { n, offset, pos }
    }

    /// `s_jk` as (sign, index); `None` when `j = k`.
    fn get(&self, j: usize, k: usize) -> Option<(i64, usize)> {
        match j.cmp(&k) {
            std::cmp::Ordering::Less => Some((1, self.pos[&(j, k)])),
            std::cmp::Ordering::Greater => Some((-1, self.pos[&(k, j)])),
            std::cmp::Ordering::Equal => None,
        }
    }

    fn labels(&self) -> Vec<String> {
        so_pairs(self.n).into_iter().map(|(j, k)| s_label(j, k)).collect()
    }

    /// `[s_jk, s_lm] = δ_lk s_jm + δ_jm s_kl + δ_mk s_lj + δ_lj s_mk`.
    fn add_so_relations(&self, rel: &mut Relations) {
        let pairs = so_pairs(self.n);
        for (p, &(j, k)) in pairs.iter().enumerate() {
            for &(l, m) in &pairs[p + 1..] {
                let mut terms = Vec::new();
                let kd = |a: usize, b: usize| a == b;
                for (cond, a, b) in [(kd(l, k), j, m), (kd(j, m), k, l), (kd(m, k), l, j), (kd(l, j), m, k)] {
                    if cond {
                        if let Some((sign, idx)) = self.get(a, b) {
                            terms.push((sign, idx));
                        }
                    }
                }
                let a = self.offset + p;
                let b = self.pos[&(l, m)];
                rel.add(a, b, &terms);
            }
        }
    }
}

pub fn sl2() -> LieAlgebra {
    let mut rel = Relations::new(3);
    let (e, f, h) = (0, 1, 2);
    rel.add(e, f, &[(1, h)]);
    rel.add(h, e, &[(2, e)]);
    rel.add(f, h, &[(2, f)]);
    rel.build("sl2".into(), ["e", "f", "h"].map(String::from).to_vec())
}

pub fn heisenberg(n: usize) -> Result<LieAlgebra> {
    if n == 0 {
        return Err(Error::InvalidInput("heisenberg requires n ≥ 1".into()));
    }
    let dim = 1 + 2 * n;
    let mut rel = Relations::new(dim);
    for i in 0..n {
        rel.add(1 + i, 1 + n + i, &[(1, 0)]);
    }
    let mut labels = vec!["z".to_string()];
    labels.extend((1..=n).map(|i| format!("x{i}")));
    labels.extend((1..=n).map(|i| format!("y{i}")));
    Ok(rel.build(format!("heisenberg_{n}"), labels))
}

pub fn so(n: usize) -> Result<LieAlgebra> {
    if n < 2 {
        return Err(Error::InvalidInput("so requires n ≥ 2".into()));
    }
    let idx = SoIndex::new(n, 0);
    let mut rel = Relations::new(n * (n - 1) / 2);
    idx.add_so_relations(&mut rel);
    Ok(rel.build(format!("so_{n}"), idx.labels()))
}

pub fn schrodinger_dim(n: usize) -> usize {
    4 + 2 * n + n * n.saturating_sub(1) / 2
}

/// The Schrödinger algebra 𝒮ₙ, `n ≥ 1`.
pub fn build_schrodinger(n: usize) -> Result<LieAlgebra> {
    if n == 0 {
        return Err(Error::InvalidInput("schrodinger requires n ≥ 1".into()));
    }
    let dim = schrodinger_dim(n);
    let (e, f, h, z) = (0, 1, 2, 3);
    let x = |i: usize| 3 + i;
    let y = |i: usize| 3 + n + i;
    let so_idx = SoIndex::new(n, 4 + 2 * n);
    let mut rel = Relations::new(dim);

    rel.add(e, f, &[(1, h)]);
    rel.add(h, e, &[(2, e)]);
    rel.add(f, h, &[(2, f)]);
    for i in 1..=n {
        rel.add(x(i), y(i), &[(1, z)]);
        rel.add(h, x(i), &[(1, x(i))]);
        rel.add(h, y(i), &[(-1, y(i))]);
        rel.add(e, y(i), &[(1, x(i))]);
        rel.add(f, x(i), &[(1, y(i))]);
    }
    // [s_jk, x_i] = δ_ki x_j − δ_ji x_k, likewise for y.
    for (j, k) in so_pairs(n) {
        let (_, s) = so_idx.get(j, k).expect("j < k");
        for i in 1..=n {
            for offset in [3, 3 + n] {
                let v = |i: usize| offset + i;
                let mut terms = Vec::new();
                if k == i {
                    terms.push((1, v(j)));
                }
                if j == i {
                    terms.push((-1, v(k)));
                }
                rel.add(s, v(i), &terms);
            }
        }
    }
    so_idx.add_so_relations(&mut rel);

    let mut labels: Vec<String> = ["e", "f", "h", "z"].map(String::from).to_vec();
    labels.extend((1..=n).map(|i| format!("x{i}")));
    labels.extend((1..=n).map(|i| format!("y{i}")));
    labels.extend(so_idx.labels());
    Ok(rel.build(format!("schrodinger_{n}"), labels))
}

/// Recognizes `alg` as some 𝒮ₙ (same labels and brackets; the name is
/// ignored) and returns `n`.
pub fn schrodinger_rank(alg: &LieAlgebra) -> Option<usize> {
    let n = (1..).take_while(|&n| schrodinger_dim(n) <= alg.dim()).find(|&n| schrodinger_dim(n) == alg.dim())?;
    let reference = build_schrodinger(n).ok()?;
    let same = reference.labels() == alg.labels() && reference.brackets().eq(alg.brackets());
    same.then_some(n)
}

/// The ℤ₂-grading with `e, f, h, z, s_kl` even and `x_i, y_i` odd.
pub fn standard_grading(alg: &LieAlgebra) -> Result<Grading> {
    let n = schrodinger_rank(alg)
        .ok_or_else(|| Error::InvalidInput(format!("`{}` is not a Schrödinger algebra", alg.name())))?;
    let degrees = (0..alg.dim()).map(|i| vec![i64::from((4..4 + 2 * n).contains(&i))]).collect();
    Grading::new(GradingGroup::Z2, degrees)
}

/// Every catalog algebra with `n ≤ max_n` (and `sl2`).
pub fn catalog_up_to(max_n: usize) -> Vec<LieAlgebra> {
    let mut out = vec![sl2()];
    for n in 1..=max_n {
        out.push(heisenberg(n).expect("n ≥ 1"));
        if n >= 2 {
            out.push(so(n).expect("n ≥ 2"));
        }
        out.push(build_schrodinger(n).expect("n ≥ 1"));
    }
    out
}
