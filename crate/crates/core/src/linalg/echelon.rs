//! Fraction-free sparse Gaussian elimination.
//!
//! Rows are cleared of denominators and kept primitive (content one) over ℤ.
//! Forward elimination visits columns left to right; among the rows whose
//! leading entry sits in the current column, the one with the smallest
//! leading-coefficient bit length is the pivot (lowest original row index on
//! ties). Back substitution is also fraction-free, and only the final
//! normalization divides by the pivot entries.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::Result;
use crate::linalg::{SparseMatrix, Vector};
use crate::scalar::{bit_length, primitive_integer_vector, Scalar};

type IntRow = Vec<(usize, BigInt)>;

/// Result of [`rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon {
    /// Reduced row echelon form, same shape as the input; the first `rank`
    /// rows hold the pivots, the remaining rows are empty.
    pub reduced: SparseMatrix,
    pub rank: usize,
    /// Strictly increasing pivot columns, one per nonzero row of `reduced`.
    pub pivot_cols: Vec<usize>,
}

fn to_integer_row(row: &[(usize, Scalar)]) -> IntRow {
    let lcm = row.iter().fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
    let ints = row.iter().map(|(c, v)| (*c, (v.numer() * &lcm) / v.denom())).collect();
    make_primitive(ints)
}

fn make_primitive(mut row: IntRow) -> IntRow {
    let mut g = BigInt::zero();
    for (_, v) in &row {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    if let Some((_, lead)) = row.first() {
        if lead.is_negative() {
            g = -g;
        }
    }
    if !g.is_one() && !g.is_zero() {
        for (_, v) in &mut row {
            *v /= &g;
        }
    }
    row
}

/// `a * target - b * pivot`, with the common factor of `a` and `b` removed,
/// returned primitive.
fn eliminate(target: &IntRow, pivot: &IntRow, col: usize) -> IntRow {
    let t_pos = target.binary_search_by_key(&col, |(c, _)| *c).expect("column present in target");
    let p_pos = pivot.binary_search_by_key(&col, |(c, _)| *c).expect("column present in pivot");
    let (a, b) = {
        let pa = &pivot[p_pos].1;
        let tb = &target[t_pos].1;
        let g = pa.gcd(tb);
        (pa / &g, tb / &g)
    };
    let mut out = Vec::with_capacity(target.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() || j < pivot.len() {
        let ord = match (target.get(i), pivot.get(j)) {
            (Some((ci, _)), Some((cj, _))) => ci.cmp(cj),
            (Some(_), None) => Ordering::Less,
            (None, _) => Ordering::Greater,
        };
        match ord {
            Ordering::Less => {
                let (c, v) = &target[i];
                out.push((*c, v * &a));
                i += 1;
            }
            Ordering::Greater => {
                let (c, v) = &pivot[j];
                out.push((*c, -(v * &b)));
                j += 1;
            }
            Ordering::Equal => {
                let (c, v) = &target[i];
                let w = v * &a - &pivot[j].1 * &b;
                if !w.is_zero() {
                    out.push((*c, w));
                }
                i += 1;
                j += 1;
            }
        }
    }
    make_primitive(out)
}

/// Reduced row echelon form over ℚ.
pub fn rref(m: &SparseMatrix) -> Echelon {
    let ncols = m.ncols();
    // buckets[c] holds ids of unprocessed rows whose leading column is c.
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); ncols];
    let mut rows: Vec<IntRow> = Vec::with_capacity(m.nrows());
    for (id, row) in m.rows().enumerate() {
        let int_row = to_integer_row(row);
        if let Some((c, _)) = int_row.first() {
            buckets[*c].push(id);
        }
        rows.push(int_row);
    }

    let mut pivots: Vec<(usize, usize)> = Vec::new();
    for col in 0..ncols {
        let mut bucket = std::mem::take(&mut buckets[col]);
        if bucket.is_empty() {
            continue;
        }
        bucket.sort_unstable();
        let pivot_id = *bucket.iter().min_by_key(|&&id| (bit_length(&rows[id][0].1), id)).expect("nonempty bucket");
        let pivot_row = std::mem::take(&mut rows[pivot_id]);
        for &id in bucket.iter().filter(|&&id| id != pivot_id) {
            let reduced = eliminate(&rows[id], &pivot_row, col);
            if let Some((c, _)) = reduced.first() {
                buckets[*c].push(id);
            }
            rows[id] = reduced;
        }
        rows[pivot_id] = pivot_row;
        pivots.push((col, pivot_id));
    }

    let mut pivot_rows: Vec<IntRow> = pivots.iter().map(|(_, id)| std::mem::take(&mut rows[*id])).collect();
    drop(rows);
    for k in (0..pivot_rows.len()).rev() {
        let col = pivots[k].0;
        let (head, tail) = pivot_rows.split_at_mut(k);
        let pivot_row = &tail[0];
        for row in head.iter_mut() {
            if row.binary_search_by_key(&col, |(c, _)| *c).is_ok() {
                *row = eliminate(row, pivot_row, col);
            }
        }
    }

    let rank = pivot_rows.len();
    let mut out_rows: Vec<Vec<(usize, Scalar)>> = pivot_rows
        .into_iter()
        .map(|row| {
            let lead = row[0].1.clone();
            row.into_iter().map(|(c, v)| (c, Scalar::new(v, lead.clone()))).collect()
        })
        .collect();
    out_rows.resize(m.nrows().max(rank), Vec::new());
    Echelon {
        reduced: SparseMatrix::from_sorted_rows(ncols, out_rows),
        rank,
        pivot_cols: pivots.into_iter().map(|(c, _)| c).collect(),
    }
}

pub fn rank(m: &SparseMatrix) -> usize {
    rref(m).rank
}

fn kernel_from_echelon(ech: &Echelon, ncols: usize) -> Vec<Vector> {
    let mut is_pivot = vec![false; ncols];
    for &c in &ech.pivot_cols {
        is_pivot[c] = true;
    }
    let free: Vec<usize> = (0..ncols).filter(|&c| !is_pivot[c]).collect();
    let mut slot = vec![usize::MAX; ncols];
    for (k, &f) in free.iter().enumerate() {
        slot[f] = k;
    }
    let mut basis: Vec<Vec<Scalar>> = free
        .iter()
        .map(|&f| {
            let mut v = vec![Scalar::zero(); ncols];
            v[f] = Scalar::one();
            v
        })
        .collect();
    for (r, &p) in ech.pivot_cols.iter().enumerate() {
        for (c, val) in ech.reduced.row(r) {
            if *c != p {
                basis[slot[*c]][p] = -val;
            }
        }
    }
    basis.into_iter().map(|v| Vector::from(primitive_integer_vector(&v))).collect()
}

/// Canonical kernel basis: one vector per free column of the RREF, in
/// increasing free-column order, scaled to integer coordinates with content
/// one and a positive first nonzero coordinate.
pub fn nullspace_basis(m: &SparseMatrix) -> Vec<Vector> {
    kernel_from_echelon(&rref(m), m.ncols())
}

/// Solution set of `a x = b`: a particular solution plus a kernel basis of
/// `a`, or `None` when the system is inconsistent.
pub fn solve_affine(a: &SparseMatrix, b: &Vector) -> Result<Option<(Vector, Vec<Vector>)>> {
    let aug = a.augment(b)?;
    let ech = rref(&aug);
    let n = a.ncols();
    if ech.pivot_cols.last() == Some(&n) {
        return Ok(None);
    }
    let mut particular = Vector::zeros(n);
    for (r, &p) in ech.pivot_cols.iter().enumerate() {
        let row = ech.reduced.row(r);
        if let Some((c, v)) = row.last() {
            if *c == n {
                particular[p] = v.clone();
            }
        }
    }
    // The augmented column never becomes a pivot here, so the echelon form of
    // `a` is the augmented one with that column dropped.
    let ech_a = Echelon {
        reduced: SparseMatrix::from_sorted_rows(
            n,
            ech.reduced.rows().map(|row| row.iter().filter(|(c, _)| *c < n).cloned().collect()).collect(),
        ),
        rank: ech.rank,
        pivot_cols: ech.pivot_cols.clone(),
    };
    Ok(Some((particular, kernel_from_echelon(&ech_a, n))))
}
