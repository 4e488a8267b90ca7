//! Exact linear algebra over the rationals and over Z/2. Rows are kept
//! sparse; pivoting is deterministic (smallest column first, first available
//! row), so kernels come out in a reproducible order.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

/// Scalar of an exact field.
pub trait ExactScalar: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Self;
}

impl ExactScalar for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(v.into())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        self.recip()
    }
}

/// The field with two elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Gf2(pub bool);

impl ExactScalar for Gf2 {
    fn zero() -> Self {
        Gf2(false)
    }
    fn one() -> Self {
        Gf2(true)
    }
    fn from_i64(v: i64) -> Self {
        Gf2(v.rem_euclid(2) == 1)
    }
    fn is_zero(&self) -> bool {
        !self.0
    }
    fn add(&self, other: &Self) -> Self {
        Gf2(self.0 ^ other.0)
    }
    fn mul(&self, other: &Self) -> Self {
        Gf2(self.0 & other.0)
    }
    fn neg(&self) -> Self {
        *self
    }
    fn inv(&self) -> Self {
        assert!(self.0, "inverse of zero");
        *self
    }
}

/// Sparse row: column index -> nonzero coefficient.
pub type SparseRow<S> = BTreeMap<usize, S>;

fn row_from_entries<S: ExactScalar>(entries: &[(usize, i64)]) -> SparseRow<S> {
    let mut row: SparseRow<S> = BTreeMap::new();
    for &(col, coef) in entries {
        let add = S::from_i64(coef);
        let v = match row.remove(&col) {
            Some(prev) => prev.add(&add),
            None => add,
        };
        if !v.is_zero() {
            row.insert(col, v);
        }
    }
    row
}

/// Reduced row echelon form. Returns pivot (column, row-index) list.
fn rref<S: ExactScalar>(rows: &mut Vec<SparseRow<S>>, ncols: usize) -> Vec<(usize, usize)> {
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut next_row = 0usize;
    for col in 0..ncols {
        let Some(pick) = (next_row..rows.len()).find(|&r| rows[r].contains_key(&col)) else {
            continue;
        };
        rows.swap(next_row, pick);
        let inv = rows[next_row][&col].inv();
        let scaled: SparseRow<S> = rows[next_row]
            .iter()
            .map(|(&c, v)| (c, v.mul(&inv)))
            .collect();
        rows[next_row] = scaled;
        let pivot_row = rows[next_row].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == next_row {
                continue;
            }
            let Some(factor) = row.get(&col).cloned() else {
                continue;
            };
            for (&c, v) in &pivot_row {
                let sub = factor.mul(v).neg();
                let newv = match row.remove(&c) {
                    Some(prev) => prev.add(&sub),
                    None => sub,
                };
                if !newv.is_zero() {
                    row.insert(c, newv);
                }
            }
        }
        pivots.push((col, next_row));
        next_row += 1;
    }
    rows.truncate(next_row);
    pivots
}

/// Basis of the solution space of `rows * x = 0` in `ncols` unknowns.
/// One basis vector per free column, in ascending free-column order; the
/// free coordinate is 1.
pub fn kernel_basis<S: ExactScalar>(
    row_entries: &[Vec<(usize, i64)>],
    ncols: usize,
) -> Vec<Vec<S>> {
    let mut rows: Vec<SparseRow<S>> = row_entries
        .iter()
        .map(|r| row_from_entries(r))
        .filter(|r| !r.is_empty())
        .collect();
    let pivots = rref(&mut rows, ncols);
    let pivot_cols: Vec<usize> = pivots.iter().map(|&(c, _)| c).collect();
    let mut basis = Vec::new();
    for free in 0..ncols {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![S::zero(); ncols];
        v[free] = S::one();
        for &(pcol, prow) in &pivots {
            if let Some(coef) = rows[prow].get(&free) {
                v[pcol] = coef.neg();
            }
        }
        basis.push(v);
    }
    basis
}

/// Rank of the matrix.
pub fn rank<S: ExactScalar>(row_entries: &[Vec<(usize, i64)>], ncols: usize) -> usize {
    let mut rows: Vec<SparseRow<S>> = row_entries
        .iter()
        .map(|r| row_from_entries(r))
        .filter(|r| !r.is_empty())
        .collect();
    rref(&mut rows, ncols).len()
}

/// Rank of a matrix given dense scalar rows.
pub fn rank_dense<S: ExactScalar>(rows_dense: &[Vec<S>], ncols: usize) -> usize {
    let mut rows: Vec<SparseRow<S>> = rows_dense
        .iter()
        .map(|r| {
            r.iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(c, v)| (c, v.clone()))
                .collect()
        })
        .filter(|r: &SparseRow<S>| !r.is_empty())
        .collect();
    rref(&mut rows, ncols).len()
}

/// Rank over the rationals of an integer matrix.
pub fn integer_rank(rows: &[Vec<i64>]) -> usize {
    let ncols = rows.iter().map(|r| r.len()).max().unwrap_or(0);
    let entries: Vec<Vec<(usize, i64)>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .enumerate()
                .filter(|&(_, &v)| v != 0)
                .map(|(c, &v)| (c, v))
                .collect()
        })
        .collect();
    rank::<BigRational>(&entries, ncols)
}

/// Scale a rational vector to a primitive integer vector whose first nonzero
/// entry is positive.
pub fn normalize_rational_vector(v: &mut [BigRational]) {
    use num_bigint::BigInt;
    use num_integer::Integer;
    let mut denom_lcm: BigInt = One::one();
    for x in v.iter() {
        if !Zero::is_zero(x) {
            denom_lcm = denom_lcm.lcm(x.denom());
        }
    }
    let mut numer_gcd: BigInt = Zero::zero();
    for x in v.iter() {
        if !Zero::is_zero(x) {
            let scaled = x * BigRational::from_integer(denom_lcm.clone());
            numer_gcd = numer_gcd.gcd(scaled.numer());
        }
    }
    if Zero::is_zero(&numer_gcd) {
        return;
    }
    let factor = BigRational::new(denom_lcm, numer_gcd);
    for x in v.iter_mut() {
        *x = &*x * &factor;
    }
    if let Some(first) = v.iter().find(|x| !Zero::is_zero(*x)) {
        if first.is_negative() {
            for x in v.iter_mut() {
                *x = -&*x;
            }
        }
    }
}
