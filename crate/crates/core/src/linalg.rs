//! Scalars and the exact/approximate linear algebra behind every rank and
//! kernel computation.
//!
//! Exact rank runs fraction-free over the integers after clearing row
//! denominators: dense Bareiss elimination for small dense inputs, and a
//! sparse incremental echelon form with primitive-row normalization for the
//! large, very sparse coordinate matrices of word spaces. Float rank uses
//! complete pivoting with a threshold of `1e-9` times the largest pivot.

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Relative pivot threshold for floating-point rank.
pub const FLOAT_RANK_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Float => "float",
        }
    }
}

/// Coefficient field. Implemented by exact rationals and complex doubles.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + 'static
{
    const MODE: Mode;

    fn conj(&self) -> Self;

    fn from_ratio(num: i64, den: i64) -> Self;

    fn from_int(value: i64) -> Self {
        Self::from_ratio(value, 1)
    }

    /// Absolute value as a double, for residual norms.
    fn modulus(&self) -> f64;

    fn rank(matrix: &Matrix<Self>) -> usize;

    fn nullspace(_matrix: &Matrix<Self>) -> Result<Vec<Vec<Self>>> {
        Err(Error::UnsupportedMode(Self::MODE.as_str()))
    }
}

impl Scalar for Rational {
    const MODE: Mode = Mode::Exact;

    fn conj(&self) -> Self {
        self.clone()
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Rational::new(BigInt::from(num), BigInt::from(den))
    }

    fn modulus(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.abs().to_f64().unwrap_or(f64::INFINITY)
    }

    fn rank(matrix: &Matrix<Self>) -> usize {
        let rows = integer_rows(matrix);
        let nnz: usize = rows.iter().map(|r| r.len()).sum();
        let cells = matrix.rows * matrix.cols;
        if cells <= 4096 && nnz * 4 >= cells {
            bareiss_rank(&densify(&rows, matrix.cols))
        } else {
            sparse_rank(rows)
        }
    }

    fn nullspace(matrix: &Matrix<Self>) -> Result<Vec<Vec<Self>>> {
        Ok(rational_nullspace(matrix))
    }
}

impl Scalar for Complex64 {
    const MODE: Mode = Mode::Float;

    fn conj(&self) -> Self {
        Complex64::conj(self)
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Complex64::new(num as f64 / den as f64, 0.0)
    }

    fn modulus(&self) -> f64 {
        self.norm()
    }

    fn rank(matrix: &Matrix<Self>) -> usize {
        float_rank(matrix.to_dense())
    }
}

/// Row-major sparse matrix; each row holds `(column, value)` pairs sorted by
/// column with no stored zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, S)>>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Vec::new(); rows] }
    }

    pub fn identity(k: usize) -> Self {
        let data = (0..k).map(|i| vec![(i, S::one())]).collect();
        Self { rows: k, cols: k, data }
    }

    pub fn from_dense(dense: Vec<Vec<S>>) -> Result<Self> {
        let cols = dense.first().map_or(0, |r| r.len());
        if dense.iter().any(|r| r.len() != cols) {
            return Err(Error::Domain("ragged dense matrix".into()));
        }
        let rows = dense.len();
        let data = dense
            .into_iter()
            .map(|r| r.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        Ok(Self { rows, cols, data })
    }

    pub fn from_sparse_rows(cols: usize, rows: Vec<BTreeMap<usize, S>>) -> Result<Self> {
        let n_rows = rows.len();
        let mut data = Vec::with_capacity(n_rows);
        for row in rows {
            if let Some((&c, _)) = row.iter().next_back() {
                if c >= cols {
                    return Err(Error::Domain(format!("column {c} out of range for {cols} columns")));
                }
            }
            data.push(row.into_iter().filter(|(_, v)| !v.is_zero()).collect());
        }
        Ok(Self { rows: n_rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> S) -> Self {
        let data = (0..rows)
            .map(|i| (0..cols).map(|j| (j, f(i, j))).filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[(usize, S)] {
        &self.data[i]
    }

    pub fn get(&self, i: usize, j: usize) -> S {
        match self.data[i].binary_search_by_key(&j, |(c, _)| *c) {
            Ok(pos) => self.data[i][pos].1.clone(),
            Err(_) => S::zero(),
        }
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn to_dense(&self) -> Vec<Vec<S>> {
        self.data
            .iter()
            .map(|row| {
                let mut out = vec![S::zero(); self.cols];
                for (c, v) in row {
                    out[*c] = v.clone();
                }
                out
            })
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = vec![Vec::new(); self.cols];
        for (i, row) in self.data.iter().enumerate() {
            for (j, v) in row {
                data[*j].push((i, v.clone()));
            }
        }
        Self { rows: self.cols, cols: self.rows, data }
    }

    pub fn mul_vec(&self, x: &[S]) -> Vec<S> {
        assert_eq!(x.len(), self.cols, "vector length must match column count");
        self.data
            .iter()
            .map(|row| row.iter().fold(S::zero(), |acc, (c, v)| acc + v.clone() * x[*c].clone()))
            .collect()
    }

    /// Stacks the rows of `other` below `self`.
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::Domain("column counts differ".into()));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Self { rows: self.rows + other.rows, cols: self.cols, data })
    }

    pub fn is_diagonal(&self) -> bool {
        self.data.iter().enumerate().all(|(i, row)| row.iter().all(|(j, _)| *j == i))
    }

    pub fn rank(&self) -> usize {
        S::rank(self)
    }

    /// Basis of the right nullspace. Exact scalars only.
    pub fn nullspace(&self) -> Result<Vec<Vec<S>>> {
        S::nullspace(self)
    }
}

/// Vectors with an inner product, conjugate-linear in the second slot.
pub trait InnerProduct {
    type Scalar: Scalar;

    fn inner(&self, other: &Self) -> Result<Self::Scalar>;
}

/// Vectors with a finite coordinate expansion over an ordered index set.
pub trait Coordinates {
    type Scalar: Scalar;
    type Key: Ord + Clone;

    fn coordinates(&self) -> Box<dyn Iterator<Item = (&Self::Key, &Self::Scalar)> + '_>;
}

pub fn gram<V: InnerProduct>(vectors: &[V]) -> Result<Matrix<V::Scalar>> {
    let k = vectors.len();
    let mut data: Vec<Vec<(usize, V::Scalar)>> = vec![Vec::new(); k];
    for i in 0..k {
        for j in 0..k {
            let value = if j < i {
                let upper: V::Scalar = lookup(&data[j], i);
                upper.conj()
            } else {
                vectors[i].inner(&vectors[j])?
            };
            if !value.is_zero() {
                data[i].push((j, value));
            }
        }
    }
    Ok(Matrix { rows: k, cols: k, data })
}

fn lookup<S: Scalar>(row: &[(usize, S)], j: usize) -> S {
    row.iter().find(|(c, _)| *c == j).map_or_else(S::zero, |(_, v)| v.clone())
}

/// Matrix whose rows are the given vectors, over the union of their supports
/// in key order. Returns the matrix together with the column keys.
pub fn coordinate_matrix<V: Coordinates>(vectors: &[V]) -> (Matrix<V::Scalar>, Vec<V::Key>) {
    let mut keys: BTreeMap<V::Key, usize> = BTreeMap::new();
    for v in vectors {
        for (key, _) in v.coordinates() {
            keys.entry(key.clone()).or_insert(0);
        }
    }
    for (i, slot) in keys.values_mut().enumerate() {
        *slot = i;
    }
    let data = vectors
        .iter()
        .map(|v| {
            let mut row: Vec<(usize, V::Scalar)> =
                v.coordinates().map(|(key, s)| (keys[key], s.clone())).collect();
            row.sort_by_key(|(c, _)| *c);
            row
        })
        .collect();
    let matrix = Matrix { rows: vectors.len(), cols: keys.len(), data };
    (matrix, keys.into_keys().collect())
}

/// Dimension of the span of `vectors`.
pub fn span_rank<V: Coordinates>(vectors: &[V]) -> usize {
    coordinate_matrix(vectors).0.rank()
}

pub type IntRow = BTreeMap<usize, BigInt>;

/// Each row scaled by the lcm of its denominators.
pub fn integer_rows(matrix: &Matrix<Rational>) -> Vec<IntRow> {
    matrix
        .data
        .iter()
        .map(|row| {
            let lcm = row.iter().fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
            row.iter().map(|(c, v)| (*c, v.numer() * (&lcm / v.denom()))).collect()
        })
        .collect()
}

pub fn densify(rows: &[IntRow], cols: usize) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|row| {
            let mut out = vec![BigInt::zero(); cols];
            for (c, v) in row {
                out[*c] = v.clone();
            }
            out
        })
        .collect()
}

/// Rank by Bareiss fraction-free elimination. Every division is exact.
pub fn bareiss_rank(matrix: &[Vec<BigInt>]) -> usize {
    let mut a = matrix.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let (top, bottom) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in bottom.iter_mut() {
            let factor = row[c].clone();
            for j in c + 1..cols {
                let num = &pivot_row[c] * &row[j] - &factor * &pivot_row[j];
                debug_assert!((&num % &prev).is_zero());
                row[j] = num / &prev;
            }
            row[c] = BigInt::zero();
        }
        prev = pivot_row[c].clone();
        rank += 1;
    }
    rank
}

fn make_primitive(row: &mut IntRow) {
    let mut g = BigInt::zero();
    for v in row.values() {
        g = g.gcd(v);
        if g.is_one() {
            return;
        }
    }
    if !g.is_zero() && !g.is_one() {
        for v in row.values_mut() {
            *v /= &g;
        }
    }
}

/// Sparse fraction-free echelon form over the integers.
///
/// Pivot rows are keyed by their leading column. An incoming row is reduced by
/// cross-multiplication against the pivot at its leading column and divided by
/// its content after each step, so entries stay primitive.
#[derive(Debug, Default)]
pub struct SparseEchelon {
    pivots: BTreeMap<usize, IntRow>,
}

impl SparseEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `row` against the current pivots. Returns `true` if it was
    /// independent and became a new pivot.
    pub fn insert(&mut self, mut row: IntRow) -> bool {
        row.retain(|_, v| !v.is_zero());
        loop {
            let Some((&lead, lead_value)) = row.iter().next() else {
                return false;
            };
            let Some(pivot) = self.pivots.get(&lead) else {
                make_primitive(&mut row);
                self.pivots.insert(lead, row);
                return true;
            };
            let a = &pivot[&lead];
            let g = a.gcd(lead_value);
            let scale_row = a / &g;
            let scale_pivot = lead_value / &g;
            for v in row.values_mut() {
                *v *= &scale_row;
            }
            for (c, pv) in pivot {
                let entry = row.entry(*c).or_insert_with(BigInt::zero);
                *entry -= &scale_pivot * pv;
                if entry.is_zero() {
                    row.remove(c);
                }
            }
            make_primitive(&mut row);
        }
    }
}

pub fn sparse_rank(rows: Vec<IntRow>) -> usize {
    let mut echelon = SparseEchelon::new();
    for row in rows {
        echelon.insert(row);
    }
    echelon.rank()
}

/// Reference rank by rational Gauss-Jordan elimination on a dense copy.
pub fn gauss_jordan_rank(matrix: &Matrix<Rational>) -> usize {
    let mut a = matrix.to_dense();
    let rows = a.len();
    let mut rank = 0;
    for c in 0..matrix.cols {
        let Some(p) = (rank..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let inv = a[rank][c].recip();
        for v in a[rank].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows {
            if i != rank && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let pivot_row = a[rank].clone();
                for (x, p) in a[i].iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Reduced row echelon form of a rational matrix, as sparse rows keyed by
/// pivot column. Pivot entries are 1 and pivot columns are clear elsewhere.
pub fn rref(matrix: &Matrix<Rational>) -> BTreeMap<usize, BTreeMap<usize, Rational>> {
    let mut pivots: BTreeMap<usize, BTreeMap<usize, Rational>> = BTreeMap::new();
    for row in &matrix.data {
        let mut row: BTreeMap<usize, Rational> = row.iter().cloned().collect();
        while let Some((&lead, lead_value)) = row.iter().next() {
            match pivots.get(&lead) {
                Some(pivot) => {
                    let f = lead_value.clone();
                    for (c, pv) in pivot {
                        let entry = row.entry(*c).or_insert_with(Rational::zero);
                        *entry -= &f * pv;
                        if entry.is_zero() {
                            row.remove(c);
                        }
                    }
                }
                None => {
                    let inv = lead_value.recip();
                    for v in row.values_mut() {
                        *v *= &inv;
                    }
                    pivots.insert(lead, row);
                    break;
                }
            }
        }
    }
    // Back substitution, highest pivot first; only rows with a smaller pivot
    // column can contain a given pivot column.
    let cols: Vec<usize> = pivots.keys().rev().copied().collect();
    for c in cols {
        let pivot = pivots[&c].clone();
        for (_, row) in pivots.range_mut(..c) {
            if let Some(f) = row.get(&c).cloned() {
                for (j, pv) in &pivot {
                    let entry = row.entry(*j).or_insert_with(Rational::zero);
                    *entry -= &f * pv;
                    if entry.is_zero() {
                        row.remove(j);
                    }
                }
            }
        }
    }
    pivots
}

fn rational_nullspace(matrix: &Matrix<Rational>) -> Vec<Vec<Rational>> {
    let reduced = rref(matrix);
    (0..matrix.cols)
        .filter(|c| !reduced.contains_key(c))
        .map(|free| {
            let mut x = vec![Rational::zero(); matrix.cols];
            x[free] = Rational::one();
            for (pc, row) in &reduced {
                if let Some(v) = row.get(&free) {
                    x[*pc] = -v.clone();
                }
            }
            x
        })
        .collect()
}

/// Numerical rank with complete pivoting. A pivot is accepted while its
/// modulus exceeds [`FLOAT_RANK_TOLERANCE`] times the first (largest) pivot.
pub fn float_rank(mut a: Vec<Vec<Complex64>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut col_perm: Vec<usize> = (0..cols).collect();
    let mut first_pivot = 0.0f64;
    let mut rank = 0;
    while rank < rows.min(cols) {
        let mut best = (rank, rank, 0.0f64);
        for (i, row) in a.iter().enumerate().skip(rank) {
            for (jj, &j) in col_perm.iter().enumerate().skip(rank) {
                let m = row[j].norm();
                if m > best.2 {
                    best = (i, jj, m);
                }
            }
        }
        if rank == 0 {
            first_pivot = best.2;
        }
        if best.2 == 0.0 || best.2 <= FLOAT_RANK_TOLERANCE * first_pivot {
            break;
        }
        a.swap(rank, best.0);
        col_perm.swap(rank, best.1);
        let pc = col_perm[rank];
        let pivot = a[rank][pc];
        let (top, bottom) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in bottom.iter_mut() {
            let f = row[pc] / pivot;
            if f == Complex64::zero() {
                continue;
            }
            for &j in &col_perm[rank..] {
                row[j] -= f * pivot_row[j];
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn int_matrix(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_dense(rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect()).unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(int_matrix(&[&[1, 2], &[2, 4]]).rank(), 1);
        for k in 0..6 {
            assert_eq!(Matrix::<Rational>::identity(k).rank(), k);
        }
        assert_eq!(Matrix::<Rational>::zeros(3, 4).rank(), 0);
    }

    #[test]
    fn nullspace_examples() {
        assert!(Matrix::<Rational>::identity(4).nullspace().unwrap().is_empty());
        let ns = int_matrix(&[&[1, 1]]).nullspace().unwrap();
        assert_eq!(ns, vec![vec![q(-1), q(1)]]);
    }

    #[test]
    fn float_nullspace_is_unsupported() {
        let m = Matrix::<Complex64>::identity(2);
        assert_eq!(m.nullspace(), Err(Error::UnsupportedMode("float")));
    }

    #[test]
    fn float_rank_respects_threshold() {
        let c = |x: f64| Complex64::new(x, 0.0);
        let m = Matrix::from_dense(vec![vec![c(1.0), c(2.0)], vec![c(2.0), c(4.0 + 1e-14)]]).unwrap();
        assert_eq!(m.rank(), 1);
        let m = Matrix::from_dense(vec![vec![c(1.0), c(2.0)], vec![c(2.0), c(4.0 + 1e-3)]]).unwrap();
        assert_eq!(m.rank(), 2);
        let i = Complex64::i();
        let m = Matrix::from_dense(vec![vec![c(1.0), i], vec![i, c(-1.0)]]).unwrap();
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn bareiss_on_rank_deficient_with_skipped_columns() {
        let m = int_matrix(&[&[0, 1, 2, 3], &[0, 2, 4, 7], &[0, 3, 6, 10], &[1, 0, 0, 1]]);
        assert_eq!(bareiss_rank(&densify(&integer_rows(&m), 4)), 3);
        assert_eq!(sparse_rank(integer_rows(&m)), 3);
        assert_eq!(gauss_jordan_rank(&m), 3);
    }

    #[test]
    fn fractional_rows_are_cleared() {
        let m = Matrix::from_dense(vec![
            vec![Rational::from_ratio(1, 2), Rational::from_ratio(1, 3)],
            vec![Rational::from_ratio(3, 1), Rational::from_ratio(2, 1)],
        ])
        .unwrap();
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn gram_empty_and_repeated() {
        struct V(Vec<Rational>);
        impl InnerProduct for V {
            type Scalar = Rational;
            fn inner(&self, other: &Self) -> Result<Rational> {
                Ok(self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum())
            }
        }
        let g = gram::<V>(&[]).unwrap();
        assert_eq!((g.rows(), g.cols()), (0, 0));
        let e = V(vec![q(0), q(1)]);
        let g = gram(&[e, V(vec![q(0), q(1)])]).unwrap();
        assert_eq!(g.to_dense(), vec![vec![q(1), q(1)], vec![q(1), q(1)]]);
    }

    #[test]
    fn transpose_and_mul_vec() {
        let m = int_matrix(&[&[1, 2, 0], &[0, 0, 3]]);
        assert_eq!(m.transpose().to_dense(), int_matrix(&[&[1, 0], &[2, 0], &[0, 3]]).to_dense());
        assert_eq!(m.mul_vec(&[q(1), q(1), q(1)]), vec![q(3), q(3)]);
    }
}
