use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense integer matrix with arbitrary-precision entries, stored row-major.
///
/// Matrices with zero rows or zero columns are legal and stand for zero maps
/// into or out of the trivial lattice.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn diagonal(rows: usize, cols: usize, diag: &[BigInt]) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, d) in diag.iter().enumerate().take(rows.min(cols)) {
            m.set(i, i, d.clone());
        }
        m
    }

    /// Builds a matrix from row-major entries.
    ///
    /// Panics if `entries.len() != rows * cols`.
    pub fn from_vec(rows: usize, cols: usize, entries: Vec<BigInt>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count does not match shape");
        IntegerMatrix { rows, cols, data: entries }
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        Self::from_vec(rows, cols, entries.iter().map(|&x| BigInt::from(x)).collect())
    }

    /// Builds a matrix from a list of rows. An empty list gives a `0 x 0` matrix.
    pub fn from_rows<T: Clone + Into<BigInt>>(rows: &[Vec<T>]) -> Self {
        let ncols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * ncols);
        for row in rows {
            assert_eq!(row.len(), ncols, "ragged rows");
            data.extend(row.iter().cloned().map(Into::into));
        }
        IntegerMatrix { rows: rows.len(), cols: ncols, data }
    }

    /// Builds a matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns<T: Clone + Into<BigInt>>(rows: usize, columns: &[Vec<T>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length does not match row count");
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone().into());
            }
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> impl Iterator<Item = Vec<BigInt>> + '_ {
        (0..self.cols).map(move |j| self.column(j))
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Columns `range` as a new matrix.
    pub fn select_columns(&self, range: std::ops::Range<usize>) -> Self {
        let mut m = Self::zeros(self.rows, range.len());
        for i in 0..self.rows {
            for (jj, j) in range.clone().enumerate() {
                m.set(i, jj, self.get(i, j).clone());
            }
        }
        m
    }

    /// Rows `range` as a new matrix.
    pub fn select_rows(&self, range: std::ops::Range<usize>) -> Self {
        let data = self.data[range.start * self.cols..range.end * self.cols].to_vec();
        IntegerMatrix { rows: range.len(), cols: self.cols, data }
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &IntegerMatrix) -> Self {
        assert_eq!(self.rows, other.rows, "hstack needs equal row counts");
        let mut m = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                m.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        m
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &IntegerMatrix) -> Self {
        assert_eq!(self.cols, other.cols, "vstack needs equal column counts");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        IntegerMatrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Block diagonal sum.
    pub fn direct_sum(&self, other: &IntegerMatrix) -> Self {
        let mut m = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m.set(self.rows + i, self.cols + j, other.get(i, j).clone());
            }
        }
        m
    }

    pub fn neg(&self) -> Self {
        IntegerMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| -x).collect() }
    }

    pub fn sub(&self, other: &IntegerMatrix) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        IntegerMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn add(&self, other: &IntegerMatrix) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        IntegerMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        IntegerMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * k).collect() }
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols, "vector length does not match column count");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(BigInt::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.to_rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            if p != k {
                a.swap(p, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }

    /// Rank over the rationals, by fraction-free elimination.
    ///
    /// This path does not go through the Smith normal form and is used to
    /// cross-check it.
    pub fn rank(&self) -> usize {
        let mut a = self.to_rows();
        let (m, n) = (self.rows, self.cols);
        let mut prev = BigInt::one();
        let mut r = 0;
        for c in 0..n {
            if r == m {
                break;
            }
            let Some(p) = (r..m).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(p, r);
            for i in r + 1..m {
                for j in c + 1..n {
                    let v = &a[i][j] * &a[r][c] - &a[i][c] * &a[r][j];
                    a[i][j] = v / &prev;
                }
                a[i][c] = BigInt::zero();
            }
            prev = a[r][c].clone();
            r += 1;
        }
        r
    }

    pub fn is_unimodular(&self) -> bool {
        self.is_square() && self.determinant().abs().is_one()
    }

    /// Greatest common divisor of all entries (zero for the zero matrix).
    pub fn content(&self) -> BigInt {
        self.data.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[dst] += k * row[src]`
    pub(crate) fn add_row_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        for j in 0..self.cols {
            let s = &self.data[src * self.cols + j];
            if !s.is_zero() {
                let delta = s * k;
                self.data[dst * self.cols + j] += delta;
            }
        }
    }

    /// `col[dst] += k * col[src]`
    pub(crate) fn add_col_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        for i in 0..self.rows {
            let s = &self.data[i * self.cols + src];
            if !s.is_zero() {
                let delta = s * k;
                self.data[i * self.cols + dst] += delta;
            }
        }
    }

    pub(crate) fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let x = std::mem::take(&mut self.data[i * self.cols + j]);
            self.data[i * self.cols + j] = -x;
        }
    }

    pub(crate) fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let x = std::mem::take(&mut self.data[i * self.cols + j]);
            self.data[i * self.cols + j] = -x;
        }
    }
}

impl Mul for &IntegerMatrix {
    type Output = IntegerMatrix;

    fn mul(self, rhs: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = IntegerMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntegerMatrix({}x{}) {}", self.rows, self.cols, self)
    }
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_transpose() {
        let a = IntegerMatrix::from_i64(2, 3, &[1, 2, 3, 4, 5, 6]);
        let b = a.transpose();
        let p = &a * &b;
        assert_eq!(p, IntegerMatrix::from_i64(2, 2, &[14, 32, 32, 77]));
    }

    #[test]
    fn determinant_and_rank() {
        let a = IntegerMatrix::from_i64(3, 3, &[2, 1, 0, 1, 1, 0, 0, 0, 1]);
        assert_eq!(a.determinant(), BigInt::from(1));
        assert!(a.is_unimodular());
        let singular = IntegerMatrix::from_i64(3, 3, &[1, 2, 3, 2, 4, 6, 0, 1, 1]);
        assert_eq!(singular.determinant(), BigInt::zero());
        assert_eq!(singular.rank(), 2);
        assert_eq!(IntegerMatrix::zeros(0, 4).rank(), 0);
        assert_eq!(IntegerMatrix::zeros(0, 0).determinant(), BigInt::one());
    }

    #[test]
    fn empty_shapes() {
        let e = IntegerMatrix::zeros(3, 0);
        let f = IntegerMatrix::zeros(0, 2);
        assert_eq!((&e * &f), IntegerMatrix::zeros(3, 2));
        assert_eq!(e.mul_vec(&[]), vec![BigInt::zero(); 3]);
    }
}
