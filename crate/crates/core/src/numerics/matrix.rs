use std::ops::{Index, IndexMut};

use super::DenseVector;
use crate::Scalar;

/// Dense real matrix in row-major order.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> DenseMatrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<S>) -> Self {
        assert_eq!(data.len(), rows * cols, "row-major data length");
        Self { rows, cols, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn diagonal(entries: &DenseVector<S>) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = entries[i];
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [S] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn as_slice(&self) -> &[S] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [S] {
        &mut self.data
    }

    pub fn all_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    pub fn matvec(&self, x: &DenseVector<S>) -> DenseVector<S> {
        debug_assert_eq!(self.cols, x.len());
        DenseVector::from_fn(self.rows, |i| {
            self.row(i)
                .iter()
                .zip(x.iter())
                .fold(S::zero(), |acc, (&a, &b)| acc + a * b)
        })
    }

    /// `self^T * x` without materializing the transpose.
    pub fn matvec_transpose(&self, x: &DenseVector<S>) -> DenseVector<S> {
        debug_assert_eq!(self.rows, x.len());
        let mut out = DenseVector::zeros(self.cols);
        for i in 0..self.rows {
            let xi = x[i];
            if xi == S::zero() {
                continue;
            }
            for (o, &a) in out.as_mut_slice().iter_mut().zip(self.row(i)) {
                *o += xi * a;
            }
        }
        out
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matmul inner dimensions");
        let mut out = Self::zeros(self.rows, other.cols);
        // i-k-j order keeps the inner loop contiguous in both operands.
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self.data[i * self.cols + k];
                if aik == S::zero() {
                    continue;
                }
                let brow = other.row(k);
                let orow = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (o, &b) in orow.iter_mut().zip(brow) {
                    *o += aik * b;
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn scale(&self, s: S) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&v| v * s).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| a - b)
                .collect(),
        }
    }

    /// `self += s * other`
    pub fn add_scaled(&mut self, s: S, other: &Self) {
        debug_assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        for (v, &o) in self.data.iter_mut().zip(&other.data) {
            *v += s * o;
        }
    }

    /// Operator infinity norm (max absolute row sum).
    pub fn norm_inf(&self) -> S {
        (0..self.rows).fold(S::zero(), |acc, i| {
            let row_sum = self
                .row(i)
                .iter()
                .fold(S::zero(), |racc, &v| racc + v.abs());
            acc.max(row_sum)
        })
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> S {
        self.data
            .iter()
            .fold(S::zero(), |acc, v| acc.max(v.abs()))
    }

    /// Copy of the first `k` rows.
    pub fn top_rows(&self, k: usize) -> Self {
        assert!(k <= self.rows);
        Self {
            rows: k,
            cols: self.cols,
            data: self.data[..k * self.cols].to_vec(),
        }
    }

    /// Copy of columns `[start, end)`.
    pub fn columns(&self, start: usize, end: usize) -> Self {
        assert!(start <= end && end <= self.cols);
        Self::from_fn(self.rows, end - start, |i, j| self[(i, start + j)])
    }
}

impl<S> Index<(usize, usize)> for DenseMatrix<S> {
    type Output = S;
    fn index(&self, (i, j): (usize, usize)) -> &S {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<S> IndexMut<(usize, usize)> for DenseMatrix<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matvec_and_matmul_agree_with_hand_expansion() {
        let a = DenseMatrix::from_rows(vec![vec![1.0_f64, 2.0], vec![3.0, 4.0]]);
        let x = DenseVector::from_vec(vec![5.0, 6.0]);
        assert_eq!(a.matvec(&x).as_slice(), &[17.0, 39.0]);

        let b = DenseMatrix::from_rows(vec![vec![0.0, 1.0], vec![1.0, 0.0]]);
        let ab = a.matmul(&b);
        assert_eq!(ab.as_slice(), &[2.0, 1.0, 4.0, 3.0]);
    }

    #[test]
    fn transpose_matvec_matches_explicit_transpose() {
        let a = DenseMatrix::from_rows(vec![vec![1.0_f64, 2.0, 3.0], vec![4.0, 5.0, 6.0]]);
        let y = DenseVector::from_vec(vec![1.0, -1.0]);
        assert_eq!(
            a.matvec_transpose(&y).as_slice(),
            a.transpose().matvec(&y).as_slice()
        );
    }

    #[test]
    fn norms() {
        let a = DenseMatrix::from_rows(vec![vec![1.0_f64, -2.0], vec![0.5, 0.5]]);
        assert_eq!(a.norm_inf(), 3.0);
        assert_eq!(a.max_abs(), 2.0);
    }
}
