use super::{DenseMatrix, DenseVector};
use crate::{Error, Result, Scalar};

/// Relative pivot threshold below which a column is declared singular.
/// Near-singular KKT systems at degenerate active sets should fail loudly
/// instead of producing garbage sensitivities.
const PIVOT_REL_TOL: f64 = 1e-12;

/// LU factorization with partial pivoting, `P A = L U`.
pub struct LuFactors<S> {
    lu: DenseMatrix<S>,
    perm: Vec<usize>,
}

/// Factorize a square matrix with partial pivoting.
///
/// A pivot whose magnitude falls below `1e-12` times the largest magnitude
/// of its original column raises [`Error::SingularMatrix`].
pub fn lu_factor<S: Scalar>(a: &DenseMatrix<S>) -> Result<LuFactors<S>> {
    assert!(a.is_square(), "lu_factor requires a square matrix");
    let n = a.rows();
    let mut lu = a.clone();
    let mut perm: Vec<usize> = (0..n).collect();

    let col_scale: Vec<S> = (0..n)
        .map(|j| (0..n).fold(S::zero(), |acc, i| acc.max(a[(i, j)].abs())))
        .collect();
    let rel_tol = S::of(PIVOT_REL_TOL);

    for k in 0..n {
        let mut p = k;
        let mut p_val = lu[(k, k)].abs();
        for i in k + 1..n {
            let v = lu[(i, k)].abs();
            if v > p_val {
                p = i;
                p_val = v;
            }
        }
        if p_val <= rel_tol * col_scale[k] || p_val == S::zero() {
            return Err(Error::SingularMatrix {
                column: k,
                pivot: p_val.to_f64().unwrap_or(f64::NAN),
                scale: col_scale[k].to_f64().unwrap_or(f64::NAN),
            });
        }
        if p != k {
            perm.swap(k, p);
            for j in 0..n {
                let tmp = lu[(k, j)];
                lu[(k, j)] = lu[(p, j)];
                lu[(p, j)] = tmp;
            }
        }

        let pivot = lu[(k, k)];
        let (top, bottom) = lu.as_mut_slice().split_at_mut((k + 1) * n);
        let pivot_row = &top[k * n..(k + 1) * n];
        for row in bottom.chunks_exact_mut(n) {
            let factor = row[k] / pivot;
            row[k] = factor;
            if factor == S::zero() {
                continue;
            }
            for (rv, &pv) in row[k + 1..].iter_mut().zip(&pivot_row[k + 1..]) {
                *rv -= factor * pv;
            }
        }
    }

    Ok(LuFactors { lu, perm })
}

impl<S: Scalar> LuFactors<S> {
    pub fn dim(&self) -> usize {
        self.lu.rows()
    }

    /// Solve `A x = b` for a single right-hand side.
    pub fn solve_vec(&self, b: &DenseVector<S>) -> DenseVector<S> {
        let n = self.dim();
        debug_assert_eq!(b.len(), n);
        let mut x = DenseVector::from_fn(n, |i| b[self.perm[i]]);
        // forward: L y = P b
        for i in 1..n {
            let row = self.lu.row(i);
            let mut acc = x[i];
            for (j, &l) in row[..i].iter().enumerate() {
                acc -= l * x[j];
            }
            x[i] = acc;
        }
        // backward: U x = y
        for i in (0..n).rev() {
            let row = self.lu.row(i);
            let mut acc = x[i];
            for (j, &u) in row[i + 1..].iter().enumerate() {
                acc -= u * x[i + 1 + j];
            }
            x[i] = acc / row[i];
        }
        x
    }

    /// Solve `A X = B` column by column.
    pub fn solve_matrix(&self, b: &DenseMatrix<S>) -> DenseMatrix<S> {
        let n = self.dim();
        debug_assert_eq!(b.rows(), n);
        let k = b.cols();
        let mut out = DenseMatrix::zeros(n, k);
        let mut col = DenseVector::zeros(n);
        for j in 0..k {
            for i in 0..n {
                col[i] = b[(i, j)];
            }
            let x = self.solve_vec(&col);
            for i in 0..n {
                out[(i, j)] = x[i];
            }
        }
        out
    }
}

/// Solve `A X = B` with partial pivoting; `B` may have any number of columns.
pub fn lu_solve<S: Scalar>(a: &DenseMatrix<S>, b: &DenseMatrix<S>) -> Result<DenseMatrix<S>> {
    assert_eq!(a.rows(), b.rows(), "lu_solve requires rows(A) = rows(B)");
    Ok(lu_factor(a)?.solve_matrix(b))
}

/// Solve `A x = b` for a single right-hand side.
pub fn lu_solve_vec<S: Scalar>(a: &DenseMatrix<S>, b: &DenseVector<S>) -> Result<DenseVector<S>> {
    assert_eq!(a.rows(), b.len(), "lu_solve_vec requires rows(A) = len(b)");
    Ok(lu_factor(a)?.solve_vec(b))
}
