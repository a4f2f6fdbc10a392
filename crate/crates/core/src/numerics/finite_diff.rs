use super::{DenseMatrix, DenseVector};
use crate::Scalar;

/// Central-difference Jacobian of a vector-valued function.
///
/// Entry `(i, j)` is `(f(x + h e_j)_i - f(x - h e_j)_i) / (2 h)`.
/// Evaluation failures of `f` propagate unchanged. This is the test oracle
/// behind every analytic gradient in the crate.
pub fn finite_difference_jacobian<S, F, E>(
    mut f: F,
    x: &DenseVector<S>,
    h: S,
) -> Result<DenseMatrix<S>, E>
where
    S: Scalar,
    F: FnMut(&DenseVector<S>) -> Result<DenseVector<S>, E>,
{
    assert!(h > S::zero(), "finite difference step must be positive");
    let n = x.len();
    let two_h = S::of(2.0) * h;
    let mut jac: Option<DenseMatrix<S>> = None;

    for j in 0..n {
        let mut xp = x.clone();
        xp[j] += h;
        let fp = f(&xp)?;
        let mut xm = x.clone();
        xm[j] -= h;
        let fm = f(&xm)?;
        debug_assert_eq!(fp.len(), fm.len());

        let jac = jac.get_or_insert_with(|| DenseMatrix::zeros(fp.len(), n));
        for i in 0..fp.len() {
            jac[(i, j)] = (fp[i] - fm[i]) / two_h;
        }
    }

    Ok(jac.unwrap_or_else(|| DenseMatrix::zeros(0, 0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn linear_map_recovered_exactly() {
        let a = DenseMatrix::from_rows(vec![vec![1.0, -2.0, 0.5], vec![3.0, 0.0, -1.0]]);
        let x = DenseVector::from_vec(vec![0.3, -0.7, 1.1]);
        let jac = finite_difference_jacobian::<f64, _, Error>(
            |x| Ok(a.matvec(x)),
            &x,
            1e-5,
        )
        .unwrap();
        let err = jac.sub(&a).max_abs();
        assert!(err <= 1e-9, "linear map error {err}");
    }

    #[test]
    fn elementwise_square() {
        let x = DenseVector::from_vec(vec![1.0, 2.0]);
        let jac = finite_difference_jacobian::<f64, _, Error>(
            |x| Ok(x.hadamard(x)),
            &x,
            1e-5,
        )
        .unwrap();
        assert!((jac[(0, 0)] - 2.0).abs() <= 1e-8);
        assert!((jac[(1, 1)] - 4.0).abs() <= 1e-8);
        assert!(jac[(0, 1)].abs() <= 1e-8);
        assert!(jac[(1, 0)].abs() <= 1e-8);
    }

    #[test]
    fn propagates_evaluation_failure() {
        let x = DenseVector::from_vec(vec![1.0]);
        let res = finite_difference_jacobian::<f64, _, Error>(
            |_| {
                Err(Error::NonFinite {
                    context: "probe".into(),
                })
            },
            &x,
            1e-5,
        );
        assert!(matches!(res, Err(Error::NonFinite { .. })));
    }
}
