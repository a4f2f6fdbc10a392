use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use super::{DenseMatrix, DenseVector};
use crate::Scalar;

/// Fixed seed for the power-iteration start vector so estimates are
/// reproducible run to run.
const START_SEED: u64 = 0x5bec14a1;

pub const SPECTRAL_DEFAULT_ITERS: usize = 200;
pub const SPECTRAL_DEFAULT_TOL: f64 = 1e-8;

/// Result of a power-iteration spectral radius estimate.
#[derive(Clone, Copy, Debug)]
pub struct SpectralEstimate<S> {
    pub value: S,
    pub converged: bool,
    pub iterations: usize,
}

/// Estimate the spectral radius of a square matrix by power iteration.
///
/// This is an estimate: it is accurate for matrices with a dominant real
/// eigenvalue (the Jacobians seen here), and is used only as a stability
/// guard. Non-convergence is reported through the flag, never as an error.
pub fn spectral_radius_estimate<S: Scalar>(
    j: &DenseMatrix<S>,
    max_iters: usize,
    tol: S,
) -> SpectralEstimate<S> {
    assert!(j.is_square(), "spectral radius of a non-square matrix");
    let n = j.rows();
    if n == 0 {
        return SpectralEstimate {
            value: S::zero(),
            converged: true,
            iterations: 0,
        };
    }

    let mut rng = ChaCha8Rng::seed_from_u64(START_SEED);
    let mut v = DenseVector::from_fn(n, |_| S::of(rng.gen_range(-1.0..1.0)));
    let nv = v.norm2();
    if nv == S::zero() {
        v = DenseVector::from_fn(n, |i| if i == 0 { S::one() } else { S::zero() });
    } else {
        v.scale_in_place(S::one() / nv);
    }

    let mut rho = S::zero();
    for it in 1..=max_iters {
        let w = j.matvec(&v);
        let nw = w.norm2();
        if nw == S::zero() {
            // reached the null space: every further iterate is zero
            return SpectralEstimate {
                value: S::zero(),
                converged: true,
                iterations: it,
            };
        }
        let rho_new = nw;
        let settled = (rho_new - rho).abs() <= tol * S::one().max(rho_new);
        rho = rho_new;
        v = w.scale(S::one() / nw);
        if settled && it > 1 {
            return SpectralEstimate {
                value: rho,
                converged: true,
                iterations: it,
            };
        }
    }

    SpectralEstimate {
        value: rho,
        converged: false,
        iterations: max_iters,
    }
}

/// Estimate with the default iteration budget and tolerance.
pub fn spectral_radius_default<S: Scalar>(j: &DenseMatrix<S>) -> SpectralEstimate<S> {
    spectral_radius_estimate(j, SPECTRAL_DEFAULT_ITERS, S::of(SPECTRAL_DEFAULT_TOL))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Jacobi eigenvalue sweep for symmetric matrices; independent oracle
    /// for the power-iteration estimate.
    fn jacobi_eigenvalues(a: &DenseMatrix<f64>) -> Vec<f64> {
        let n = a.rows();
        let mut m = a.clone();
        for _ in 0..100 {
            let mut off = 0.0;
            for i in 0..n {
                for j in i + 1..n {
                    off += m[(i, j)] * m[(i, j)];
                }
            }
            if off.sqrt() < 1e-12 {
                break;
            }
            for p in 0..n {
                for q in p + 1..n {
                    if m[(p, q)].abs() < 1e-14 {
                        continue;
                    }
                    let theta = 0.5 * (m[(q, q)] - m[(p, p)]) / m[(p, q)];
                    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                    let c = 1.0 / (t * t + 1.0).sqrt();
                    let s = t * c;
                    for k in 0..n {
                        let mkp = m[(k, p)];
                        let mkq = m[(k, q)];
                        m[(k, p)] = c * mkp - s * mkq;
                        m[(k, q)] = s * mkp + c * mkq;
                    }
                    for k in 0..n {
                        let mpk = m[(p, k)];
                        let mqk = m[(q, k)];
                        m[(p, k)] = c * mpk - s * mqk;
                        m[(q, k)] = s * mpk + c * mqk;
                    }
                }
            }
        }
        (0..n).map(|i| m[(i, i)]).collect()
    }

    #[test]
    fn diagonal_matrix() {
        let j = DenseMatrix::from_rows(vec![vec![0.5, 0.0], vec![0.0, 0.2]]);
        let est = spectral_radius_default(&j);
        assert!(est.converged);
        assert!((est.value - 0.5).abs() <= 1e-6, "got {}", est.value);
    }

    #[test]
    fn identity_matrix() {
        let j = DenseMatrix::<f64>::identity(4);
        let est = spectral_radius_default(&j);
        assert!(est.converged);
        assert!((est.value - 1.0).abs() <= 1e-6);
    }

    #[test]
    fn random_symmetric_matches_jacobi_oracle() {
        use rand::prelude::*;
        use rand_chacha::ChaCha8Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let raw = DenseMatrix::from_fn(6, 6, |_, _| rng.gen_range(-1.0..1.0));
            let sym = raw.add(&raw.transpose()).scale(0.5);
            let eigs = jacobi_eigenvalues(&sym);
            let rho_true = eigs.iter().fold(0.0_f64, |a, &e| a.max(e.abs()));
            let est = spectral_radius_estimate(&sym, 2000, 1e-12);
            assert!(
                (est.value - rho_true).abs() <= 1e-4,
                "estimate {} vs oracle {rho_true}",
                est.value
            );
        }
    }

    #[test]
    fn scale_equivariance() {
        use rand::prelude::*;
        use rand_chacha::ChaCha8Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let raw = DenseMatrix::from_fn(5, 5, |_, _| rng.gen_range(-1.0..1.0));
        let sym = raw.add(&raw.transpose()).scale(0.5);
        let base = spectral_radius_default(&sym).value;
        for alpha in [0.5, 2.0] {
            let scaled = spectral_radius_default(&sym.scale(alpha)).value;
            assert!(
                (scaled - alpha.abs() * base).abs() <= 1e-6,
                "alpha {alpha}: {scaled} vs {}",
                alpha * base
            );
        }
    }

    #[test]
    fn expansive_map_detected() {
        let j = DenseMatrix::from_rows(vec![vec![2.0]]);
        let est = spectral_radius_default(&j);
        assert!((est.value - 2.0).abs() <= 1e-8);
    }
}
