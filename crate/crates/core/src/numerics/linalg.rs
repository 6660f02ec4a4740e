//! Dense Cholesky and symmetric eigenvalue kernels.
//!
//! Sizes stay small, so the solvers favour clarity over blocking: an
//! unpivoted LL^T factorization and a cyclic Jacobi eigensolver. The
//! generalized eigenvalue problem is reduced by Cholesky whitening.

use super::{SymMatrix, Vector};
use crate::{Error, Result};

/// Cholesky pivots at or below this value flag a degenerate matrix.
pub const PD_PIVOT_TOL: f64 = 1e-12;

/// Lower-triangular factor `L` with `A = L L^T`.
#[derive(Clone, Debug)]
pub struct CholeskyFactor {
    dim: usize,
    // Row-major lower triangle, full storage.
    l: Vec<f64>,
}

/// Factor a positive-definite matrix. Fails with
/// [`Error::NotPositiveDefinite`] when a pivot drops to `1e-12` or below.
pub fn cholesky_factor(a: &SymMatrix) -> Result<CholeskyFactor> {
    let n = a.dim();
    let mut l = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..=i {
            let mut sum = a.get(i, j);
            for k in 0..j {
                sum -= l[i * n + k] * l[j * n + k];
            }
            if i == j {
                if !(sum > PD_PIVOT_TOL) {
                    return Err(Error::NotPositiveDefinite {
                        pivot: sum,
                        index: i,
                    });
                }
                l[i * n + j] = sum.sqrt();
            } else {
                l[i * n + j] = sum / l[j * n + j];
            }
        }
    }
    Ok(CholeskyFactor { dim: n, l })
}

impl CholeskyFactor {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Solve `L y = b` (forward substitution).
    fn forward(&self, b: &[f64]) -> Vec<f64> {
        let n = self.dim;
        let mut y = vec![0.0; n];
        for i in 0..n {
            let mut sum = b[i];
            for k in 0..i {
                sum -= self.l[i * n + k] * y[k];
            }
            y[i] = sum / self.l[i * n + i];
        }
        y
    }

    /// Solve `L^T x = y` (back substitution).
    fn backward(&self, y: &[f64]) -> Vec<f64> {
        let n = self.dim;
        let mut x = vec![0.0; n];
        for i in (0..n).rev() {
            let mut sum = y[i];
            for k in i + 1..n {
                sum -= self.l[k * n + i] * x[k];
            }
            x[i] = sum / self.l[i * n + i];
        }
        x
    }

    /// Solve `A x = b` through both triangular sweeps.
    pub fn solve(&self, b: &Vector) -> Vector {
        Vector::new(self.backward(&self.forward(b.as_slice())))
    }
}

/// Solve the positive-definite system `A x = b`.
pub fn cholesky_solve(a: &SymMatrix, b: &Vector) -> Result<Vector> {
    if b.dim() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            got: b.dim(),
        });
    }
    Ok(cholesky_factor(a)?.solve(b))
}

/// Eigendecomposition of a symmetric matrix, eigenvalues ascending.
#[derive(Clone, Debug)]
pub struct SymEigen {
    pub values: Vec<f64>,
    // Row-major; column k is the eigenvector for values[k].
    vectors: Vec<f64>,
    dim: usize,
}

impl SymEigen {
    pub fn eigenvector(&self, k: usize) -> Vector {
        Vector::from_fn(self.dim, |i| self.vectors[i * self.dim + k])
    }

    pub fn min(&self) -> f64 {
        self.values[0]
    }

    pub fn max(&self) -> f64 {
        self.values[self.dim - 1]
    }
}

/// Cyclic Jacobi iteration. Converges quadratically; the sweep cap is far
/// above anything the small dimensions here need.
pub fn sym_eigen(a: &SymMatrix) -> SymEigen {
    let n = a.dim();
    let mut m: Vec<f64> = (0..n * n).map(|k| a.get(k / n, k % n)).collect();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }

    let off_norm = |m: &[f64]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..i {
                s += m[i * n + j] * m[i * n + j];
            }
        }
        (2.0 * s).sqrt()
    };
    let frob = {
        let mut s = 0.0;
        for x in &m {
            s += x * x;
        }
        s.sqrt().max(f64::MIN_POSITIVE)
    };

    for _sweep in 0..100 {
        if off_norm(&m) <= 1e-15 * frob {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[p * n + q];
                if apq.abs() <= 1e-300 {
                    continue;
                }
                let app = m[p * n + p];
                let aqq = m[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                // Stable tangent of the rotation angle.
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let mkp = m[k * n + p];
                    let mkq = m[k * n + q];
                    m[k * n + p] = c * mkp - s * mkq;
                    m[k * n + q] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[p * n + k];
                    let mqk = m[q * n + k];
                    m[p * n + k] = c * mpk - s * mqk;
                    m[q * n + k] = s * mpk + c * mqk;
                }
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }

    // Sort ascending, carrying eigenvector columns along.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[i * n + i].partial_cmp(&m[j * n + j]).unwrap());
    let values: Vec<f64> = order.iter().map(|&k| m[k * n + k]).collect();
    let mut vectors = vec![0.0; n * n];
    for (new_k, &old_k) in order.iter().enumerate() {
        for i in 0..n {
            vectors[i * n + new_k] = v[i * n + old_k];
        }
    }
    SymEigen {
        values,
        vectors,
        dim: n,
    }
}

/// Largest generalized eigenvalue of the pencil `(A, B)`, i.e.
/// `lambda_max(B^{-1/2} A B^{-1/2})`, for positive-definite `B` (and
/// symmetric `A`). Whitens with the Cholesky factor of `B` and runs the
/// Jacobi solver on the reduced matrix.
pub fn max_generalized_eig(a: &SymMatrix, b: &SymMatrix) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: b.dim(),
            got: a.dim(),
        });
    }
    let n = a.dim();
    let lb = cholesky_factor(b)?;

    // M1 = L^{-1} A, column by column.
    let mut m1 = vec![0.0; n * n];
    for col in 0..n {
        let rhs: Vec<f64> = (0..n).map(|i| a.get(i, col)).collect();
        let y = lb.forward(&rhs);
        for i in 0..n {
            m1[i * n + col] = y[i];
        }
    }
    // C^T = L^{-1} M1^T, so C = (L^{-1} M1^T)^T.
    let mut c = vec![0.0; n * n];
    for col in 0..n {
        let rhs: Vec<f64> = (0..n).map(|i| m1[col * n + i]).collect();
        let y = lb.forward(&rhs);
        for i in 0..n {
            c[col * n + i] = y[i];
        }
    }
    // Whitened matrix is symmetric up to round-off.
    let reduced = SymMatrix::from_fn_symmetric(n, |i, j| 0.5 * (c[i * n + j] + c[j * n + i]));
    Ok(sym_eigen(&reduced).max())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_solve() {
        let a = SymMatrix::identity(3);
        let b = Vector::new(vec![1.0, 2.0, 3.0]);
        let x = cholesky_solve(&a, &b).unwrap();
        assert_eq!(x.as_slice(), &[1.0, 2.0, 3.0]);
    }

    #[test]
    fn diagonal_solve() {
        let a = SymMatrix::diag(&[2.0, 4.0]);
        let b = Vector::new(vec![2.0, 4.0]);
        let x = cholesky_solve(&a, &b).unwrap();
        assert!((x[0] - 1.0).abs() < 1e-14);
        assert!((x[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn dense_solve_checked_by_hand() {
        // A (1,1)^T = (3,3)^T, so solving with b = (3,3) recovers (1,1).
        let a = SymMatrix::from_row_major(2, vec![2.0, 1.0, 1.0, 2.0]);
        let b = Vector::new(vec![3.0, 3.0]);
        let x = cholesky_solve(&a, &b).unwrap();
        assert!((x[0] - 1.0).abs() < 1e-14);
        assert!((x[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn degenerate_matrix_rejected() {
        let a = SymMatrix::from_row_major(2, vec![1.0, 1.0, 1.0, 1.0]);
        match cholesky_solve(&a, &Vector::new(vec![1.0, 1.0])) {
            Err(Error::NotPositiveDefinite { index, .. }) => assert_eq!(index, 1),
            other => panic!("expected NotPositiveDefinite, got {other:?}"),
        }
    }

    #[test]
    fn eigen_of_known_matrix() {
        // Eigenvalues of [[2,1],[1,2]] are 1 and 3.
        let a = SymMatrix::from_row_major(2, vec![2.0, 1.0, 1.0, 2.0]);
        let e = sym_eigen(&a);
        assert!((e.min() - 1.0).abs() < 1e-12);
        assert!((e.max() - 3.0).abs() < 1e-12);
        // Eigenvectors are orthonormal and satisfy A v = lambda v.
        for k in 0..2 {
            let v = e.eigenvector(k);
            let av = a.matvec(&v);
            let err = (&av - &v.scale(e.values[k])).norm();
            assert!(err < 1e-12, "residual {err}");
            assert!((v.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn generalized_eig_trivial_cases() {
        let i2 = SymMatrix::identity(2);
        assert!((max_generalized_eig(&i2, &i2).unwrap() - 1.0).abs() < 1e-12);
        let a = i2.scale(2.0);
        assert!((max_generalized_eig(&a, &i2).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn random_spd_solve_residuals() {
        // 1000 seeded systems, d <= 8, condition number up to 1e6.
        let mut rng = crate::numerics::SeededRng::new(0x50_1DE);
        for trial in 0..1000 {
            let d = 1 + rng.index(8);
            let log_cond = rng.uniform_in(0.0, 6.0);
            let eigs: Vec<f64> = (0..d)
                .map(|i| {
                    if d == 1 {
                        1.0
                    } else {
                        10f64.powf(log_cond * i as f64 / (d - 1) as f64)
                    }
                })
                .collect();
            // Random rotation via Gram-Schmidt.
            let mut basis: Vec<Vector> = Vec::new();
            while basis.len() < d {
                let mut v = rng.normal_vector(d);
                for b in &basis {
                    v = v.add_scaled(-v.dot(b), b);
                }
                if let Some(u) = v.normalized() {
                    basis.push(u);
                }
            }
            let mut a = SymMatrix::zeros(d);
            for (val, q) in eigs.iter().zip(&basis) {
                a.add_scaled_outer(*val, q);
            }
            let b = rng.normal_vector(d);
            let x = cholesky_solve(&a, &b).unwrap();
            let residual = (&a.matvec(&x) - &b).norm();
            let budget = 1e-8 * (1.0 + b.norm());
            assert!(residual <= budget, "trial {trial}: {residual} > {budget}");
        }
    }

    #[test]
    fn generalized_eig_dominates_the_pencil() {
        // lambda_max(A, B) * B - A is positive semidefinite up to round-off.
        let mut rng = crate::numerics::SeededRng::new(0x6E1);
        for _ in 0..200 {
            let d = 1 + rng.index(5);
            let ae: Vec<f64> = (0..d).map(|_| rng.uniform_in(0.1, 8.0)).collect();
            let be: Vec<f64> = (0..d).map(|_| rng.uniform_in(0.1, 8.0)).collect();
            let mut rot = |eigs: &[f64]| {
                let mut basis: Vec<Vector> = Vec::new();
                while basis.len() < d {
                    let mut v = rng.normal_vector(d);
                    for b in &basis {
                        v = v.add_scaled(-v.dot(b), b);
                    }
                    if let Some(u) = v.normalized() {
                        basis.push(u);
                    }
                }
                let mut m = SymMatrix::zeros(d);
                for (val, q) in eigs.iter().zip(&basis) {
                    m.add_scaled_outer(*val, q);
                }
                m
            };
            let a = rot(&ae);
            let b = rot(&be);
            let top = max_generalized_eig(&a, &b).unwrap();
            let diff = b.scale(top).sub(&a);
            let floor = sym_eigen(&diff).min();
            assert!(floor >= -1e-6 * a.max_abs(), "floor {floor}");
        }
    }

    #[test]
    fn generalized_eig_commuting_diagonals() {
        // diag(1,8) against diag(1,2): ratios are 1 and 4.
        let a = SymMatrix::diag(&[1.0, 8.0]);
        let b = SymMatrix::diag(&[1.0, 2.0]);
        assert!((max_generalized_eig(&a, &b).unwrap() - 4.0).abs() < 1e-10);
    }
}
