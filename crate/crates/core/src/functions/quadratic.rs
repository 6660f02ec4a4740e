//! Convex quadratic form `f(x) = x^T A x - 2 b^T x + c`.

use super::FunctionOracle;
use crate::numerics::{cholesky_solve, sym_eigen, SymMatrix, Vector};
use crate::{Error, Result};

/// Eigenvalues of `A` below this (relative to the spectral scale) count as
/// zero when classifying convexity.
const EIG_TOL: f64 = 1e-12;

/// A quadratic loss. `A` must be positive semidefinite; when it is positive
/// definite the oracle declares strong convexity `2 lambda_min(A)` and
/// smoothness `2 lambda_max(A)` (both Hessian eigen-bounds of `2A`).
#[derive(Clone, Debug)]
pub struct QuadraticOracle {
    a: SymMatrix,
    b: Vector,
    c: f64,
    eig_min: f64,
    eig_max: f64,
}

impl QuadraticOracle {
    pub fn new(a: SymMatrix, b: Vector, c: f64) -> Result<Self> {
        if a.dim() != b.dim() {
            return Err(Error::DimensionMismatch {
                expected: a.dim(),
                got: b.dim(),
            });
        }
        let eig = sym_eigen(&a);
        let scale = eig.max().abs().max(eig.min().abs()).max(1.0);
        if eig.min() < -EIG_TOL * scale {
            return Err(Error::InvalidArgument(format!(
                "quadratic form matrix must be positive semidefinite \
                 (min eigenvalue {:.3e})",
                eig.min()
            )));
        }
        Ok(Self {
            eig_min: eig.min().max(0.0),
            eig_max: eig.max().max(0.0),
            a,
            b,
            c,
        })
    }

    /// Centered form `f(x) = (x - center)^T A (x - center)`, whose minimum
    /// value is 0 at `center`.
    pub fn from_center(a: SymMatrix, center: &Vector) -> Result<Self> {
        let b = a.matvec(center);
        let c = center.dot(&b);
        Self::new(a, b, c)
    }

    pub fn matrix(&self) -> &SymMatrix {
        &self.a
    }

    pub fn linear_term(&self) -> &Vector {
        &self.b
    }

    /// Unconstrained minimizer `A^{-1} b`; requires `A` positive definite.
    pub fn unconstrained_minimizer(&self) -> Result<Vector> {
        cholesky_solve(&self.a, &self.b)
    }

    pub(crate) fn eig_max(&self) -> f64 {
        self.eig_max
    }
}

impl FunctionOracle for QuadraticOracle {
    fn dim(&self) -> usize {
        self.b.dim()
    }

    fn value(&self, x: &Vector) -> f64 {
        self.a.quad_form(x) - 2.0 * self.b.dot(x) + self.c
    }

    fn gradient(&self, x: &Vector) -> Vector {
        (&self.a.matvec(x) - &self.b).scale(2.0)
    }

    fn hessian(&self, _x: &Vector) -> SymMatrix {
        self.a.scale(2.0)
    }

    fn strong_convexity(&self) -> Option<f64> {
        (self.eig_min > EIG_TOL).then_some(2.0 * self.eig_min)
    }

    fn smoothness(&self) -> Option<f64> {
        (self.eig_max > EIG_TOL).then_some(2.0 * self.eig_max)
    }
}
