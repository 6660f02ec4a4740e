//! Dense symmetric matrix.

use super::Vector;
use crate::{Error, Result};

/// Relative asymmetry tolerated by [`SymMatrix::checked`].
const SYMMETRY_TOL: f64 = 1e-12;

/// A dense `d x d` symmetric matrix, stored row-major in full. Holds
/// Hessians and the quadratic-form matrices of the function oracles.
#[derive(Clone, Debug, PartialEq)]
pub struct SymMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    /// Build from a row-major buffer, symmetrizing round-off. Debug builds
    /// assert the input is symmetric; use [`SymMatrix::checked`] on
    /// untrusted input.
    pub fn from_row_major(dim: usize, data: Vec<f64>) -> Self {
        debug_assert_eq!(data.len(), dim * dim);
        let mut m = Self { dim, data };
        debug_assert!(m.max_asymmetry() <= SYMMETRY_TOL * m.max_abs().max(1.0));
        m.symmetrize();
        m
    }

    /// Validating constructor: rejects non-finite entries and asymmetry
    /// beyond `1e-12` relative to the matrix scale.
    pub fn checked(dim: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                got: data.len(),
            });
        }
        if !data.iter().all(|v| v.is_finite()) {
            return Err(Error::NonFiniteValue {
                context: "matrix construction",
            });
        }
        let m = Self { dim, data };
        if m.max_asymmetry() > SYMMETRY_TOL * m.max_abs().max(1.0) {
            return Err(Error::InvalidArgument(format!(
                "matrix is not symmetric (asymmetry {:.3e})",
                m.max_asymmetry()
            )));
        }
        let mut m = m;
        m.symmetrize();
        Ok(m)
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![0.0; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = 1.0;
        }
        m
    }

    pub fn diag(entries: &[f64]) -> Self {
        let mut m = Self::zeros(entries.len());
        for (i, &v) in entries.iter().enumerate() {
            m.data[i * m.dim + i] = v;
        }
        m
    }

    /// Fill the lower triangle via `f(i, j)` for `i >= j` and mirror it.
    pub fn from_fn_symmetric(dim: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..=i {
                let v = f(i, j);
                m.data[i * dim + j] = v;
                m.data[j * dim + i] = v;
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    /// Set entry `(i, j)` and its mirror.
    pub fn set_sym(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.dim + j] = v;
        self.data[j * self.dim + i] = v;
    }

    pub fn matvec(&self, x: &Vector) -> Vector {
        debug_assert_eq!(x.dim(), self.dim);
        Vector::from_fn(self.dim, |i| {
            let row = &self.data[i * self.dim..(i + 1) * self.dim];
            row.iter().zip(x.iter()).map(|(a, b)| a * b).sum()
        })
    }

    /// Quadratic form `x^T M x`.
    pub fn quad_form(&self, x: &Vector) -> f64 {
        x.dot(&self.matvec(x))
    }

    pub fn add(&self, other: &SymMatrix) -> SymMatrix {
        debug_assert_eq!(self.dim, other.dim);
        SymMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &SymMatrix) -> SymMatrix {
        debug_assert_eq!(self.dim, other.dim);
        SymMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, c: f64) -> SymMatrix {
        SymMatrix {
            dim: self.dim,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    /// `self += c * v v^T`.
    pub fn add_scaled_outer(&mut self, c: f64, v: &Vector) {
        debug_assert_eq!(v.dim(), self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                self.data[i * self.dim + j] += c * v[i] * v[j];
            }
        }
    }

    /// Largest absolute entry; the scale proxy used by tolerances.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    fn max_asymmetry(&self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..self.dim {
            for j in 0..i {
                worst = worst.max((self.get(i, j) - self.get(j, i)).abs());
            }
        }
        worst
    }

    fn symmetrize(&mut self) {
        for i in 0..self.dim {
            for j in 0..i {
                let avg = 0.5 * (self.get(i, j) + self.get(j, i));
                self.data[i * self.dim + j] = avg;
                self.data[j * self.dim + i] = avg;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matvec_and_quad_form() {
        let m = SymMatrix::from_row_major(2, vec![2.0, 1.0, 1.0, 2.0]);
        let x = Vector::new(vec![1.0, 1.0]);
        assert_eq!(m.matvec(&x).as_slice(), &[3.0, 3.0]);
        assert_eq!(m.quad_form(&x), 6.0);
    }

    #[test]
    fn checked_rejects_asymmetry() {
        assert!(SymMatrix::checked(2, vec![1.0, 0.5, 0.4, 1.0]).is_err());
        assert!(SymMatrix::checked(2, vec![1.0, 0.5, 0.5, 1.0]).is_ok());
    }

    #[test]
    fn outer_update() {
        let mut m = SymMatrix::zeros(2);
        m.add_scaled_outer(2.0, &Vector::new(vec![1.0, 3.0]));
        assert_eq!(m.get(0, 0), 2.0);
        assert_eq!(m.get(0, 1), 6.0);
        assert_eq!(m.get(1, 1), 18.0);
    }
}
