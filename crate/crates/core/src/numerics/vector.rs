//! Dense vector of problem coordinates.

use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub, SubAssign};

/// A dense real vector. Holds iterates, minimizers, gradients, and drift
/// directions. Entries are plain `f64` coordinates with no unit attached.
#[derive(Clone, Debug, PartialEq)]
pub struct Vector {
    data: Vec<f64>,
}

impl Vector {
    /// Wrap raw entries. Debug builds assert finiteness and non-emptiness;
    /// use [`Vector::checked`] on untrusted input.
    pub fn new(data: Vec<f64>) -> Self {
        debug_assert!(!data.is_empty(), "vectors must have dimension >= 1");
        debug_assert!(data.iter().all(|v| v.is_finite()), "non-finite entry");
        Self { data }
    }

    /// Validating constructor for externally supplied entries.
    pub fn checked(data: Vec<f64>) -> crate::Result<Self> {
        if data.is_empty() {
            return Err(crate::Error::InvalidArgument(
                "vector dimension must be >= 1".into(),
            ));
        }
        if !data.iter().all(|v| v.is_finite()) {
            return Err(crate::Error::NonFiniteValue {
                context: "vector construction",
            });
        }
        Ok(Self { data })
    }

    pub fn zeros(dim: usize) -> Self {
        Self::new(vec![0.0; dim])
    }

    pub fn from_fn(dim: usize, f: impl FnMut(usize) -> f64) -> Self {
        Self::new((0..dim).map(f).collect())
    }

    /// Standard basis vector `e_i`.
    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = vec![0.0; dim];
        v[i] = 1.0;
        Self::new(v)
    }

    pub fn dim(&self) -> usize {
        self.data.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn iter(&self) -> std::slice::Iter<'_, f64> {
        self.data.iter()
    }

    pub fn dot(&self, other: &Vector) -> f64 {
        debug_assert_eq!(self.dim(), other.dim());
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn norm_sq(&self) -> f64 {
        self.dot(self)
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, c: f64, other: &Vector) -> Vector {
        debug_assert_eq!(self.dim(), other.dim());
        Vector::new(
            self.data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + c * b)
                .collect(),
        )
    }

    pub fn scale(&self, c: f64) -> Vector {
        Vector::new(self.data.iter().map(|a| a * c).collect())
    }

    /// Rescale to unit Euclidean norm. Returns `None` for (numerically) zero
    /// vectors.
    pub fn normalized(&self) -> Option<Vector> {
        let n = self.norm();
        if n <= f64::EPSILON {
            None
        } else {
            Some(self.scale(1.0 / n))
        }
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }
}

impl Index<usize> for Vector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.data[i]
    }
}

impl IndexMut<usize> for Vector {
    fn index_mut(&mut self, i: usize) -> &mut f64 {
        &mut self.data[i]
    }
}

impl Add for &Vector {
    type Output = Vector;
    fn add(self, rhs: &Vector) -> Vector {
        self.add_scaled(1.0, rhs)
    }
}

impl Sub for &Vector {
    type Output = Vector;
    fn sub(self, rhs: &Vector) -> Vector {
        self.add_scaled(-1.0, rhs)
    }
}

impl Mul<f64> for &Vector {
    type Output = Vector;
    fn mul(self, c: f64) -> Vector {
        self.scale(c)
    }
}

impl Neg for &Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        self.scale(-1.0)
    }
}

impl AddAssign<&Vector> for Vector {
    fn add_assign(&mut self, rhs: &Vector) {
        debug_assert_eq!(self.dim(), rhs.dim());
        for (a, b) in self.data.iter_mut().zip(&rhs.data) {
            *a += b;
        }
    }
}

impl SubAssign<&Vector> for Vector {
    fn sub_assign(&mut self, rhs: &Vector) {
        debug_assert_eq!(self.dim(), rhs.dim());
        for (a, b) in self.data.iter_mut().zip(&rhs.data) {
            *a -= b;
        }
    }
}

impl From<Vec<f64>> for Vector {
    fn from(data: Vec<f64>) -> Self {
        Vector::new(data)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dot_and_norms() {
        let a = Vector::new(vec![3.0, 4.0]);
        assert_eq!(a.norm_sq(), 25.0);
        assert_eq!(a.norm(), 5.0);
        let b = Vector::new(vec![1.0, -1.0]);
        assert_eq!(a.dot(&b), -1.0);
    }

    #[test]
    fn arithmetic() {
        let a = Vector::new(vec![1.0, 2.0]);
        let b = Vector::new(vec![0.5, 0.5]);
        assert_eq!((&a + &b).as_slice(), &[1.5, 2.5]);
        assert_eq!((&a - &b).as_slice(), &[0.5, 1.5]);
        assert_eq!((&a * 2.0).as_slice(), &[2.0, 4.0]);
        assert_eq!(a.add_scaled(-2.0, &b).as_slice(), &[0.0, 1.0]);
    }

    #[test]
    fn checked_rejects_bad_input() {
        assert!(Vector::checked(vec![]).is_err());
        assert!(Vector::checked(vec![f64::NAN]).is_err());
        assert!(Vector::checked(vec![0.0]).is_ok());
    }
}
