//! Regularized logistic loss over a mini-batch.

use super::FunctionOracle;
use crate::numerics::{SymMatrix, Vector};
use crate::{Error, Result};

/// `f(x) = (1/m) sum_i log(1 + exp(-y_i z_i^T x)) + (reg/2) ||x||^2` with
/// labels `y_i` in {-1, +1}.
///
/// Strong convexity equals the regularizer; the declared smoothness is the
/// standard upper bound `reg + max_i ||z_i||^2 / 4`.
#[derive(Clone, Debug)]
pub struct LogisticOracle {
    data: Vec<(Vector, f64)>,
    reg: f64,
    smoothness: f64,
}

/// Numerically stable `log(1 + exp(s))`.
fn log1p_exp(s: f64) -> f64 {
    if s > 0.0 {
        s + (-s).exp().ln_1p()
    } else {
        s.exp().ln_1p()
    }
}

fn sigmoid(s: f64) -> f64 {
    if s >= 0.0 {
        1.0 / (1.0 + (-s).exp())
    } else {
        let e = s.exp();
        e / (1.0 + e)
    }
}

impl LogisticOracle {
    pub fn new(data: Vec<(Vector, f64)>, reg: f64) -> Result<Self> {
        if data.is_empty() {
            return Err(Error::InvalidArgument(
                "logistic oracle needs at least one instance".into(),
            ));
        }
        if !(reg > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "logistic regularizer must be positive, got {reg}"
            )));
        }
        let dim = data[0].0.dim();
        let mut max_norm_sq = 0.0_f64;
        for (z, y) in &data {
            if z.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: z.dim(),
                });
            }
            if *y != 1.0 && *y != -1.0 {
                return Err(Error::InvalidArgument(format!(
                    "labels must be +1 or -1, got {y}"
                )));
            }
            max_norm_sq = max_norm_sq.max(z.norm_sq());
        }
        Ok(Self {
            smoothness: reg + max_norm_sq / 4.0,
            data,
            reg,
        })
    }

    pub fn batch(&self) -> &[(Vector, f64)] {
        &self.data
    }

    pub fn regularizer(&self) -> f64 {
        self.reg
    }

    /// Mean instance norm; a data-side gradient bound independent of `x`.
    pub fn mean_instance_norm(&self) -> f64 {
        self.data.iter().map(|(z, _)| z.norm()).sum::<f64>() / self.data.len() as f64
    }
}

impl FunctionOracle for LogisticOracle {
    fn dim(&self) -> usize {
        self.data[0].0.dim()
    }

    fn value(&self, x: &Vector) -> f64 {
        let m = self.data.len() as f64;
        let loss: f64 = self
            .data
            .iter()
            .map(|(z, y)| log1p_exp(-y * z.dot(x)))
            .sum();
        loss / m + 0.5 * self.reg * x.norm_sq()
    }

    fn gradient(&self, x: &Vector) -> Vector {
        let m = self.data.len() as f64;
        let mut g = x.scale(self.reg);
        for (z, y) in &self.data {
            let s = sigmoid(-y * z.dot(x));
            g = g.add_scaled(-y * s / m, z);
        }
        g
    }

    fn hessian(&self, x: &Vector) -> SymMatrix {
        let m = self.data.len() as f64;
        let mut h = SymMatrix::identity(self.dim()).scale(self.reg);
        for (z, y) in &self.data {
            let s = sigmoid(-y * z.dot(x));
            h.add_scaled_outer(s * (1.0 - s) / m, z);
        }
        h
    }

    fn strong_convexity(&self) -> Option<f64> {
        Some(self.reg)
    }

    fn smoothness(&self) -> Option<f64> {
        Some(self.smoothness)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{finite_diff_gradient, finite_diff_hessian};

    #[test]
    fn single_instance_matches_closed_form() {
        // log(1 + e^x) + 0.5 x^2 via z = 1, y = -1, reg = 1.
        let o = LogisticOracle::new(vec![(Vector::new(vec![1.0]), -1.0)], 1.0).unwrap();
        let x = Vector::new(vec![0.3]);
        let expect = (1.0 + 0.3_f64.exp()).ln() + 0.5 * 0.09;
        assert!((o.value(&x) - expect).abs() < 1e-14);
        assert_eq!(o.strong_convexity(), Some(1.0));
        assert_eq!(o.smoothness(), Some(1.25));
    }

    #[test]
    fn gradient_and_hessian_match_finite_differences() {
        let data = vec![
            (Vector::new(vec![1.0, -0.5]), 1.0),
            (Vector::new(vec![-2.0, 0.25]), -1.0),
            (Vector::new(vec![0.3, 1.7]), 1.0),
        ];
        let o = LogisticOracle::new(data, 0.2).unwrap();
        let x = Vector::new(vec![0.4, -0.8]);
        let g = o.gradient(&x);
        let g_fd = finite_diff_gradient(&|p| o.value(p), &x, 1e-5).unwrap();
        assert!((&g - &g_fd).norm() < 1e-8);
        let h = o.hessian(&x);
        let h_fd = finite_diff_hessian(&|p| o.value(p), &x, 1e-4).unwrap();
        assert!(h.sub(&h_fd).max_abs() < 1e-6);
    }

    #[test]
    fn stable_for_extreme_margins() {
        let o = LogisticOracle::new(vec![(Vector::new(vec![1.0]), 1.0)], 0.01).unwrap();
        let far = Vector::new(vec![500.0]);
        assert!(o.value(&far).is_finite());
        assert!(o.gradient(&far).is_finite());
        let far_neg = Vector::new(vec![-500.0]);
        assert!(o.value(&far_neg).is_finite());
        assert!(o.gradient(&far_neg).is_finite());
    }

    #[test]
    fn bad_labels_rejected() {
        assert!(LogisticOracle::new(vec![(Vector::new(vec![1.0]), 0.5)], 1.0).is_err());
        assert!(LogisticOracle::new(vec![], 1.0).is_err());
    }
}
