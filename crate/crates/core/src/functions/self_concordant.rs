//! Self-concordant losses: a convex quadratic plus affine log barriers.
//!
//! `f(x) = x^T A x - 2 b^T x + c - sum_i log(d_i - a_i^T x)` on the open
//! domain where every slack `d_i - a_i^T x` is positive. Self-concordance
//! follows from the closure rules: the quadratic is self-concordant on all
//! of `R^d`, `-log` composed with an affine map is self-concordant on its
//! half-space, and sums of self-concordant functions are self-concordant.

use super::FunctionOracle;
use crate::numerics::{cholesky_factor, sym_eigen, SymMatrix, Vector};
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct SelfConcordantOracle {
    a: SymMatrix,
    b: Vector,
    c: f64,
    barriers: Vec<(Vector, f64)>,
    witness: Vector,
}

impl SelfConcordantOracle {
    /// `witness` must be strictly feasible; it anchors the Hessian
    /// positive-definiteness check and seeds Newton solves.
    pub fn new(
        a: SymMatrix,
        b: Vector,
        c: f64,
        barriers: Vec<(Vector, f64)>,
        witness: Vector,
    ) -> Result<Self> {
        let d = b.dim();
        if a.dim() != d || witness.dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: a.dim().max(witness.dim()),
            });
        }
        let eig_min = sym_eigen(&a).min();
        if eig_min < -1e-12 {
            return Err(Error::InvalidArgument(format!(
                "quadratic part must be positive semidefinite (min eigenvalue {eig_min:.3e})"
            )));
        }
        for (normal, offset) in &barriers {
            if normal.dim() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    got: normal.dim(),
                });
            }
            if !(normal.dot(&witness) < *offset) {
                return Err(Error::InvalidArgument(
                    "witness point is not strictly feasible".into(),
                ));
            }
        }
        let oracle = Self {
            a,
            b,
            c,
            barriers,
            witness,
        };
        // Non-degeneracy: the Hessian must be positive definite somewhere in
        // the domain (it then is everywhere, since the barrier terms only add
        // positive curvature on top of the constant quadratic part).
        cholesky_factor(&oracle.hessian(&oracle.witness.clone()))?;
        Ok(oracle)
    }

    /// Convenience: log barriers for the axis-aligned box `lower < x < upper`.
    pub fn box_barriers(lower: &Vector, upper: &Vector) -> Vec<(Vector, f64)> {
        let d = lower.dim();
        let mut barriers = Vec::with_capacity(2 * d);
        for i in 0..d {
            barriers.push((Vector::basis(d, i), upper[i]));
            barriers.push((Vector::basis(d, i).scale(-1.0), -lower[i]));
        }
        barriers
    }

    /// The oracle for `x -> f(x - offset)`: same shape, domain and minimizer
    /// translated by `offset`.
    pub fn translated(&self, offset: &Vector) -> Self {
        let b = &self.b + &self.a.matvec(offset);
        let c = self.c + self.a.quad_form(offset) + 2.0 * self.b.dot(offset);
        let barriers = self
            .barriers
            .iter()
            .map(|(n, d)| (n.clone(), d + n.dot(offset)))
            .collect();
        Self {
            a: self.a.clone(),
            b,
            c,
            barriers,
            witness: &self.witness + offset,
        }
    }

    /// Smallest barrier slack at `x`; positive iff `x` is strictly feasible.
    pub fn min_slack(&self, x: &Vector) -> f64 {
        self.barriers
            .iter()
            .map(|(n, d)| d - n.dot(x))
            .fold(f64::INFINITY, f64::min)
    }

    pub fn barriers(&self) -> &[(Vector, f64)] {
        &self.barriers
    }

    pub fn witness(&self) -> &Vector {
        &self.witness
    }
}

impl FunctionOracle for SelfConcordantOracle {
    fn dim(&self) -> usize {
        self.b.dim()
    }

    fn value(&self, x: &Vector) -> f64 {
        let mut barrier = 0.0;
        for (n, d) in &self.barriers {
            let slack = d - n.dot(x);
            if slack <= 0.0 {
                return f64::INFINITY;
            }
            barrier -= slack.ln();
        }
        self.a.quad_form(x) - 2.0 * self.b.dot(x) + self.c + barrier
    }

    fn gradient(&self, x: &Vector) -> Vector {
        debug_assert!(self.in_domain(x), "gradient queried outside the domain");
        let mut g = (&self.a.matvec(x) - &self.b).scale(2.0);
        for (n, d) in &self.barriers {
            let slack = d - n.dot(x);
            g = g.add_scaled(1.0 / slack, n);
        }
        g
    }

    fn hessian(&self, x: &Vector) -> SymMatrix {
        debug_assert!(self.in_domain(x), "Hessian queried outside the domain");
        let mut h = self.a.scale(2.0);
        for (n, d) in &self.barriers {
            let slack = d - n.dot(x);
            h.add_scaled_outer(1.0 / (slack * slack), n);
        }
        h
    }

    fn in_domain(&self, x: &Vector) -> bool {
        self.min_slack(x) > 0.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{finite_diff_gradient, finite_diff_hessian};

    fn unit_box_oracle() -> SelfConcordantOracle {
        let lower = Vector::new(vec![-1.0, -1.0]);
        let upper = Vector::new(vec![1.0, 1.0]);
        SelfConcordantOracle::new(
            SymMatrix::identity(2).scale(0.5),
            Vector::new(vec![0.1, -0.2]),
            0.0,
            SelfConcordantOracle::box_barriers(&lower, &upper),
            Vector::zeros(2),
        )
        .unwrap()
    }

    #[test]
    fn gradient_and_hessian_match_finite_differences() {
        let o = unit_box_oracle();
        let x = Vector::new(vec![0.3, -0.4]);
        let g_fd = finite_diff_gradient(&|p| o.value(p), &x, 1e-6).unwrap();
        assert!((&o.gradient(&x) - &g_fd).norm() < 1e-6);
        let h_fd = finite_diff_hessian(&|p| o.value(p), &x, 1e-4).unwrap();
        assert!(o.hessian(&x).sub(&h_fd).max_abs() < 1e-4);
    }

    #[test]
    fn value_blows_up_at_boundary() {
        let o = unit_box_oracle();
        assert!(o.value(&Vector::new(vec![1.0, 0.0])).is_infinite());
        let near = o.value(&Vector::new(vec![1.0 - 1e-12, 0.0]));
        assert!(near > 20.0);
        assert!(!o.in_domain(&Vector::new(vec![1.5, 0.0])));
        assert!(o.in_domain(&Vector::new(vec![0.99, 0.99])));
    }

    #[test]
    fn translation_shifts_domain_and_values() {
        let o = unit_box_oracle();
        let offset = Vector::new(vec![0.5, -0.25]);
        let shifted = o.translated(&offset);
        for probe in [
            Vector::new(vec![0.2, 0.1]),
            Vector::new(vec![-0.3, 0.6]),
        ] {
            let moved = &probe + &offset;
            assert!((shifted.value(&moved) - o.value(&probe)).abs() < 1e-12);
            assert!(
                (&shifted.gradient(&moved) - &o.gradient(&probe)).norm() < 1e-12
            );
        }
        // Old boundary point is interior for the shifted domain side.
        assert!(shifted.in_domain(&Vector::new(vec![1.2, 0.0])));
        assert!(!shifted.in_domain(&Vector::new(vec![-0.6, 0.0])));
    }

    #[test]
    fn infeasible_witness_rejected() {
        let lower = Vector::new(vec![-1.0]);
        let upper = Vector::new(vec![1.0]);
        let res = SelfConcordantOracle::new(
            SymMatrix::identity(1),
            Vector::zeros(1),
            0.0,
            SelfConcordantOracle::box_barriers(&lower, &upper),
            Vector::new(vec![1.0]),
        );
        assert!(res.is_err());
    }

    #[test]
    fn zero_quadratic_part_with_spanning_barriers_is_accepted() {
        // Pure box barrier: the slack outer products alone make the
        // Hessian positive definite.
        let lower = Vector::new(vec![-1.0, -2.0]);
        let upper = Vector::new(vec![2.0, 1.0]);
        let o = SelfConcordantOracle::new(
            SymMatrix::zeros(2),
            Vector::zeros(2),
            0.0,
            SelfConcordantOracle::box_barriers(&lower, &upper),
            Vector::zeros(2),
        )
        .unwrap();
        let x = Vector::new(vec![0.5, -0.5]);
        assert!(o.value(&x).is_finite());
        assert!(crate::numerics::cholesky_factor(&o.hessian(&x)).is_ok());
    }

    #[test]
    fn pure_barrier_without_curvature_needs_spanning_constraints() {
        // A single half-space barrier with A = 0 has a singular Hessian.
        let res = SelfConcordantOracle::new(
            SymMatrix::zeros(2),
            Vector::zeros(2),
            0.0,
            vec![(Vector::basis(2, 0), 1.0)],
            Vector::zeros(2),
        );
        assert!(matches!(res, Err(Error::NotPositiveDefinite { .. })));
    }
}
