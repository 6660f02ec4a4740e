//! Semi-strongly convex losses `f(x) = (Ex)^T G (Ex) + b^T x`.
//!
//! `E` may be rank-deficient, so the minimizer set is an affine set rather
//! than a point. The oracle caches an eigendecomposition of the constant
//! Hessian `H = 2 E^T G E`, which yields the minimizer set (a particular
//! solution plus the null space of `H`) and a closed-form projection onto
//! it. The growth constant `beta` of the quadratic-growth inequality to the
//! minimizer set is estimated at construction by sampling.

use super::{FeasibleSet, FunctionOracle};
use crate::numerics::{cholesky_factor, sym_eigen, SeededRng, SymMatrix, Vector};
use crate::{Error, Result};

/// Samples drawn when certifying the growth inequality and estimating beta.
const BETA_SAMPLES: usize = 10_000;

/// Safety factor applied to the smallest sampled growth ratio.
const BETA_MARGIN: f64 = 0.9;

/// Eigenvalues of `H` below `NULL_TOL * scale` span the minimizer set.
const NULL_TOL: f64 = 1e-10;

#[derive(Clone, Debug)]
pub struct SemiStrongOracle {
    e_rows: Vec<Vector>,
    g: SymMatrix,
    b: Vector,
    set: FeasibleSet,
    hessian: SymMatrix,
    null_basis: Vec<Vector>,
    range_pairs: Vec<(f64, Vector)>,
    x_particular: Vector,
    representative: Vector,
    min_value: f64,
    beta: f64,
    smoothness: f64,
}

impl SemiStrongOracle {
    /// Build the oracle over `set`, estimate `beta`, and verify the minimum
    /// is attained (the affine minimizer set must meet the feasible set).
    /// `seed` drives the beta-estimation sampler.
    pub fn new(
        e_rows: Vec<Vector>,
        g: SymMatrix,
        b: Vector,
        set: FeasibleSet,
        seed: u64,
    ) -> Result<Self> {
        let d = b.dim();
        if set.dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: set.dim(),
            });
        }
        if e_rows.len() != g.dim() {
            return Err(Error::DimensionMismatch {
                expected: g.dim(),
                got: e_rows.len(),
            });
        }
        for row in &e_rows {
            if row.dim() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    got: row.dim(),
                });
            }
        }
        // g must be strongly convex.
        cholesky_factor(&g)?;

        // H = 2 E^T G E via M = G E.
        let r = e_rows.len();
        let m_rows: Vec<Vector> = (0..r)
            .map(|k| {
                let mut acc = Vector::zeros(d);
                for l in 0..r {
                    acc = acc.add_scaled(g.get(k, l), &e_rows[l]);
                }
                acc
            })
            .collect();
        let hessian = SymMatrix::from_fn_symmetric(d, |i, j| {
            2.0 * (0..r).map(|k| e_rows[k][i] * m_rows[k][j]).sum::<f64>()
        });

        let eig = sym_eigen(&hessian);
        let scale = eig.max().abs().max(1.0);
        let mut null_basis = Vec::new();
        let mut range_pairs = Vec::new();
        for (k, &val) in eig.values.iter().enumerate() {
            if val <= NULL_TOL * scale {
                null_basis.push(eig.eigenvector(k));
            } else {
                range_pairs.push((val, eig.eigenvector(k)));
            }
        }

        // Least-norm solution of H x = -b.
        let mut x_particular = Vector::zeros(d);
        for (val, q) in &range_pairs {
            x_particular = x_particular.add_scaled(-q.dot(&b) / val, q);
        }
        // The minimum is attained only if b has no component along the null
        // space of H (there f is linear).
        let residual = (&hessian.matvec(&x_particular) + &b).norm();
        if residual > 1e-8 * b.norm().max(1.0) {
            return Err(Error::MinimumNotAttained);
        }

        let mut oracle = Self {
            min_value: 0.0,
            beta: 0.0,
            smoothness: eig.max().max(0.0),
            representative: x_particular.clone(),
            e_rows,
            g,
            b,
            set,
            hessian,
            null_basis,
            range_pairs,
            x_particular,
        };

        // A feasible representative minimizer; fails if the affine set
        // misses the feasible set.
        oracle.representative = oracle.project_minimizer_set(&oracle.set.center())?;
        oracle.min_value = oracle.eval(&oracle.representative);

        oracle.beta = oracle.estimate_beta(seed)?;
        Ok(oracle)
    }

    fn eval(&self, x: &Vector) -> f64 {
        0.5 * self.hessian.quad_form(x) + self.b.dot(x)
    }

    /// Projection onto the affine set `{x : H x = -b}`.
    fn project_affine(&self, x: &Vector) -> Vector {
        let offset = x - &self.x_particular;
        let mut p = self.x_particular.clone();
        for q in &self.null_basis {
            p = p.add_scaled(q.dot(&offset), q);
        }
        p
    }

    /// Exact projection of `x` onto the minimizer set over the stored
    /// feasible set. Closed form for the whole space; Dykstra alternating
    /// projections against the affine set otherwise.
    pub fn project_minimizer_set(&self, x: &Vector) -> Result<Vector> {
        if x.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: x.dim(),
            });
        }
        if !self.set.is_bounded() {
            return Ok(self.project_affine(x));
        }
        // Dykstra's algorithm for the intersection of the affine minimizer
        // set with the feasible set.
        let mut y = x.clone();
        let mut p = Vector::zeros(x.dim());
        let mut q = Vector::zeros(x.dim());
        let scale = 1.0 + x.norm();
        let mut last_gap = f64::INFINITY;
        for iter in 0..100_000 {
            let a = self.project_affine(&(&y + &p));
            p = &(&y + &p) - &a;
            let y_next = self.set.project(&(&a + &q));
            q = &(&a + &q) - &y_next;
            let gap = (&y_next - &a).norm();
            let moved = (&y_next - &y).norm();
            y = y_next;
            if gap <= 1e-10 * scale && moved <= 1e-12 * scale {
                return Ok(y);
            }
            // Stalled far from feasibility: the sets do not intersect.
            if iter > 500 && gap > 1e-6 * scale && (last_gap - gap).abs() < 1e-15 * scale {
                return Err(Error::EmptyMinimizerSet(format!(
                    "affine minimizer set misses the feasible set (gap {gap:.3e})"
                )));
            }
            last_gap = gap;
        }
        Err(Error::NoConvergence {
            iterations: 100_000,
            context: "Dykstra projection onto the minimizer set",
        })
    }

    /// Distance from `x` to the minimizer set.
    pub fn minimizer_set_distance(&self, x: &Vector) -> Result<f64> {
        Ok((x - &self.project_minimizer_set(x)?).norm())
    }

    fn estimate_beta(&self, seed: u64) -> Result<f64> {
        let mut rng = SeededRng::new(seed ^ 0x5EA1_57E0_BE7A_0000);
        let mut min_ratio = f64::INFINITY;
        let scales = [0.5, 2.0, 8.0];
        for k in 0..BETA_SAMPLES {
            let x = if self.set.is_bounded() {
                self.set.sample(&mut rng)
            } else {
                self.x_particular
                    .add_scaled(scales[k % scales.len()], &rng.normal_vector(self.dim()))
            };
            let dist_sq = (&x - &self.project_minimizer_set(&x)?).norm_sq();
            if dist_sq < 1e-16 {
                continue;
            }
            let gap = self.eval(&x) - self.min_value;
            min_ratio = min_ratio.min(2.0 * gap / dist_sq);
        }
        if !min_ratio.is_finite() || min_ratio <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "could not certify a positive growth constant (min ratio {min_ratio})"
            )));
        }
        Ok(BETA_MARGIN * min_ratio)
    }

    /// The minimum of `f` over the feasible set.
    pub fn min_value(&self) -> f64 {
        self.min_value
    }

    /// A feasible point of the minimizer set.
    pub fn representative_minimizer(&self) -> &Vector {
        &self.representative
    }

    /// Orthonormal directions spanning the minimizer set.
    pub fn null_directions(&self) -> &[Vector] {
        &self.null_basis
    }

    pub fn feasible_set(&self) -> &FeasibleSet {
        &self.set
    }

    pub fn factor_rows(&self) -> &[Vector] {
        &self.e_rows
    }

    pub fn inner_form(&self) -> &SymMatrix {
        &self.g
    }
}

impl FunctionOracle for SemiStrongOracle {
    fn dim(&self) -> usize {
        self.b.dim()
    }

    fn value(&self, x: &Vector) -> f64 {
        self.eval(x)
    }

    fn gradient(&self, x: &Vector) -> Vector {
        &self.hessian.matvec(x) + &self.b
    }

    fn hessian(&self, _x: &Vector) -> SymMatrix {
        self.hessian.clone()
    }

    fn strong_convexity(&self) -> Option<f64> {
        // Strongly convex only when the null space is trivial.
        if self.null_basis.is_empty() {
            self.range_pairs
                .iter()
                .map(|(v, _)| *v)
                .fold(None, |acc: Option<f64>, v| {
                    Some(acc.map_or(v, |a| a.min(v)))
                })
        } else {
            None
        }
    }

    fn smoothness(&self) -> Option<f64> {
        (self.smoothness > 0.0).then_some(self.smoothness)
    }

    fn semi_strong(&self) -> Option<f64> {
        Some(self.beta)
    }
}
