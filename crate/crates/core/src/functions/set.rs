//! Constraint regions with exact Euclidean projection.

use crate::numerics::{SeededRng, Vector};
use crate::{Error, Result};

/// The convex region the learner selects points from. Every variant has a
/// closed-form nearest-point projection, so no embedded QP solver is
/// needed anywhere in the crate.
#[derive(Clone, Debug, PartialEq)]
pub enum FeasibleSet {
    /// All of `R^d`; projection is the identity.
    WholeSpace { dim: usize },
    /// Euclidean ball; projection is a radial clip.
    Ball { center: Vector, radius: f64 },
    /// Axis-aligned box; projection clamps per coordinate.
    Box { lower: Vector, upper: Vector },
}

impl FeasibleSet {
    pub fn new_whole_space(dim: usize) -> Self {
        FeasibleSet::WholeSpace { dim }
    }

    pub fn new_ball(center: Vector, radius: f64) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "ball radius must be positive and finite, got {radius}"
            )));
        }
        Ok(FeasibleSet::Ball { center, radius })
    }

    pub fn new_box(lower: Vector, upper: Vector) -> Result<Self> {
        if lower.dim() != upper.dim() {
            return Err(Error::DimensionMismatch {
                expected: lower.dim(),
                got: upper.dim(),
            });
        }
        if lower.iter().zip(upper.iter()).any(|(l, u)| !(l < u)) {
            return Err(Error::InvalidArgument(
                "box bounds must satisfy lower < upper elementwise".into(),
            ));
        }
        Ok(FeasibleSet::Box { lower, upper })
    }

    pub fn dim(&self) -> usize {
        match self {
            FeasibleSet::WholeSpace { dim } => *dim,
            FeasibleSet::Ball { center, .. } => center.dim(),
            FeasibleSet::Box { lower, .. } => lower.dim(),
        }
    }

    /// Exact projection onto the nearest point of the set. Idempotent and
    /// nonexpansive.
    pub fn project(&self, x: &Vector) -> Vector {
        debug_assert_eq!(x.dim(), self.dim());
        match self {
            FeasibleSet::WholeSpace { .. } => x.clone(),
            FeasibleSet::Ball { center, radius } => {
                let offset = x - center;
                let n = offset.norm();
                if n <= *radius {
                    x.clone()
                } else {
                    center.add_scaled(radius / n, &offset)
                }
            }
            FeasibleSet::Box { lower, upper } => {
                Vector::from_fn(x.dim(), |i| x[i].clamp(lower[i], upper[i]))
            }
        }
    }

    /// Checked projection for externally supplied points.
    pub fn project_checked(&self, x: &Vector) -> Result<Vector> {
        if x.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: x.dim(),
            });
        }
        Ok(self.project(x))
    }

    pub fn contains(&self, x: &Vector, tol: f64) -> bool {
        (&self.project(x) - x).norm() <= tol
    }

    /// Smallest enclosing axis-aligned box, or `None` for the whole space.
    pub fn bounding_box(&self) -> Option<(Vector, Vector)> {
        match self {
            FeasibleSet::WholeSpace { .. } => None,
            FeasibleSet::Ball { center, radius } => Some((
                Vector::from_fn(center.dim(), |i| center[i] - radius),
                Vector::from_fn(center.dim(), |i| center[i] + radius),
            )),
            FeasibleSet::Box { lower, upper } => Some((lower.clone(), upper.clone())),
        }
    }

    pub fn is_bounded(&self) -> bool {
        !matches!(self, FeasibleSet::WholeSpace { .. })
    }

    /// A canonical interior point: the origin for the whole space, the
    /// center otherwise.
    pub fn center(&self) -> Vector {
        match self {
            FeasibleSet::WholeSpace { dim } => Vector::zeros(*dim),
            FeasibleSet::Ball { center, .. } => center.clone(),
            FeasibleSet::Box { lower, upper } => {
                Vector::from_fn(lower.dim(), |i| 0.5 * (lower[i] + upper[i]))
            }
        }
    }

    /// Largest `r` such that a ball of radius `r` around [`Self::center`]
    /// stays inside the set; infinite for the whole space.
    pub fn inradius(&self) -> f64 {
        match self {
            FeasibleSet::WholeSpace { .. } => f64::INFINITY,
            FeasibleSet::Ball { radius, .. } => *radius,
            FeasibleSet::Box { lower, upper } => lower
                .iter()
                .zip(upper.iter())
                .map(|(l, u)| 0.5 * (u - l))
                .fold(f64::INFINITY, f64::min),
        }
    }

    /// Signed distance from `x` to the boundary (positive inside). For the
    /// whole space this is infinite.
    pub fn boundary_margin(&self, x: &Vector) -> f64 {
        match self {
            FeasibleSet::WholeSpace { .. } => f64::INFINITY,
            FeasibleSet::Ball { center, radius } => radius - (x - center).norm(),
            FeasibleSet::Box { lower, upper } => x
                .iter()
                .zip(lower.iter().zip(upper.iter()))
                .map(|(v, (l, u))| (v - l).min(u - v))
                .fold(f64::INFINITY, f64::min),
        }
    }

    /// Largest Euclidean norm over the set; `None` when unbounded.
    pub fn max_norm(&self) -> Option<f64> {
        match self {
            FeasibleSet::WholeSpace { .. } => None,
            FeasibleSet::Ball { center, radius } => Some(center.norm() + radius),
            FeasibleSet::Box { lower, upper } => {
                let mut sq = 0.0;
                for (l, u) in lower.iter().zip(upper.iter()) {
                    sq += l.abs().max(u.abs()).powi(2);
                }
                Some(sq.sqrt())
            }
        }
    }

    /// Seeded sample from the set (uniform for bounded variants, standard
    /// normal for the whole space). Used to build probe grids.
    pub fn sample(&self, rng: &mut SeededRng) -> Vector {
        match self {
            FeasibleSet::WholeSpace { dim } => rng.normal_vector(*dim),
            FeasibleSet::Ball { center, radius } => {
                // Direction uniform on the sphere, radius by inverse CDF.
                let dir = loop {
                    if let Some(u) = rng.normal_vector(center.dim()).normalized() {
                        break u;
                    }
                };
                let r = radius * rng.uniform().powf(1.0 / center.dim() as f64);
                center.add_scaled(r, &dir)
            }
            FeasibleSet::Box { lower, upper } => {
                Vector::from_fn(lower.dim(), |i| rng.uniform_in(lower[i], upper[i]))
            }
        }
    }

    /// Vertices of a box set (`2^d` points). Empty for other variants.
    pub fn box_vertices(&self) -> Vec<Vector> {
        match self {
            FeasibleSet::Box { lower, upper } if lower.dim() <= 20 => {
                let d = lower.dim();
                (0..1usize << d)
                    .map(|mask| {
                        Vector::from_fn(d, |i| {
                            if mask >> i & 1 == 1 {
                                upper[i]
                            } else {
                                lower[i]
                            }
                        })
                    })
                    .collect()
            }
            _ => Vec::new(),
        }
    }
}

/// Projection of `x` onto `set` (free-function form of
/// [`FeasibleSet::project_checked`]).
pub fn project(set: &FeasibleSet, x: &Vector) -> Result<Vector> {
    set.project_checked(x)
}
