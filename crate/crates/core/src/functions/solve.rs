//! Minimizer solves and gradient bounds, per oracle family.

use super::{FeasibleSet, FunctionOracle, Oracle, SemiStrongOracle};
use crate::numerics::{cholesky_solve, Vector};
use crate::{Error, Result};

/// Fixed-point tolerance for the projected-gradient solve and decrement
/// tolerance for the Newton solve. Far below every acceptance tolerance so
/// oracle error never pollutes regret measurements.
const SOLVE_TOL: f64 = 1e-10;

const MAX_ITERS: usize = 1_000_000;

/// Projected-gradient refinement with step `eta`, stopping at the fixed
/// point criterion `||x - proj(x - eta grad f(x))|| <= 1e-10`.
pub(crate) fn projected_gradient_min<O: FunctionOracle>(
    oracle: &O,
    set: &FeasibleSet,
    start: &Vector,
    eta: f64,
) -> Result<Vector> {
    let mut x = set.project(start);
    for _ in 0..MAX_ITERS {
        let g = oracle.gradient(&x);
        let next = set.project(&x.add_scaled(-eta, &g));
        let moved = (&next - &x).norm();
        x = next;
        if moved <= SOLVE_TOL {
            return Ok(x);
        }
    }
    Err(Error::NoConvergence {
        iterations: MAX_ITERS,
        context: "projected-gradient minimizer solve",
    })
}

/// Damped Newton refinement until the Newton decrement falls to `1e-10`.
pub(crate) fn damped_newton_min<O: FunctionOracle>(oracle: &O, start: &Vector) -> Result<Vector> {
    let mut z = start.clone();
    for _ in 0..MAX_ITERS {
        let g = oracle.gradient(&z);
        let h = oracle.hessian(&z);
        let step = cholesky_solve(&h, &g)?;
        let decrement = g.dot(&step).max(0.0).sqrt();
        if decrement <= SOLVE_TOL {
            return Ok(z);
        }
        z = z.add_scaled(-1.0 / (1.0 + decrement), &step);
        if !oracle.in_domain(&z) {
            return Err(Error::DomainViolation);
        }
    }
    Err(Error::NoConvergence {
        iterations: MAX_ITERS,
        context: "damped Newton minimizer solve",
    })
}

/// Damped-Newton minimizer of a barrier oracle from its witness point.
pub fn solve_min_of(oracle: &super::SelfConcordantOracle) -> Result<Vector> {
    damped_newton_min(oracle, oracle.witness())
}

/// Damped-Newton minimizer of a barrier oracle from a caller-supplied
/// strictly feasible start (falls back to the witness otherwise).
pub fn solve_min_from(oracle: &super::SelfConcordantOracle, start: &Vector) -> Result<Vector> {
    if oracle.in_domain(start) {
        damped_newton_min(oracle, start)
    } else {
        damped_newton_min(oracle, oracle.witness())
    }
}

/// A minimizer of the oracle over `set`.
///
/// Closed form for positive-definite quadratics on the whole space,
/// projected gradient for the other smooth families, damped Newton for
/// barrier oracles (whose own open domain replaces `set`). Semi-strong
/// oracles return a feasible representative of their minimizer set.
pub fn minimizer(oracle: &Oracle, set: &FeasibleSet) -> Result<Vector> {
    match oracle {
        Oracle::Quadratic(q) => {
            if !set.is_bounded() {
                return q.unconstrained_minimizer();
            }
            let eta = 1.0 / q.smoothness().ok_or(Error::MissingConstant("L"))?;
            let start = match q.unconstrained_minimizer() {
                Ok(x) => set.project(&x),
                Err(_) => set.center(),
            };
            projected_gradient_min(q, set, &start, eta)
        }
        Oracle::Logistic(l) => {
            let eta = 1.0 / l.smoothness().ok_or(Error::MissingConstant("L"))?;
            projected_gradient_min(l, set, &set.center(), eta)
        }
        Oracle::SemiStrong(s) => s.project_minimizer_set(&set.center()),
        Oracle::SelfConcordant(s) => damped_newton_min(s, s.witness()),
    }
}

/// Exact projection of `x` onto the minimizer set of a semi-strong oracle.
/// `set` must be the region the oracle was constructed over.
pub fn minimizer_set_project(
    oracle: &SemiStrongOracle,
    set: &FeasibleSet,
    x: &Vector,
) -> Result<Vector> {
    if set != oracle.feasible_set() {
        return Err(Error::InvalidArgument(
            "minimizer_set_project called with a different set than the oracle was built over"
                .into(),
        ));
    }
    oracle.project_minimizer_set(x)
}

/// A valid bound on `||grad f||` over `set`.
///
/// Quadratic-form families use the exact vertex maximum on boxes (the
/// gradient norm is convex, so it peaks at an extreme point) and the
/// operator-norm bound `||grad f(center)|| + lambda_max(H) r` on balls.
/// The logistic bound is `mean ||z_i|| + reg * max ||x||`. Barrier
/// gradients are unbounded near the boundary.
pub fn gradient_bound(oracle: &Oracle, set: &FeasibleSet) -> Result<f64> {
    match oracle {
        Oracle::Quadratic(q) => {
            let hessian_max = 2.0 * q.eig_max();
            affine_gradient_bound(q, hessian_max, set)
        }
        Oracle::SemiStrong(s) => {
            let hessian_max = s.smoothness().unwrap_or(0.0);
            affine_gradient_bound(s, hessian_max, set)
        }
        Oracle::Logistic(l) => {
            let radius = set.max_norm().ok_or(Error::Unbounded)?;
            Ok(l.mean_instance_norm() + l.regularizer() * radius)
        }
        Oracle::SelfConcordant(_) => Err(Error::Unbounded),
    }
}

/// Bound for oracles with affine gradients `x -> H x + k`.
fn affine_gradient_bound<O: FunctionOracle>(
    oracle: &O,
    hessian_max: f64,
    set: &FeasibleSet,
) -> Result<f64> {
    let constant_gradient = hessian_max <= 1e-12;
    if constant_gradient {
        return Ok(oracle.gradient(&Vector::zeros(oracle.dim())).norm());
    }
    if !set.is_bounded() {
        return Err(Error::Unbounded);
    }
    let vertices = set.box_vertices();
    if !vertices.is_empty() {
        return Ok(vertices
            .iter()
            .map(|v| oracle.gradient(v).norm())
            .fold(0.0, f64::max));
    }
    // Ball, or a box too large to enumerate: anchor at the center.
    let center = set.center();
    let spread = match set {
        FeasibleSet::Ball { radius, .. } => *radius,
        _ => {
            let (lo, hi) = set.bounding_box().ok_or(Error::Unbounded)?;
            0.5 * (&hi - &lo).norm()
        }
    };
    Ok(oracle.gradient(&center).norm() + hessian_max * spread)
}
