//! Function oracles for every loss family the learners run against, plus
//! feasible sets with exact projection.
//!
//! Each oracle answers value/gradient/Hessian queries and declares the
//! constants its family supports (strong convexity, smoothness, the
//! semi-strong growth constant). Oracles are immutable after construction
//! and safe to share across threads.

mod logistic;
mod quadratic;
mod self_concordant;
mod semi_strong;
mod set;
mod solve;

pub use logistic::LogisticOracle;
pub use quadratic::QuadraticOracle;
pub use self_concordant::SelfConcordantOracle;
pub use semi_strong::SemiStrongOracle;
pub use set::{project, FeasibleSet};
pub use solve::{gradient_bound, minimizer, minimizer_set_project, solve_min_from, solve_min_of};

use crate::numerics::{SymMatrix, Vector};

/// One round's loss: value, gradient, and Hessian queries plus the declared
/// regularity constants.
pub trait FunctionOracle {
    fn dim(&self) -> usize;

    fn value(&self, x: &Vector) -> f64;

    fn gradient(&self, x: &Vector) -> Vector;

    fn hessian(&self, x: &Vector) -> SymMatrix;

    /// Whether `x` lies strictly inside the oracle's domain. Only barrier
    /// oracles restrict this.
    fn in_domain(&self, _x: &Vector) -> bool {
        true
    }

    /// Declared strong-convexity modulus (lower Hessian bound), if any.
    fn strong_convexity(&self) -> Option<f64> {
        None
    }

    /// Declared smoothness constant (upper Hessian bound), if any.
    fn smoothness(&self) -> Option<f64> {
        None
    }

    /// Declared semi-strong growth constant of the quadratic-growth
    /// inequality to the minimizer set, if any.
    fn semi_strong(&self) -> Option<f64> {
        None
    }
}

/// Local Hessian norm `||h||_x = sqrt(h^T grad^2 f(x) h)`.
pub fn hessian_norm<O: FunctionOracle + ?Sized>(oracle: &O, x: &Vector, h: &Vector) -> f64 {
    oracle.hessian(x).quad_form(h).max(0.0).sqrt()
}

/// A loss drawn from any of the supported families. Scenario generators
/// produce homogeneous sequences; the harness stores them behind this enum.
#[derive(Clone, Debug)]
pub enum Oracle {
    Quadratic(QuadraticOracle),
    Logistic(LogisticOracle),
    SemiStrong(SemiStrongOracle),
    SelfConcordant(SelfConcordantOracle),
}

impl FunctionOracle for Oracle {
    fn dim(&self) -> usize {
        match self {
            Oracle::Quadratic(o) => o.dim(),
            Oracle::Logistic(o) => o.dim(),
            Oracle::SemiStrong(o) => o.dim(),
            Oracle::SelfConcordant(o) => o.dim(),
        }
    }

    fn value(&self, x: &Vector) -> f64 {
        match self {
            Oracle::Quadratic(o) => o.value(x),
            Oracle::Logistic(o) => o.value(x),
            Oracle::SemiStrong(o) => o.value(x),
            Oracle::SelfConcordant(o) => o.value(x),
        }
    }

    fn gradient(&self, x: &Vector) -> Vector {
        match self {
            Oracle::Quadratic(o) => o.gradient(x),
            Oracle::Logistic(o) => o.gradient(x),
            Oracle::SemiStrong(o) => o.gradient(x),
            Oracle::SelfConcordant(o) => o.gradient(x),
        }
    }

    fn hessian(&self, x: &Vector) -> SymMatrix {
        match self {
            Oracle::Quadratic(o) => o.hessian(x),
            Oracle::Logistic(o) => o.hessian(x),
            Oracle::SemiStrong(o) => o.hessian(x),
            Oracle::SelfConcordant(o) => o.hessian(x),
        }
    }

    fn in_domain(&self, x: &Vector) -> bool {
        match self {
            Oracle::SelfConcordant(o) => o.in_domain(x),
            _ => true,
        }
    }

    fn strong_convexity(&self) -> Option<f64> {
        match self {
            Oracle::Quadratic(o) => o.strong_convexity(),
            Oracle::Logistic(o) => o.strong_convexity(),
            Oracle::SemiStrong(o) => o.strong_convexity(),
            Oracle::SelfConcordant(o) => o.strong_convexity(),
        }
    }

    fn smoothness(&self) -> Option<f64> {
        match self {
            Oracle::Quadratic(o) => o.smoothness(),
            Oracle::Logistic(o) => o.smoothness(),
            Oracle::SemiStrong(o) => o.smoothness(),
            Oracle::SelfConcordant(o) => o.smoothness(),
        }
    }

    fn semi_strong(&self) -> Option<f64> {
        match self {
            Oracle::SemiStrong(o) => o.semi_strong(),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::SeededRng;

    fn family_instances(rng: &mut SeededRng) -> Vec<(Oracle, FeasibleSet)> {
        let dim = 2 + rng.index(3);
        let eigs: Vec<f64> = (0..dim).map(|_| rng.uniform_in(0.3, 3.0)).collect();
        let quad = QuadraticOracle::from_center(
            crate::numerics::SymMatrix::diag(&eigs),
            &rng.normal_vector(dim).scale(0.4),
        )
        .unwrap();
        let data: Vec<(Vector, f64)> = (0..3)
            .map(|_| {
                (
                    rng.normal_vector(dim),
                    if rng.uniform() < 0.5 { 1.0 } else { -1.0 },
                )
            })
            .collect();
        let logistic = LogisticOracle::new(data, 0.3).unwrap();
        let ball = FeasibleSet::new_ball(Vector::zeros(dim), 2.0).unwrap();
        vec![
            (Oracle::Quadratic(quad), ball.clone()),
            (Oracle::Logistic(logistic), ball),
        ]
    }

    #[test]
    fn midpoint_convexity_spot_check() {
        let mut rng = SeededRng::new(0xC0CA);
        for _ in 0..5 {
            for (oracle, set) in family_instances(&mut rng) {
                for _ in 0..200 {
                    let a = set.sample(&mut rng);
                    let b = set.sample(&mut rng);
                    let mid = (&a + &b).scale(0.5);
                    let lhs = oracle.value(&mid);
                    let rhs = 0.5 * (oracle.value(&a) + oracle.value(&b));
                    assert!(lhs <= rhs + 1e-12, "midpoint {lhs} > average {rhs}");
                }
            }
        }
    }

    #[test]
    fn strong_convexity_growth_from_the_minimizer() {
        // f(x) - f(x*) >= (lambda / 2) ||x - x*||^2 over the set.
        let mut rng = SeededRng::new(0x6081);
        for _ in 0..5 {
            for (oracle, set) in family_instances(&mut rng) {
                let lambda = oracle.strong_convexity().unwrap();
                let xstar = minimizer(&oracle, &set).unwrap();
                let fstar = oracle.value(&xstar);
                for _ in 0..200 {
                    let x = set.sample(&mut rng);
                    let gap = oracle.value(&x) - fstar;
                    let need = 0.5 * lambda * (&x - &xstar).norm_sq();
                    assert!(gap >= need - 1e-9, "growth {gap} < {need}");
                }
            }
        }
    }

    #[test]
    fn projection_is_nonexpansive() {
        let mut rng = SeededRng::new(0x90E);
        let sets = [
            FeasibleSet::new_ball(rng.normal_vector(3), 1.3).unwrap(),
            FeasibleSet::new_box(
                Vector::new(vec![-1.0, -0.5, -2.0]),
                Vector::new(vec![0.5, 1.5, 0.0]),
            )
            .unwrap(),
            FeasibleSet::new_whole_space(3),
        ];
        for set in &sets {
            for _ in 0..1000 {
                let x = rng.normal_vector(3).scale(2.0);
                let y = rng.normal_vector(3).scale(2.0);
                let px = set.project(&x);
                let py = set.project(&y);
                assert!((&px - &py).norm() <= (&x - &y).norm() + 1e-12);
            }
        }
    }

    #[test]
    fn declared_constants_bracket_the_hessian() {
        let mut rng = SeededRng::new(0xB1AC);
        for _ in 0..3 {
            for (oracle, set) in family_instances(&mut rng) {
                let lambda = oracle.strong_convexity().unwrap();
                let smooth = oracle.smoothness().unwrap();
                for _ in 0..100 {
                    let x = set.sample(&mut rng);
                    let eig = crate::numerics::sym_eigen(&oracle.hessian(&x));
                    assert!(eig.min() >= lambda - 1e-9);
                    assert!(eig.max() <= smooth + 1e-9);
                }
            }
        }
    }
}
