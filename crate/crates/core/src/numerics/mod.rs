//! Dense vector/matrix kernels and independent numerical oracles.
//!
//! Everything here is pure: functions of their inputs, no shared mutable
//! state. The RNG advances explicit state owned by the caller. Dimensions
//! are expected to stay small (a few hundred at most); all storage is dense.

mod diff;
mod linalg;
mod matrix;
mod rng;
mod vector;

pub use diff::{brute_force_min, finite_diff_gradient, finite_diff_hessian};
pub use linalg::{
    cholesky_factor, cholesky_solve, max_generalized_eig, sym_eigen, CholeskyFactor, SymEigen,
};
pub use matrix::SymMatrix;
pub use rng::{gaussian_sample, SeededRng};
pub use vector::Vector;
