//! Online convex optimization with multiple gradient or Newton queries per
//! round, and the machinery to measure how well the resulting iterates
//! track a drifting sequence of per-round minimizers.
//!
//! The crate provides:
//!
//! - three online learners: projected online gradient descent (one step per
//!   round), online multiple gradient descent (several projected steps on
//!   each revealed loss), and online multiple Newton update (several damped
//!   Newton steps);
//! - function oracles for strongly convex quadratics, regularized logistic
//!   losses, semi-strongly convex quadratic forms with non-unique minima,
//!   and self-concordant barrier losses;
//! - dynamic-regret accounting together with the regularities that control
//!   it: path-length, squared path-length, their projection-based and
//!   Hessian-weighted variants, functional and gradient variation, and the
//!   consecutive-Hessian curvature ratio;
//! - evaluators for the known regret bounds of each learner/function-class
//!   pairing, with per-bound satisfaction flags;
//! - seeded scenario generators realizing drifting-minimizer regimes, and a
//!   CLI harness that runs experiments, property suites, and sweeps with
//!   reproducible output.
//!
//! # Example
//!
//! Run the multi-step gradient learner against a drifting quadratic and
//! check its regret against the squared-path bound:
//!
//! ```
//! use dynregret::harness::{config, runner};
//!
//! let text = "\
//! [scenario]
//! kind = drifting_quadratic
//! rounds = 200
//! dim = 3
//! tau = 0.5
//! seed = 42
//! set = ball 1.0
//!
//! [learner]
//! variant = omgd
//! eta = auto
//! k = auto
//! ";
//! let cfg = config::parse(text, None).unwrap();
//! let (records, summary) = runner::run(&cfg).unwrap();
//! assert_eq!(records.len(), 201);
//! let bounds = summary.bounds.unwrap();
//! assert!(bounds.all_satisfied());
//! assert!(summary.regret <= bounds.min_bound().unwrap() + 1e-9);
//! ```

pub mod error;
pub mod functions;
pub mod harness;
pub mod learners;
pub mod numerics;
pub mod regularity;
pub mod scenarios;

pub use error::{Error, Result};
