//! Crate-wide error type.
//!
//! Every fallible operation in the library returns [`Result`]. Errors carry
//! enough context to diagnose which mathematical precondition failed (a
//! degenerate Hessian, an iterate leaving a barrier domain, a "minimizer"
//! that was not minimal, ...).

/// Errors produced by the solvers, oracles, scenario generators, and harness.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A Cholesky pivot fell below the positive-definiteness threshold.
    #[error("matrix is not positive definite (pivot {pivot:.3e} at index {index})")]
    NotPositiveDefinite { pivot: f64, index: usize },

    /// A function evaluation returned NaN or infinity where a finite value
    /// was required (typically a finite-difference stencil leaving a barrier
    /// domain).
    #[error("non-finite value encountered in {context}")]
    NonFiniteValue { context: &'static str },

    /// The feasible set has no finite bounding box.
    #[error("feasible set is unbounded")]
    UnboundedSet,

    /// Vector or matrix dimensions do not agree.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// An iterative solver hit its iteration cap.
    #[error("no convergence after {iterations} iterations in {context}")]
    NoConvergence { iterations: usize, context: &'static str },

    /// The minimizer set of a semi-strongly convex function is empty over
    /// the feasible set (the minimum is not attained).
    #[error("minimizer set is empty: {0}")]
    EmptyMinimizerSet(String),

    /// No finite gradient bound exists over the requested set.
    #[error("gradient norm is unbounded over this set")]
    Unbounded,

    /// An iterate crossed a barrier constraint. The damped Newton step is
    /// guaranteed to stay inside the domain, so this signals a bug or a
    /// violated drift condition.
    #[error("iterate left the barrier domain")]
    DomainViolation,

    /// A per-round loss gap was negative beyond tolerance, meaning the
    /// stored "minimizer" was not minimal.
    #[error("negative regret gap {gap:.3e} at round {round}")]
    NegativeGap { gap: f64, round: usize },

    /// A constant (G, lambda, L, beta, mu) required by a regret bound is not
    /// available for this oracle family or set.
    #[error("missing constant {0} required by the requested bound")]
    MissingConstant(&'static str),

    /// The drifting minimizer path cannot be kept inside the feasible set.
    #[error("minimizer path cannot stay inside the feasible set: {0}")]
    PathEscapesSet(String),

    /// The semi-strong objective has no attained minimum over the set.
    #[error("minimum is not attained over the feasible set")]
    MinimumNotAttained,

    /// The scenario generator could not satisfy its drift condition even at
    /// zero drift. Treated as a bug signal.
    #[error("drift condition cannot be satisfied: {0}")]
    ConditionUnsatisfiable(String),

    /// A caller-supplied argument violates a documented precondition.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Experiment configuration file could not be parsed or is inconsistent.
    #[error("config error: {0}")]
    Config(String),

    /// I/O failure while writing experiment outputs.
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    /// Wraps a module error with the online-learning round it occurred in.
    #[error("round {round}: {source}")]
    AtRound {
        round: usize,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// Attach the (1-based) round index to an error propagating out of the
    /// experiment loop.
    pub fn at_round(self, round: usize) -> Self {
        Error::AtRound {
            round,
            source: Box::new(self),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
