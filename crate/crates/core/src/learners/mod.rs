//! The three online learners and their inner-iteration-count formulas.
//!
//! Round protocol: a learner commits its iterate, the round's loss is
//! revealed, and only then do the inner updates run, producing the next
//! round's iterate.

use crate::functions::{FeasibleSet, FunctionOracle};
use crate::numerics::{cholesky_solve, Vector};
use crate::{Error, Result};

const LN_4: f64 = 1.386_294_361_119_890_6;

/// Hard cap on warm-start Newton iterations.
const WARMSTART_CAP: usize = 10_000;

/// Which update rule the learner applies each round.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LearnerKind {
    /// One projected gradient step per round.
    Ogd,
    /// `K` projected gradient steps on the revealed loss per round.
    Omgd,
    /// `K` damped Newton steps on the revealed loss per round.
    Omnu,
}

impl LearnerKind {
    pub fn name(self) -> &'static str {
        match self {
            LearnerKind::Ogd => "ogd",
            LearnerKind::Omgd => "omgd",
            LearnerKind::Omnu => "omnu",
        }
    }
}

/// Learner variant plus its step size and inner iteration budget.
#[derive(Clone, Debug)]
pub struct LearnerConfig {
    pub kind: LearnerKind,
    /// Step size; ignored by the Newton learner.
    pub eta: f64,
    /// Inner iterations per round.
    pub k_inner: usize,
    /// Round-1 decrement target for the Newton warm start, when resolved.
    pub warmstart_threshold: Option<f64>,
}

impl LearnerConfig {
    pub fn validate(&self) -> Result<()> {
        if self.kind != LearnerKind::Omnu && !(self.eta > 0.0 && self.eta.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "step size must be positive, got {}",
                self.eta
            )));
        }
        if self.k_inner == 0 {
            return Err(Error::InvalidArgument(
                "inner iteration count must be >= 1".into(),
            ));
        }
        Ok(())
    }
}

/// A learner mid-game: its configuration, current iterate, round counter,
/// and the diagnostics of the most recent round's inner loop.
#[derive(Clone, Debug)]
pub struct LearnerState {
    pub config: LearnerConfig,
    pub x: Vector,
    pub round: usize,
    /// Per-inner-step diagnostics for the last round: distance moved for
    /// the gradient learners, Newton decrement for the Newton learner.
    pub inner_trace: Vec<f64>,
}

impl LearnerState {
    pub fn new(config: LearnerConfig, x0: Vector) -> Result<Self> {
        config.validate()?;
        Ok(Self {
            config,
            x: x0,
            round: 0,
            inner_trace: Vec::new(),
        })
    }
}

/// One projected gradient step `x <- proj(x - eta grad f(x))`.
pub fn ogd_round<'a, O: FunctionOracle>(
    state: &'a mut LearnerState,
    oracle: &O,
    set: &FeasibleSet,
) -> Result<&'a Vector> {
    let g = oracle.gradient(&state.x);
    let next = set.project(&state.x.add_scaled(-state.config.eta, &g));
    state.inner_trace = vec![(&next - &state.x).norm()];
    state.x = next;
    state.round += 1;
    Ok(&state.x)
}

/// `K` projected gradient steps on the revealed loss, starting from the
/// committed iterate. The trace records the distance moved per inner step.
pub fn omgd_round<'a, O: FunctionOracle>(
    state: &'a mut LearnerState,
    oracle: &O,
    set: &FeasibleSet,
) -> Result<&'a Vector> {
    let eta = state.config.eta;
    let mut z = state.x.clone();
    let mut trace = Vec::with_capacity(state.config.k_inner);
    for _ in 0..state.config.k_inner {
        let g = oracle.gradient(&z);
        let next = set.project(&z.add_scaled(-eta, &g));
        trace.push((&next - &z).norm());
        z = next;
    }
    state.inner_trace = trace;
    state.x = z;
    state.round += 1;
    Ok(&state.x)
}

/// Newton decrement `lambda(z) = sqrt(grad^T [hess]^{-1} grad)`.
pub fn newton_decrement<O: FunctionOracle>(oracle: &O, z: &Vector) -> Result<f64> {
    let g = oracle.gradient(z);
    let step = cholesky_solve(&oracle.hessian(z), &g)?;
    Ok(g.dot(&step).max(0.0).sqrt())
}

/// One damped Newton step `z - [hess]^{-1} grad / (1 + lambda(z))`.
///
/// The step length in the local Hessian norm is `lambda/(1 + lambda) < 1`,
/// so the new point stays inside the Dikin ellipsoid and hence the domain;
/// a crossing is reported as [`Error::DomainViolation`] (bug signal).
pub fn damped_newton_step<O: FunctionOracle>(oracle: &O, z: &Vector) -> Result<Vector> {
    let g = oracle.gradient(z);
    let step = cholesky_solve(&oracle.hessian(z), &g)?;
    let decrement = g.dot(&step).max(0.0).sqrt();
    let next = z.add_scaled(-1.0 / (1.0 + decrement), &step);
    if !oracle.in_domain(&next) {
        return Err(Error::DomainViolation);
    }
    Ok(next)
}

/// `K` damped Newton steps on the revealed loss. The trace records the
/// decrement at each inner iterate before it steps.
pub fn omnu_round<'a, O: FunctionOracle>(
    state: &'a mut LearnerState,
    oracle: &O,
) -> Result<&'a Vector> {
    if !oracle.in_domain(&state.x) {
        return Err(Error::DomainViolation);
    }
    let mut z = state.x.clone();
    let mut trace = Vec::with_capacity(state.config.k_inner);
    for _ in 0..state.config.k_inner {
        let g = oracle.gradient(&z);
        let step = cholesky_solve(&oracle.hessian(&z), &g)?;
        let decrement = g.dot(&step).max(0.0).sqrt();
        trace.push(decrement);
        z = z.add_scaled(-1.0 / (1.0 + decrement), &step);
        if !oracle.in_domain(&z) {
            return Err(Error::DomainViolation);
        }
    }
    state.inner_trace = trace;
    state.x = z;
    state.round += 1;
    Ok(&state.x)
}

/// Advance one round with the configured update rule.
pub fn advance<'a, O: FunctionOracle>(
    state: &'a mut LearnerState,
    oracle: &O,
    set: &FeasibleSet,
) -> Result<&'a Vector> {
    match state.config.kind {
        LearnerKind::Ogd => ogd_round(state, oracle, set),
        LearnerKind::Omgd => omgd_round(state, oracle, set),
        LearnerKind::Omnu => omnu_round(state, oracle),
    }
}

/// Inner iterations guaranteeing the per-round squared-distance contraction
/// `(1 - 2 lambda / (1/eta + lambda))^K <= 1/4` for strongly convex losses:
/// `K = ceil((1/eta + lambda) / (2 lambda) ln 4)`.
///
/// ```
/// use dynregret::learners::k_strongly;
/// assert_eq!(k_strongly(1.0, 1.0), 2);
/// // A smaller modulus needs proportionally more inner steps.
/// assert_eq!(k_strongly(1.0, 0.1), 8);
/// ```
pub fn k_strongly(eta: f64, lambda: f64) -> usize {
    debug_assert!(eta > 0.0 && lambda > 0.0);
    (((1.0 / eta + lambda) / (2.0 * lambda) * LN_4).ceil() as usize).max(1)
}

/// Semi-strong analogue `K = ceil((1/eta + beta) / beta ln 4)`, ensuring
/// `(1 - beta / (1/eta + beta))^K <= 1/4`.
pub fn k_semistrong(eta: f64, beta: f64) -> usize {
    debug_assert!(eta > 0.0 && beta > 0.0);
    (((1.0 / eta + beta) / beta * LN_4).ceil() as usize).max(1)
}

/// Newton inner iterations `K = ceil(log_4(16 mu))`, computed as the least
/// `K` with `8 mu / 4^K <= 1/2` so the guarantee is exact at integer
/// boundaries. `mu < 1` is clamped to 1.
pub fn k_selfconcordant(mu: f64) -> usize {
    let mu = mu.max(1.0);
    let mut k = 1usize;
    let mut pow4 = 4.0;
    while 8.0 * mu / pow4 > 0.5 {
        k += 1;
        pow4 *= 4.0;
    }
    k
}

/// Round-1 warm start: damped Newton on the first loss until the decrement
/// certifies `||z - x*||_{x*}^2 <= 1/(144 mu)` (through the bound
/// `||z - x*||_{x*} <= lambda/(1 - lambda)`), capped at `10^4` iterations.
/// Returns the warm iterate and the number of Newton steps spent.
pub fn omnu_warmstart<O: FunctionOracle>(
    oracle: &O,
    x1: &Vector,
    mu: f64,
) -> Result<(Vector, usize)> {
    let threshold = warmstart_decrement_target(mu);
    let mut z = x1.clone();
    for used in 0..WARMSTART_CAP {
        if newton_decrement(oracle, &z)? <= threshold {
            return Ok((z, used));
        }
        z = damped_newton_step(oracle, &z)?;
    }
    Err(Error::NoConvergence {
        iterations: WARMSTART_CAP,
        context: "Newton warm start",
    })
}

/// The decrement level at which `lambda/(1 - lambda) <= 1/sqrt(144 mu)`.
pub fn warmstart_decrement_target(mu: f64) -> f64 {
    let s = 1.0 / (144.0 * mu.max(1.0)).sqrt();
    s / (1.0 + s)
}
