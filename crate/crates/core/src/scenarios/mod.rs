//! Seeded generators of loss sequences, one per drift regime.
//!
//! A generated [`Scenario`] carries the oracles, a representative minimizer
//! per round, the sequence-level constants the regret bounds need, and a
//! recommended starting iterate. Everything is a deterministic function of
//! the configuration, including its seed.

use crate::functions::{
    minimizer, FeasibleSet, FunctionOracle, LogisticOracle, Oracle, QuadraticOracle,
    SelfConcordantOracle, SemiStrongOracle,
};
use crate::numerics::{gaussian_sample, SeededRng, SymMatrix, Vector};
use crate::regularity::FunctionClass;
use crate::{Error, Result};

/// The drift regimes the generators realize.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScenarioKind {
    /// Fixed (or per-round) quadratic whose minimizer moves exactly
    /// `T^{-tau}` per round along a reflected random walk.
    DriftingQuadratic,
    /// Independent rounds `f_t(x) = 2 ||x - tau eps_t||^2` with Gaussian
    /// `eps_t`; the regret lower-bound construction.
    LowerBoundAdversary,
    /// Regularized logistic losses over per-round mini-batches whose true
    /// separator rotates slowly.
    MiniBatchLogistic,
    /// Rank-deficient quadratic forms whose affine minimizer sets shift by
    /// a fixed offset per round.
    SemiStrongDrift,
    /// Quadratic-plus-log-barrier losses whose minimizers drift subject to
    /// the per-round Hessian-norm condition.
    SelfConcordantDrift,
}

impl ScenarioKind {
    pub fn name(self) -> &'static str {
        match self {
            ScenarioKind::DriftingQuadratic => "drifting_quadratic",
            ScenarioKind::LowerBoundAdversary => "lowerbound_adversary",
            ScenarioKind::MiniBatchLogistic => "minibatch_logistic",
            ScenarioKind::SemiStrongDrift => "semistrong_drift",
            ScenarioKind::SelfConcordantDrift => "selfconcordant_drift",
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        Ok(match name {
            "drifting_quadratic" => ScenarioKind::DriftingQuadratic,
            "lowerbound_adversary" => ScenarioKind::LowerBoundAdversary,
            "minibatch_logistic" => ScenarioKind::MiniBatchLogistic,
            "semistrong_drift" => ScenarioKind::SemiStrongDrift,
            "selfconcordant_drift" => ScenarioKind::SelfConcordantDrift,
            other => {
                return Err(Error::Config(format!("unknown scenario kind `{other}`")));
            }
        })
    }
}

/// Per-kind knobs beyond the shared fields. Unused entries are ignored.
#[derive(Clone, Debug)]
pub struct ScenarioExtras {
    /// Condition number of the quadratic curvature matrix.
    pub cond: f64,
    /// Redraw the curvature matrix every round (drifting quadratic).
    pub per_round_hessian: bool,
    /// Mini-batch size.
    pub batch: usize,
    /// Logistic regularizer.
    pub reg: f64,
    /// Redraw the batch every round; freezing it makes all rounds identical.
    pub refresh_batch: bool,
    /// Rank of the factor matrix in the semi-strong construction.
    pub rank: usize,
    /// Halfwidth of the log-barrier box.
    pub barrier_halfwidth: f64,
}

impl Default for ScenarioExtras {
    fn default() -> Self {
        Self {
            cond: 4.0,
            per_round_hessian: false,
            batch: 16,
            reg: 0.1,
            refresh_batch: true,
            rank: 1,
            barrier_halfwidth: 2.0,
        }
    }
}

/// Full description of a generated sequence.
#[derive(Clone, Debug)]
pub struct ScenarioConfig {
    pub kind: ScenarioKind,
    /// Drift horizon `T`. The drifting-quadratic generator emits `T + 1`
    /// losses whose consecutive minimizers are exactly `T^{-tau}` apart;
    /// the other kinds emit `T` losses.
    pub rounds: usize,
    pub dim: usize,
    /// Drift exponent (drifting quadratic), noise scale (adversary), or
    /// per-round drift magnitude (the remaining kinds).
    pub tau: f64,
    pub seed: u64,
    pub set: FeasibleSet,
    pub extras: ScenarioExtras,
}

impl ScenarioConfig {
    fn validate(&self) -> Result<()> {
        if self.rounds == 0 {
            return Err(Error::InvalidArgument("rounds must be >= 1".into()));
        }
        if self.dim == 0 {
            return Err(Error::InvalidArgument("dimension must be >= 1".into()));
        }
        if self.set.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: self.set.dim(),
            });
        }
        if !self.tau.is_finite() || self.tau < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "tau must be finite and >= 0, got {}",
                self.tau
            )));
        }
        Ok(())
    }
}

/// A generated loss sequence with everything the harness needs to run and
/// score an experiment against it.
#[derive(Clone, Debug)]
pub struct Scenario {
    pub kind: ScenarioKind,
    pub oracles: Vec<Oracle>,
    pub set: FeasibleSet,
    /// One representative minimizer per round (exact for the constructive
    /// kinds, solved to the oracle tolerance otherwise).
    pub minimizers: Vec<Vector>,
    /// Recommended first iterate; feasible for the first loss.
    pub start: Vector,
    pub class: FunctionClass,
    /// Sequence-level constants (worst case over rounds).
    pub lambda: Option<f64>,
    pub smooth: Option<f64>,
    pub beta: Option<f64>,
    /// Realized curvature ratio, when computed by the generator.
    pub mu: Option<f64>,
    /// Per-round Hessian-norm squared drift of the minimizers (entry 0 is
    /// zero); populated by the self-concordant generator, which enforces
    /// each entry at or below `0.9/144`.
    pub drift_sq_hnorm: Vec<f64>,
}

impl Scenario {
    pub fn rounds(&self) -> usize {
        self.oracles.len()
    }
}

/// Generate the sequence described by `config`.
pub fn generate(config: &ScenarioConfig) -> Result<Scenario> {
    config.validate()?;
    match config.kind {
        ScenarioKind::DriftingQuadratic => drifting_quadratic(config),
        ScenarioKind::LowerBoundAdversary => lowerbound_adversary(config),
        ScenarioKind::MiniBatchLogistic => minibatch_logistic(config),
        ScenarioKind::SemiStrongDrift => semistrong_drift(config),
        ScenarioKind::SelfConcordantDrift => selfconcordant_drift(config),
    }
}

/// Sample a point of `set` keeping `margin` distance from its boundary.
fn sample_with_margin(set: &FeasibleSet, margin: f64, rng: &mut SeededRng) -> Result<Vector> {
    match set {
        FeasibleSet::WholeSpace { dim } => Ok(rng.normal_vector(*dim)),
        FeasibleSet::Ball { center, radius } => {
            let r = radius - margin;
            if r <= 0.0 {
                return Err(Error::PathEscapesSet(format!(
                    "margin {margin} exceeds ball radius {radius}"
                )));
            }
            let shrunk = FeasibleSet::new_ball(center.clone(), r)?;
            Ok(shrunk.sample(rng))
        }
        FeasibleSet::Box { lower, upper } => {
            let d = lower.dim();
            let mut lo = Vec::with_capacity(d);
            let mut hi = Vec::with_capacity(d);
            for i in 0..d {
                lo.push(lower[i] + margin);
                hi.push(upper[i] - margin);
                if !(lo[i] < hi[i]) {
                    return Err(Error::PathEscapesSet(format!(
                        "margin {margin} exceeds box halfwidth on coordinate {i}"
                    )));
                }
            }
            let shrunk = FeasibleSet::new_box(Vector::new(lo), Vector::new(hi))?;
            Ok(shrunk.sample(rng))
        }
    }
}

/// Advance `point` by exactly `step` in a direction close to `dir`,
/// staying at least `margin` inside `set`. The direction is reflected at
/// the shrunken boundary; if the reflection still exits, the step points
/// at the set center instead (always feasible once the inradius admits the
/// margin plus the step). Returns the new point and the direction used.
fn reflected_step(
    set: &FeasibleSet,
    point: &Vector,
    dir: &Vector,
    step: f64,
    margin: f64,
) -> Result<(Vector, Vector)> {
    let fits = |cand: &Vector| set.boundary_margin(cand) >= margin - 1e-12;
    let forward = point.add_scaled(step, dir);
    if fits(&forward) {
        return Ok((forward, dir.clone()));
    }
    // Reflect against the nearby boundary.
    let reflected = match set {
        FeasibleSet::WholeSpace { .. } => dir.clone(),
        FeasibleSet::Ball { center, .. } => {
            match (point - center).normalized() {
                Some(normal) => dir.add_scaled(-2.0 * dir.dot(&normal), &normal),
                None => dir.clone(),
            }
        }
        FeasibleSet::Box { lower, upper } => {
            let mut flipped = dir.clone();
            for i in 0..dir.dim() {
                let cand = point[i] + step * dir[i];
                if cand > upper[i] - margin || cand < lower[i] + margin {
                    flipped[i] = -flipped[i];
                }
            }
            flipped
        }
    };
    let bounced = point.add_scaled(step, &reflected);
    if fits(&bounced) {
        return Ok((bounced, reflected));
    }
    // Point at the center; feasible whenever inradius >= margin + step.
    let inward = (&set.center() - point)
        .normalized()
        .unwrap_or_else(|| reflected.clone());
    let centered = point.add_scaled(step, &inward);
    if fits(&centered) {
        return Ok((centered, inward));
    }
    Err(Error::PathEscapesSet(format!(
        "cannot place a step of {step} while keeping margin {margin}"
    )))
}

/// Seeded random rotation: Gram-Schmidt on a Gaussian matrix.
fn random_rotation(dim: usize, rng: &mut SeededRng) -> Vec<Vector> {
    let mut basis: Vec<Vector> = Vec::with_capacity(dim);
    while basis.len() < dim {
        let mut v = rng.normal_vector(dim);
        for b in &basis {
            v = v.add_scaled(-v.dot(b), b);
        }
        if let Some(u) = v.normalized() {
            basis.push(u);
        }
    }
    basis
}

/// Symmetric matrix with the given eigenvalues in a seeded random frame.
fn random_spectrum_matrix(eigs: &[f64], rng: &mut SeededRng) -> SymMatrix {
    let d = eigs.len();
    let frame = random_rotation(d, rng);
    let mut m = SymMatrix::zeros(d);
    for (val, q) in eigs.iter().zip(&frame) {
        m.add_scaled_outer(*val, q);
    }
    m
}

fn drifting_quadratic(config: &ScenarioConfig) -> Result<Scenario> {
    let d = config.dim;
    let t_horizon = config.rounds;
    let step = (t_horizon as f64).powf(-config.tau);
    let margin = step;
    if config.set.is_bounded() && config.set.inradius() < 2.0 * step {
        return Err(Error::PathEscapesSet(format!(
            "set inradius {} cannot host steps of {step} with equal margin",
            config.set.inradius()
        )));
    }
    let mut rng = SeededRng::new(config.seed);
    let cond = config.extras.cond.max(1.0);

    let spectrum: Vec<f64> = (0..d)
        .map(|i| {
            if d == 1 {
                1.0
            } else {
                1.0 + (cond - 1.0) * i as f64 / (d - 1) as f64
            }
        })
        .collect();
    let fixed_a = random_spectrum_matrix(&spectrum, &mut rng);

    let mut centers = Vec::with_capacity(t_horizon + 1);
    centers.push(sample_with_margin(&config.set, margin, &mut rng)?);
    let mut dir = rng
        .normal_vector(d)
        .normalized()
        .unwrap_or_else(|| Vector::basis(d, 0));
    for _ in 0..t_horizon {
        let (next, used_dir) =
            reflected_step(&config.set, centers.last().unwrap(), &dir, step, margin)?;
        centers.push(next);
        dir = used_dir;
    }

    let mut oracles = Vec::with_capacity(centers.len());
    for center in &centers {
        let a = if config.extras.per_round_hessian {
            let eigs: Vec<f64> = (0..d).map(|_| rng.uniform_in(1.0, cond)).collect();
            random_spectrum_matrix(&eigs, &mut rng)
        } else {
            fixed_a.clone()
        };
        oracles.push(QuadraticOracle::from_center(a, center)?);
    }

    let lambda = oracles
        .iter()
        .filter_map(|o| o.strong_convexity())
        .fold(f64::INFINITY, f64::min);
    let smooth = oracles
        .iter()
        .filter_map(|o| o.smoothness())
        .fold(0.0_f64, f64::max);
    let start = sample_with_margin(&config.set, 0.0, &mut rng.substream(1))?;
    Ok(Scenario {
        kind: config.kind,
        oracles: oracles.into_iter().map(Oracle::Quadratic).collect(),
        set: config.set.clone(),
        minimizers: centers,
        start,
        class: FunctionClass::StronglyConvex,
        lambda: Some(lambda),
        smooth: Some(smooth),
        beta: None,
        mu: None,
        drift_sq_hnorm: Vec::new(),
    })
}

fn lowerbound_adversary(config: &ScenarioConfig) -> Result<Scenario> {
    let d = config.dim;
    let mut rng = SeededRng::new(config.seed);
    let curvature = SymMatrix::identity(d).scale(2.0);
    let mut oracles = Vec::with_capacity(config.rounds);
    let mut minimizers = Vec::with_capacity(config.rounds);
    for _ in 0..config.rounds {
        let eps = gaussian_sample(&mut rng, d);
        let center = eps.scale(config.tau);
        oracles.push(Oracle::Quadratic(QuadraticOracle::from_center(
            curvature.clone(),
            &center,
        )?));
        minimizers.push(center);
    }
    let start = config.set.center();
    Ok(Scenario {
        kind: config.kind,
        oracles,
        set: config.set.clone(),
        minimizers,
        start,
        class: FunctionClass::StronglyConvex,
        lambda: Some(4.0),
        smooth: Some(4.0),
        beta: None,
        mu: None,
        drift_sq_hnorm: Vec::new(),
    })
}

fn minibatch_logistic(config: &ScenarioConfig) -> Result<Scenario> {
    let d = config.dim;
    let m = config.extras.batch.max(1);
    let mut rng = SeededRng::new(config.seed);
    let mut separator = rng
        .normal_vector(d)
        .normalized()
        .unwrap_or_else(|| Vector::basis(d, 0));

    let draw_batch = |rng: &mut SeededRng, w: &Vector| -> Vec<(Vector, f64)> {
        (0..m)
            .map(|_| {
                let z = rng.normal_vector(d);
                let y = if w.dot(&z) >= 0.0 { 1.0 } else { -1.0 };
                (z, y)
            })
            .collect()
    };

    let frozen = if config.extras.refresh_batch {
        None
    } else {
        Some(draw_batch(&mut rng, &separator))
    };

    let mut oracles = Vec::with_capacity(config.rounds);
    for _ in 0..config.rounds {
        let batch = match &frozen {
            Some(b) => b.clone(),
            None => draw_batch(&mut rng, &separator),
        };
        oracles.push(LogisticOracle::new(batch, config.extras.reg)?);
        if config.tau > 0.0 {
            separator = separator
                .add_scaled(config.tau, &rng.normal_vector(d))
                .normalized()
                .unwrap_or(separator);
        }
    }

    let smooth = oracles
        .iter()
        .filter_map(|o| o.smoothness())
        .fold(0.0_f64, f64::max);
    let wrapped: Vec<Oracle> = oracles.into_iter().map(Oracle::Logistic).collect();
    let minimizers: Vec<Vector> = wrapped
        .iter()
        .map(|o| minimizer(o, &config.set))
        .collect::<Result<_>>()?;
    let start = config.set.project(&Vector::zeros(d));
    Ok(Scenario {
        kind: config.kind,
        oracles: wrapped,
        set: config.set.clone(),
        minimizers,
        start,
        class: FunctionClass::StronglyConvex,
        lambda: Some(config.extras.reg),
        smooth: Some(smooth),
        beta: None,
        mu: None,
        drift_sq_hnorm: Vec::new(),
    })
}

fn semistrong_drift(config: &ScenarioConfig) -> Result<Scenario> {
    let d = config.dim;
    let rank = config.extras.rank;
    if rank == 0 || rank >= d {
        return Err(Error::InvalidArgument(format!(
            "semi-strong drift needs 0 < rank < dim, got rank {rank} in dimension {d}"
        )));
    }
    if matches!(config.set, FeasibleSet::Ball { .. }) {
        return Err(Error::InvalidArgument(
            "semi-strong drift supports whole-space or box sets".into(),
        ));
    }
    let delta = config.tau;
    let mut rng = SeededRng::new(config.seed);

    // Axis-aligned factor rows: seeded coordinate choice and row scales.
    // This pins the minimizer sets to parallel axis-aligned affine sets, so
    // the per-round projection displacement is exactly `delta` everywhere.
    let mut coords: Vec<usize> = (0..d).collect();
    for i in (1..d).rev() {
        let j = rng.index(i + 1);
        coords.swap(i, j);
    }
    let pinned = &coords[..rank];
    let e_rows: Vec<Vector> = pinned
        .iter()
        .map(|&c| Vector::basis(d, c).scale(rng.uniform_in(0.8, 1.2)))
        .collect();
    let inner_eigs: Vec<f64> = (0..rank).map(|_| rng.uniform_in(1.0, 2.0)).collect();
    let inner = random_spectrum_matrix(&inner_eigs, &mut rng);

    // The pinned coordinates of the minimizer set walk inside the set with
    // margin `delta`; unpinned coordinates of the particular solution are 0.
    let margin = if config.set.is_bounded() { delta } else { 0.0 };
    if config.set.is_bounded() && config.set.inradius() < 2.0 * delta.max(1e-12) {
        return Err(Error::PathEscapesSet(
            "set too small for the requested drift".into(),
        ));
    }
    let seed_point = sample_with_margin(&config.set, margin, &mut rng)?;
    let mut anchor = Vector::zeros(d);
    for &c in pinned {
        anchor[c] = seed_point[c];
    }

    // Hessian of every round: H = 2 E^T G E, fixed across rounds.
    let m_rows: Vec<Vector> = (0..rank)
        .map(|k| {
            let mut acc = Vector::zeros(d);
            for l in 0..rank {
                acc = acc.add_scaled(inner.get(k, l), &e_rows[l]);
            }
            acc
        })
        .collect();
    let h = SymMatrix::from_fn_symmetric(d, |i, j| {
        2.0 * (0..rank).map(|k| e_rows[k][i] * m_rows[k][j]).sum::<f64>()
    });

    let pinned_dir = |rng: &mut SeededRng| -> Vector {
        let mut v = Vector::zeros(d);
        loop {
            for &c in pinned {
                v[c] = rng.normal();
            }
            if let Some(u) = v.normalized() {
                return u;
            }
        }
    };

    let mut oracles = Vec::with_capacity(config.rounds);
    let mut minimizers = Vec::with_capacity(config.rounds);
    let mut dir = pinned_dir(&mut rng);
    for t in 0..config.rounds {
        let b = h.matvec(&anchor).scale(-1.0);
        let oracle = SemiStrongOracle::new(
            e_rows.clone(),
            inner.clone(),
            b,
            config.set.clone(),
            config.seed ^ (t as u64).wrapping_mul(0x9E37_79B9),
        )?;
        minimizers.push(oracle.representative_minimizer().clone());
        oracles.push(Oracle::SemiStrong(oracle));
        if t + 1 < config.rounds && delta > 0.0 {
            let (next, used) = reflected_step(&config.set, &anchor, &dir, delta, margin)?;
            // Keep the walk inside the pinned subspace.
            let mut projected = Vector::zeros(d);
            for &c in pinned {
                projected[c] = next[c];
            }
            let correction = (&projected - &anchor).norm();
            if (correction - delta).abs() > 1e-9 * delta.max(1.0) {
                // The reflection left the pinned subspace (it never should:
                // both the direction and the walls are axis-aligned).
                return Err(Error::PathEscapesSet(
                    "reflected step left the pinned subspace".into(),
                ));
            }
            anchor = projected;
            dir = used;
        }
    }

    let beta = oracles
        .iter()
        .filter_map(|o| o.semi_strong())
        .fold(f64::INFINITY, f64::min);
    let smooth = oracles
        .iter()
        .filter_map(|o| o.smoothness())
        .fold(0.0_f64, f64::max);
    let start = sample_with_margin(&config.set, 0.0, &mut rng.substream(2))?;
    Ok(Scenario {
        kind: config.kind,
        oracles,
        set: config.set.clone(),
        minimizers,
        start,
        class: FunctionClass::SemiStrong,
        lambda: None,
        smooth: Some(smooth),
        beta: Some(beta),
        mu: None,
        drift_sq_hnorm: Vec::new(),
    })
}

fn selfconcordant_drift(config: &ScenarioConfig) -> Result<Scenario> {
    let d = config.dim;
    let w = config.extras.barrier_halfwidth;
    if !(w > 0.0) {
        return Err(Error::InvalidArgument(
            "barrier halfwidth must be positive".into(),
        ));
    }
    let mut rng = SeededRng::new(config.seed);
    let eigs: Vec<f64> = (0..d).map(|_| rng.uniform_in(0.5, 1.5)).collect();
    let a = random_spectrum_matrix(&eigs, &mut rng);
    let lower = Vector::from_fn(d, |_| -w);
    let upper = Vector::from_fn(d, |_| w);
    let barriers = SelfConcordantOracle::box_barriers(&lower, &upper);
    let b0 = rng.normal_vector(d).scale(0.1 * w);
    let base = SelfConcordantOracle::new(a, b0, 0.0, barriers, Vector::zeros(d))?;

    let drift_cap = 0.9 / 144.0;
    let mut oracles: Vec<SelfConcordantOracle> = vec![base];
    let mut minimizers = vec![crate::functions::solve_min_of(&oracles[0])?];
    let mut drift_sq = vec![0.0];
    for _ in 1..config.rounds {
        let unit = rng
            .normal_vector(d)
            .normalized()
            .unwrap_or_else(|| Vector::basis(d, 0));
        let mut step = config.tau;
        let prev = oracles.last().unwrap().clone();
        let prev_min = minimizers.last().unwrap().clone();
        let mut accepted = None;
        for _halving in 0..64 {
            let cand = prev.translated(&unit.scale(step));
            // Warm-started solve from the translated previous minimizer.
            let guess = &prev_min + &unit.scale(step);
            let cand_min = crate::functions::solve_min_from(&cand, &guess)?;
            let offset = &prev_min - &cand_min;
            let measure = cand.hessian(&cand_min).quad_form(&offset).max(0.0);
            if measure <= drift_cap {
                accepted = Some((cand, cand_min, measure));
                break;
            }
            step *= 0.5;
        }
        let (cand, cand_min, measure) = accepted.ok_or_else(|| {
            Error::ConditionUnsatisfiable(
                "drift condition failed even after shrinking the step".into(),
            )
        })?;
        oracles.push(cand);
        minimizers.push(cand_min);
        drift_sq.push(measure);
    }

    let hessians: Vec<SymMatrix> = oracles
        .iter()
        .zip(&minimizers)
        .map(|(o, m)| o.hessian(m))
        .collect();
    let mu = if hessians.len() >= 2 {
        Some(crate::regularity::mu(&hessians)?)
    } else {
        None
    };
    let start = oracles[0].witness().clone();
    Ok(Scenario {
        kind: config.kind,
        oracles: oracles.into_iter().map(Oracle::SelfConcordant).collect(),
        set: FeasibleSet::new_whole_space(d),
        minimizers,
        start,
        class: FunctionClass::SelfConcordant,
        lambda: None,
        smooth: None,
        beta: None,
        mu,
        drift_sq_hnorm: drift_sq,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regularity::{path_length, semistrong_regularities, squared_path_length};

    fn config(kind: ScenarioKind, rounds: usize, dim: usize, tau: f64, seed: u64) -> ScenarioConfig {
        ScenarioConfig {
            kind,
            rounds,
            dim,
            tau,
            seed,
            set: FeasibleSet::new_ball(Vector::zeros(dim), 1.0).unwrap(),
            extras: ScenarioExtras::default(),
        }
    }

    #[test]
    fn drifting_quadratic_reproduces_square_root_path_scaling() {
        // tau = 1/2 over horizon 100: 100 steps of length 0.1.
        let cfg = config(ScenarioKind::DriftingQuadratic, 100, 2, 0.5, 42);
        let s = generate(&cfg).unwrap();
        assert_eq!(s.rounds(), 101);
        let p = path_length(&s.minimizers);
        let sq = squared_path_length(&s.minimizers);
        assert!((p - 10.0).abs() <= 1e-9 * 10.0, "path {p}");
        assert!((sq - 1.0).abs() <= 1e-9, "squared path {sq}");
        // All minimizers stay a full step inside the set.
        let step = 0.1;
        for c in &s.minimizers {
            assert!(s.set.boundary_margin(c) >= step - 1e-9);
        }
    }

    #[test]
    fn huge_tau_freezes_the_sequence() {
        let cfg = config(ScenarioKind::DriftingQuadratic, 20, 2, 1e9, 7);
        let s = generate(&cfg).unwrap();
        for w in s.minimizers.windows(2) {
            assert!((&w[1] - &w[0]).norm() < 1e-300);
        }
    }

    #[test]
    fn shared_curvature_variation_is_exact() {
        let cfg = config(ScenarioKind::DriftingQuadratic, 30, 3, 0.6, 11);
        let s = generate(&cfg).unwrap();
        let est = crate::regularity::variation_estimates(&s.oracles, &s.set, &[]);
        assert!(est.exact);
        // Cross-check against the constant-gradient-difference formula.
        let mut expect = 0.0;
        for w in s.oracles.windows(2) {
            if let (Oracle::Quadratic(a), Oracle::Quadratic(b)) = (&w[0], &w[1]) {
                expect += 4.0 * (b.linear_term() - a.linear_term()).norm_sq();
            }
        }
        assert!((est.gradient - expect).abs() <= 1e-12 * expect.max(1.0));
    }

    #[test]
    fn generation_is_reproducible() {
        for kind in [
            ScenarioKind::DriftingQuadratic,
            ScenarioKind::LowerBoundAdversary,
            ScenarioKind::MiniBatchLogistic,
        ] {
            let cfg = config(kind, 12, 2, 0.3, 99);
            let a = generate(&cfg).unwrap();
            let b = generate(&cfg).unwrap();
            let probe = Vector::new(vec![0.1, -0.2]);
            for (oa, ob) in a.oracles.iter().zip(&b.oracles) {
                assert_eq!(oa.value(&probe).to_bits(), ob.value(&probe).to_bits());
            }
            for (ma, mb) in a.minimizers.iter().zip(&b.minimizers) {
                assert_eq!(ma, mb);
            }
        }
    }

    #[test]
    fn per_round_hessians_respect_declared_constants() {
        let mut cfg = config(ScenarioKind::DriftingQuadratic, 25, 3, 0.5, 5);
        cfg.extras.per_round_hessian = true;
        cfg.extras.cond = 6.0;
        let s = generate(&cfg).unwrap();
        let lambda = s.lambda.unwrap();
        let smooth = s.smooth.unwrap();
        assert!(lambda > 0.0 && smooth >= lambda);
        let probe = Vector::new(vec![0.2, -0.1, 0.05]);
        for o in &s.oracles {
            let eig = crate::numerics::sym_eigen(&o.hessian(&probe));
            assert!(eig.min() >= lambda - 1e-9);
            assert!(eig.max() <= smooth + 1e-9);
        }
    }

    #[test]
    fn adversary_zero_noise_pins_minimizers_at_origin() {
        let cfg = config(ScenarioKind::LowerBoundAdversary, 15, 3, 0.0, 21);
        let s = generate(&cfg).unwrap();
        assert_eq!(path_length(&s.minimizers), 0.0);
        assert_eq!(squared_path_length(&s.minimizers), 0.0);
        assert_eq!(s.lambda, Some(4.0));
        assert_eq!(s.smooth, Some(4.0));
    }

    #[test]
    fn adversary_squared_path_matches_expectation() {
        // E[S] = 2 d (T-1) tau^2; a single long run lands nearby.
        let t = 4000;
        let tau = 0.1;
        let cfg = config(ScenarioKind::LowerBoundAdversary, t, 3, tau, 1234);
        let s = generate(&cfg).unwrap();
        let expect = 2.0 * 3.0 * (t as f64 - 1.0) * tau * tau;
        let sq = squared_path_length(&s.minimizers);
        assert!((sq - expect).abs() < 0.15 * expect, "S {sq} vs {expect}");
    }

    #[test]
    fn logistic_hessians_respect_declared_constants() {
        let mut cfg = config(ScenarioKind::MiniBatchLogistic, 15, 2, 0.1, 8);
        cfg.extras.batch = 4;
        cfg.extras.reg = 0.3;
        let s = generate(&cfg).unwrap();
        let mut rng = SeededRng::new(2);
        for o in &s.oracles {
            for _ in 0..20 {
                let x = s.set.sample(&mut rng);
                let eig = crate::numerics::sym_eigen(&o.hessian(&x));
                assert!(eig.min() >= s.lambda.unwrap() - 1e-9);
                assert!(eig.max() <= s.smooth.unwrap() + 1e-9);
            }
        }
    }

    #[test]
    fn frozen_batches_freeze_the_minimizer() {
        let mut cfg = config(ScenarioKind::MiniBatchLogistic, 10, 2, 0.1, 3);
        cfg.extras.refresh_batch = false;
        let s = generate(&cfg).unwrap();
        assert!(path_length(&s.minimizers) < 1e-9);
        assert!(squared_path_length(&s.minimizers) < 1e-12);
    }

    #[test]
    fn heavy_regularization_pins_logistic_minimizers_near_origin() {
        let mut cfg = config(ScenarioKind::MiniBatchLogistic, 8, 2, 0.0, 17);
        cfg.extras.batch = 1;
        cfg.extras.reg = 25.0;
        cfg.set = FeasibleSet::new_ball(Vector::zeros(2), 5.0).unwrap();
        let s = generate(&cfg).unwrap();
        for (oracle, m) in s.oracles.iter().zip(&s.minimizers) {
            if let Oracle::Logistic(l) = oracle {
                // First-order optimality: reg ||x*|| <= mean ||z||.
                assert!(m.norm() <= l.mean_instance_norm() / l.regularizer() + 1e-9);
            }
        }
    }

    #[test]
    fn batch_size_shrinks_squared_path_on_median() {
        let median_s = |batch: usize| -> f64 {
            let mut vals: Vec<f64> = (0..20)
                .map(|seed| {
                    let mut cfg =
                        config(ScenarioKind::MiniBatchLogistic, 12, 2, 0.0, 1000 + seed);
                    cfg.extras.batch = batch;
                    cfg.extras.reg = 0.5;
                    let s = generate(&cfg).unwrap();
                    squared_path_length(&s.minimizers)
                })
                .collect();
            vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
            0.5 * (vals[9] + vals[10])
        };
        let small = median_s(1);
        let mid = median_s(8);
        let large = median_s(64);
        assert!(mid < small, "median S: m=1 {small}, m=8 {mid}");
        assert!(large < mid, "median S: m=8 {mid}, m=64 {large}");
    }

    #[test]
    fn semistrong_drift_shifts_parallel_lines_exactly() {
        let delta = 0.05;
        let t = 12;
        let mut cfg = config(ScenarioKind::SemiStrongDrift, t, 2, delta, 77);
        cfg.set = FeasibleSet::new_box(
            Vector::new(vec![-1.0, -1.0]),
            Vector::new(vec![1.0, 1.0]),
        )
        .unwrap();
        let s = generate(&cfg).unwrap();
        let semis: Vec<SemiStrongOracle> = s
            .oracles
            .iter()
            .map(|o| match o {
                Oracle::SemiStrong(ss) => ss.clone(),
                _ => unreachable!(),
            })
            .collect();
        let mut rng = SeededRng::new(5);
        let probes: Vec<Vector> = (0..10).map(|_| s.set.sample(&mut rng)).collect();
        let reg = semistrong_regularities(&semis, &s.set, &probes).unwrap();
        let expect_p = delta * (t as f64 - 1.0);
        assert!((reg.p - expect_p).abs() < 1e-8, "p {} vs {}", reg.p, expect_p);
        assert!((reg.s - delta * delta * (t as f64 - 1.0)).abs() < 1e-9);
        // Every oracle certifies a positive growth constant.
        assert!(s.beta.unwrap() > 0.0);
    }

    #[test]
    fn semistrong_zero_drift_is_static() {
        let mut cfg = config(ScenarioKind::SemiStrongDrift, 6, 3, 0.0, 13);
        cfg.set = FeasibleSet::new_whole_space(3);
        cfg.extras.rank = 2;
        let s = generate(&cfg).unwrap();
        let semis: Vec<SemiStrongOracle> = s
            .oracles
            .iter()
            .map(|o| match o {
                Oracle::SemiStrong(ss) => ss.clone(),
                _ => unreachable!(),
            })
            .collect();
        let reg = semistrong_regularities(&semis, &s.set, &[]).unwrap();
        assert!(reg.p < 1e-10);
        assert!(reg.s < 1e-12);
        assert!(reg.exact);
    }

    #[test]
    fn selfconcordant_drift_honors_the_hessian_norm_condition() {
        let mut cfg = config(ScenarioKind::SelfConcordantDrift, 25, 2, 0.3, 2024);
        cfg.set = FeasibleSet::new_whole_space(2);
        let s = generate(&cfg).unwrap();
        assert_eq!(s.drift_sq_hnorm.len(), 25);
        for (t, &v) in s.drift_sq_hnorm.iter().enumerate() {
            assert!(v <= 1.0 / 144.0 + 1e-12, "round {t}: {v}");
        }
        // Interior minimizers with vanishing gradients.
        for (o, m) in s.oracles.iter().zip(&s.minimizers) {
            assert!(o.in_domain(m));
            assert!(o.gradient(m).norm() <= 1e-8);
        }
        assert!(s.mu.unwrap() >= 1.0 - 1e-9);
    }

    #[test]
    fn selfconcordant_zero_drift_has_zero_condition_values() {
        let mut cfg = config(ScenarioKind::SelfConcordantDrift, 8, 2, 0.0, 5);
        cfg.set = FeasibleSet::new_whole_space(2);
        let s = generate(&cfg).unwrap();
        for &v in &s.drift_sq_hnorm {
            assert!(v <= 1e-16);
        }
    }

    #[test]
    fn path_that_cannot_fit_is_rejected() {
        // Steps of length 1 with margin 1 cannot fit a radius-1 ball.
        let cfg = config(ScenarioKind::DriftingQuadratic, 1, 2, 0.0, 1);
        assert!(matches!(generate(&cfg), Err(Error::PathEscapesSet(_))));
    }
}
