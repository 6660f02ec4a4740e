//! Regret-bound evaluators for each learner/function-class pairing.
//!
//! Every evaluator plugs measured regularities and declared constants into
//! a proven inequality and reports whether the measured regret satisfies
//! it. Bounds are only certified when the pairing's step-size and
//! inner-iteration prescriptions hold; otherwise the bound is omitted and
//! a note explains why.

use super::RegularityReport;
use crate::learners::{k_selfconcordant, k_semistrong, k_strongly, LearnerKind};
use crate::{Error, Result};

/// Tolerance added to a bound before comparing the measured regret.
const SATISFIED_TOL: f64 = 1e-9;

/// The regularity class of the loss sequence, deciding which theorem
/// applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FunctionClass {
    StronglyConvex,
    SemiStrong,
    SelfConcordant,
}

/// Everything a bound evaluator needs beyond the regularity report.
#[derive(Clone, Debug)]
pub struct BoundInputs {
    pub learner: LearnerKind,
    pub class: FunctionClass,
    pub eta: f64,
    pub k_inner: usize,
    /// Sequence-level strong convexity (the minimum over rounds).
    pub lambda: Option<f64>,
    /// Sequence-level smoothness (the maximum over rounds).
    pub smooth: Option<f64>,
    /// Sequence-level semi-strong growth constant (the minimum over rounds).
    pub beta: Option<f64>,
    /// Gradient bound over the feasible set.
    pub grad_bound: Option<f64>,
    /// Curvature ratio of consecutive Hessians.
    pub mu: Option<f64>,
    /// Distance from the first iterate to the first round's minimizer (or
    /// to its projection onto the first minimizer set).
    pub x1_distance: f64,
    /// Sum of squared gradient norms at the per-round minimizers.
    pub grad_at_min_sq_sum: f64,
    /// First-round loss gap `f_1(x_1) - f_1(x_1^*)`.
    pub f1_gap: f64,
    /// Whether the Newton warm start met its round-1 certificate.
    pub warmstart_ok: Option<bool>,
    /// Whether the per-round Hessian-norm drift condition held throughout.
    pub drift_ok: Option<bool>,
}

/// Evaluated bounds with per-bound satisfaction flags.
#[derive(Clone, Debug, Default)]
pub struct BoundReport {
    /// Human-readable name of the pairing that was evaluated.
    pub pairing: String,
    /// Contraction factor of the single-step learners.
    pub gamma: Option<f64>,
    /// Trade-off weight minimizing the squared-path bound.
    pub alpha_star: Option<f64>,
    pub bound_p: Option<f64>,
    pub bound_s: Option<f64>,
    pub bound_selfconcordant: Option<f64>,
    pub regret: f64,
    pub satisfied_p: Option<bool>,
    pub satisfied_s: Option<bool>,
    pub satisfied_selfconcordant: Option<bool>,
    /// Preconditions that failed or constants that had to be assumed.
    pub notes: Vec<String>,
}

impl BoundReport {
    /// True when every evaluated bound is satisfied.
    pub fn all_satisfied(&self) -> bool {
        self.satisfied_p.unwrap_or(true)
            && self.satisfied_s.unwrap_or(true)
            && self.satisfied_selfconcordant.unwrap_or(true)
    }

    /// The tightest evaluated bound, if any.
    pub fn min_bound(&self) -> Option<f64> {
        [self.bound_p, self.bound_s, self.bound_selfconcordant]
            .into_iter()
            .flatten()
            .fold(None, |acc: Option<f64>, v| {
                Some(acc.map_or(v, |a| a.min(v)))
            })
    }
}

/// Evaluate the regret bounds applicable to this learner and function
/// class against the measured regret.
pub fn theorem_bounds(
    report: &RegularityReport,
    inputs: &BoundInputs,
    regret: f64,
) -> Result<BoundReport> {
    let mut out = BoundReport {
        regret,
        ..Default::default()
    };
    match (inputs.learner, inputs.class) {
        (LearnerKind::Ogd, FunctionClass::StronglyConvex) => {
            single_step_bound(
                &mut out,
                inputs,
                report.p_star,
                inputs.lambda.ok_or(Error::MissingConstant("lambda"))?,
                2.0,
                "ogd / strongly convex",
            )?;
        }
        (LearnerKind::Ogd, FunctionClass::SemiStrong) => {
            let beta = inputs.beta.ok_or(Error::MissingConstant("beta"))?;
            let p = report.p_semi.ok_or(Error::MissingConstant("p_semi"))?;
            single_step_bound(&mut out, inputs, p, beta, 1.0, "ogd / semi-strong")?;
        }
        (LearnerKind::Omgd, FunctionClass::StronglyConvex) => {
            let lambda = inputs.lambda.ok_or(Error::MissingConstant("lambda"))?;
            let needed = k_strongly(inputs.eta, lambda);
            multi_step_bound(
                &mut out,
                inputs,
                report.p_star,
                report.s_star,
                needed,
                "omgd / strongly convex",
            )?;
        }
        (LearnerKind::Omgd, FunctionClass::SemiStrong) => {
            let beta = inputs.beta.ok_or(Error::MissingConstant("beta"))?;
            let needed = k_semistrong(inputs.eta, beta);
            let p = report.p_semi.ok_or(Error::MissingConstant("p_semi"))?;
            let s = report.s_semi.ok_or(Error::MissingConstant("s_semi"))?;
            multi_step_bound(&mut out, inputs, p, s, needed, "omgd / semi-strong")?;
        }
        (LearnerKind::Omnu, FunctionClass::SelfConcordant) => {
            newton_bound(&mut out, inputs, report)?;
        }
        (learner, class) => {
            out.pairing = format!("{} / {:?} (no applicable bound)", learner.name(), class);
            out.notes
                .push("no theorem covers this learner/function-class pairing".into());
        }
    }
    Ok(out)
}

/// Single-gradient-step bound
/// `(G P + G ||x_1 - x_1^*||) / (1 - gamma)` with
/// `gamma = sqrt(1 - rate_num * m / (1/eta + m))` where `m` is the strong
/// (rate_num = 2) or semi-strong (rate_num = 1) modulus.
fn single_step_bound(
    out: &mut BoundReport,
    inputs: &BoundInputs,
    path: f64,
    modulus: f64,
    rate_num: f64,
    pairing: &str,
) -> Result<()> {
    out.pairing = pairing.to_string();
    let smooth = inputs.smooth.ok_or(Error::MissingConstant("L"))?;
    let grad = inputs.grad_bound.ok_or(Error::MissingConstant("G"))?;
    if inputs.eta > 1.0 / smooth + 1e-12 {
        out.notes.push(format!(
            "step size {} exceeds 1/L = {}; bound not certified",
            inputs.eta,
            1.0 / smooth
        ));
        return Ok(());
    }
    let gamma = (1.0 - rate_num * modulus / (1.0 / inputs.eta + modulus)).sqrt();
    out.gamma = Some(gamma);
    let bound = (grad * path + grad * inputs.x1_distance) / (1.0 - gamma);
    out.bound_p = Some(bound);
    out.satisfied_p = Some(out.regret <= bound + SATISFIED_TOL);
    Ok(())
}

/// Multi-gradient-step bounds: the path bound `2 G P + 2 G ||x_1 - .||`
/// and the squared-path bound
/// `C1 / (2 alpha) + 2 (L + alpha) S + (L + alpha) ||x_1 - .||^2`,
/// reported at the minimizing `alpha* = sqrt(C1 / (2 S + ||x_1 - .||^2) / 2)`
/// (or at `alpha -> 0` when `C1 = 0`).
fn multi_step_bound(
    out: &mut BoundReport,
    inputs: &BoundInputs,
    path: f64,
    squared_path: f64,
    k_needed: usize,
    pairing: &str,
) -> Result<()> {
    out.pairing = pairing.to_string();
    let smooth = inputs.smooth.ok_or(Error::MissingConstant("L"))?;
    let grad = inputs.grad_bound.ok_or(Error::MissingConstant("G"))?;
    if inputs.eta > 1.0 / smooth + 1e-12 {
        out.notes.push(format!(
            "step size {} exceeds 1/L = {}; bound not certified",
            inputs.eta,
            1.0 / smooth
        ));
        return Ok(());
    }
    if inputs.k_inner < k_needed {
        out.notes.push(format!(
            "inner iterations {} below the prescribed {k_needed}; bound not certified",
            inputs.k_inner
        ));
        return Ok(());
    }
    // The prescription forces per-round half-contraction, i.e. gamma = 1/2.
    out.gamma = Some(0.5);
    let bound_p = 2.0 * grad * path + 2.0 * grad * inputs.x1_distance;
    out.bound_p = Some(bound_p);
    out.satisfied_p = Some(out.regret <= bound_p + SATISFIED_TOL);

    let c1 = inputs.grad_at_min_sq_sum;
    let c2 = 2.0 * squared_path + inputs.x1_distance * inputs.x1_distance;
    let bound_s = if c1 <= 1e-18 {
        // Interior minimizers: alpha -> 0 gives 2 L S + L ||x_1 - .||^2.
        2.0 * smooth * squared_path + smooth * inputs.x1_distance * inputs.x1_distance
    } else if c2 <= 1e-300 {
        // S = 0 and x_1 already optimal: the bound degenerates to zero.
        0.0
    } else {
        let alpha = (c1 / (2.0 * c2)).sqrt();
        out.alpha_star = Some(alpha);
        c1 / (2.0 * alpha) + (smooth + alpha) * c2
    };
    out.bound_s = Some(bound_s);
    out.satisfied_s = Some(out.regret <= bound_s + SATISFIED_TOL);
    Ok(())
}

/// Damped-Newton bound
/// `min(P_hess / 3, 4 S_hess) + f_1(x_1) - f_1(x_1^*) + 1/36`, valid under
/// the per-round drift condition, the round-1 warm-start certificate, and
/// `K >= ceil(log_4(16 mu))`.
fn newton_bound(
    out: &mut BoundReport,
    inputs: &BoundInputs,
    report: &RegularityReport,
) -> Result<()> {
    out.pairing = "omnu / self-concordant".to_string();
    let mu = inputs.mu.ok_or(Error::MissingConstant("mu"))?;
    let p = report.p_hess.ok_or(Error::MissingConstant("p_hess"))?;
    let s = report.s_hess.ok_or(Error::MissingConstant("s_hess"))?;
    if inputs.warmstart_ok == Some(false) {
        out.notes
            .push("round-1 warm-start certificate failed; bound not certified".into());
        return Ok(());
    }
    if inputs.drift_ok == Some(false) {
        out.notes
            .push("per-round drift condition violated; bound not certified".into());
        return Ok(());
    }
    let needed = k_selfconcordant(mu);
    if inputs.k_inner < needed {
        out.notes.push(format!(
            "inner iterations {} below the prescribed {needed}; bound not certified",
            inputs.k_inner
        ));
        return Ok(());
    }
    let bound = (p / 3.0).min(4.0 * s) + inputs.f1_gap + 1.0 / 36.0;
    out.bound_selfconcordant = Some(bound);
    out.satisfied_selfconcordant = Some(out.regret <= bound + SATISFIED_TOL);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regularity::{PathVariant, RegularityReport, RoundIncrements};

    fn report(p: f64, s: f64) -> RegularityReport {
        RegularityReport {
            p_star: p,
            s_star: s,
            p_semi: None,
            s_semi: None,
            semi_exact: false,
            p_hess: None,
            s_hess: None,
            f_var: 0.0,
            g_var: 0.0,
            variation_exact: true,
            mu: None,
            grad_const: None,
            variant: PathVariant::Euclidean,
            per_round: vec![RoundIncrements::default()],
        }
    }

    fn base_inputs(learner: LearnerKind, class: FunctionClass) -> BoundInputs {
        BoundInputs {
            learner,
            class,
            eta: 0.5,
            k_inner: 10,
            lambda: Some(1.0),
            smooth: Some(2.0),
            beta: None,
            grad_bound: Some(3.0),
            mu: None,
            x1_distance: 0.5,
            grad_at_min_sq_sum: 0.0,
            f1_gap: 0.0,
            warmstart_ok: None,
            drift_ok: None,
        }
    }

    #[test]
    fn interior_minimizers_use_the_alpha_zero_corollary() {
        // C1 = 0: bound_s = 2 L S + L ||x_1 - x_1^*||^2.
        let inputs = base_inputs(LearnerKind::Omgd, FunctionClass::StronglyConvex);
        let rep = report(4.0, 0.25);
        let out = theorem_bounds(&rep, &inputs, 0.1).unwrap();
        let expect = 2.0 * 2.0 * 0.25 + 2.0 * 0.25;
        assert!((out.bound_s.unwrap() - expect).abs() < 1e-12);
        assert!(out.alpha_star.is_none());
        // Path bound carries the half-contraction constants 2G.
        let expect_p = 2.0 * 3.0 * 4.0 + 2.0 * 3.0 * 0.5;
        assert!((out.bound_p.unwrap() - expect_p).abs() < 1e-12);
        assert_eq!(out.gamma, Some(0.5));
        assert!(out.all_satisfied());
    }

    #[test]
    fn optimized_alpha_beats_fixed_choices() {
        let mut inputs = base_inputs(LearnerKind::Omgd, FunctionClass::StronglyConvex);
        inputs.grad_at_min_sq_sum = 0.8;
        let rep = report(4.0, 0.25);
        let out = theorem_bounds(&rep, &inputs, 0.1).unwrap();
        let alpha = out.alpha_star.unwrap();
        let c2 = 2.0 * 0.25 + 0.25;
        let value = |a: f64| 0.8 / (2.0 * a) + (2.0 + a) * c2;
        assert!((out.bound_s.unwrap() - value(alpha)).abs() < 1e-12);
        for other in [alpha * 0.5, alpha * 2.0, 1.0] {
            assert!(value(alpha) <= value(other) + 1e-12);
        }
    }

    #[test]
    fn zero_drift_zero_start_satisfies_everything() {
        let inputs = base_inputs(LearnerKind::Omgd, FunctionClass::StronglyConvex);
        let mut inputs = inputs;
        inputs.x1_distance = 0.0;
        let rep = report(0.0, 0.0);
        let out = theorem_bounds(&rep, &inputs, 0.0).unwrap();
        assert_eq!(out.bound_p, Some(0.0));
        assert_eq!(out.bound_s, Some(0.0));
        assert!(out.all_satisfied());
    }

    #[test]
    fn ogd_bound_uses_the_strong_contraction_factor() {
        let inputs = base_inputs(LearnerKind::Ogd, FunctionClass::StronglyConvex);
        let rep = report(2.0, 1.0);
        let out = theorem_bounds(&rep, &inputs, 0.5).unwrap();
        let gamma = (1.0_f64 - 2.0 * 1.0 / (2.0 + 1.0)).sqrt();
        assert!((out.gamma.unwrap() - gamma).abs() < 1e-15);
        let expect = (3.0 * 2.0 + 3.0 * 0.5) / (1.0 - gamma);
        assert!((out.bound_p.unwrap() - expect).abs() < 1e-12);
    }

    #[test]
    fn unmet_prescriptions_withhold_certification() {
        let mut inputs = base_inputs(LearnerKind::Omgd, FunctionClass::StronglyConvex);
        inputs.k_inner = 1;
        let out = theorem_bounds(&report(1.0, 1.0), &inputs, 0.1).unwrap();
        assert!(out.bound_p.is_none());
        assert!(!out.notes.is_empty());

        let mut inputs = base_inputs(LearnerKind::Ogd, FunctionClass::StronglyConvex);
        inputs.eta = 10.0;
        let out = theorem_bounds(&report(1.0, 1.0), &inputs, 0.1).unwrap();
        assert!(out.bound_p.is_none());
    }

    #[test]
    fn newton_bound_shape() {
        let mut inputs = base_inputs(LearnerKind::Omnu, FunctionClass::SelfConcordant);
        inputs.mu = Some(1.5);
        inputs.k_inner = 3;
        inputs.f1_gap = 0.2;
        inputs.warmstart_ok = Some(true);
        inputs.drift_ok = Some(true);
        let mut rep = report(0.0, 0.0);
        rep.p_hess = Some(0.9);
        rep.s_hess = Some(0.1);
        let out = theorem_bounds(&rep, &inputs, 0.05).unwrap();
        let expect = (0.9_f64 / 3.0).min(0.4) + 0.2 + 1.0 / 36.0;
        assert!((out.bound_selfconcordant.unwrap() - expect).abs() < 1e-12);
        assert!(out.all_satisfied());
    }

    #[test]
    fn missing_constants_error() {
        let mut inputs = base_inputs(LearnerKind::Ogd, FunctionClass::StronglyConvex);
        inputs.grad_bound = None;
        assert!(matches!(
            theorem_bounds(&report(1.0, 1.0), &inputs, 0.0),
            Err(Error::MissingConstant("G"))
        ));
    }
}
