//! Experiment execution: the round loop, regret accounting, regularity
//! report, bound evaluation, and structured output.
//!
//! Protocol ordering is enforced by the loop structure: the round's iterate
//! is committed to the record before the round's oracle is first touched,
//! and all inner updates run after that to produce the next iterate.

use std::time::Instant;

use super::config::{ExperimentConfig, InnerCount, Setting, StartPoint};
use crate::functions::{FunctionOracle, Oracle};
use crate::learners::{
    self, k_selfconcordant, k_semistrong, k_strongly, newton_decrement, warmstart_decrement_target,
    LearnerConfig, LearnerKind, LearnerState,
};
use crate::numerics::{SeededRng, Vector};
use crate::regularity::{
    self, theorem_bounds, BoundInputs, BoundReport, FunctionClass, PathVariant, RegularityReport,
};
use crate::scenarios::{self, Scenario, ScenarioKind};
use crate::{Error, Result};

/// Per-round telemetry.
#[derive(Clone, Debug)]
pub struct RoundRecord {
    /// 1-based round index.
    pub t: usize,
    /// The iterate committed for this round.
    pub x: Vector,
    pub loss_at_x: f64,
    pub loss_at_min: f64,
    /// Loss gap, clamped at zero (validated above `-1e-9` first).
    pub gap: f64,
    pub cum_regret: f64,
    pub p_inc: f64,
    pub s_inc: f64,
    pub p_cum: f64,
    pub s_cum: f64,
    pub inner_iters: usize,
    /// Final inner diagnostic: distance moved for the gradient learners,
    /// Newton decrement for the Newton learner.
    pub inner_final_metric: f64,
    /// Scenario-specific extra columns (see [`extra_columns`]).
    pub extras: Vec<f64>,
}

/// Names of the scenario-specific CSV columns.
pub fn extra_columns(kind: ScenarioKind) -> &'static [&'static str] {
    match kind {
        ScenarioKind::SelfConcordantDrift => &["drift_hnorm_sq", "min_slack"],
        _ => &[],
    }
}

/// Resolved learner parameters and warm-start diagnostics.
#[derive(Clone, Debug)]
pub struct ResolvedLearner {
    pub kind: LearnerKind,
    pub eta: f64,
    pub k_inner: usize,
    pub warmstart_threshold: Option<f64>,
    pub warmstart_iters: Option<usize>,
    /// Whether the round-1 warm iterate met its Hessian-norm certificate,
    /// verified directly against the known first minimizer.
    pub warmstart_certified: Option<bool>,
}

/// Everything the run produced besides the per-round records.
#[derive(Clone, Debug)]
pub struct SummaryReport {
    pub seed: u64,
    pub rounds: usize,
    pub learner: ResolvedLearner,
    pub regret: f64,
    pub regularity: RegularityReport,
    pub bounds: Option<BoundReport>,
    pub wall_clock_secs: f64,
    pub config_echo: String,
}

/// Run the configured experiment.
pub fn run(config: &ExperimentConfig) -> Result<(Vec<RoundRecord>, SummaryReport)> {
    let started = Instant::now();
    let scenario = scenarios::generate(&config.scenario)?;
    compatible(config.learner, scenario.class)?;

    let mut resolved = resolve_learner(config, &scenario)?;
    let start = match config.start {
        StartPoint::Scenario => scenario.start.clone(),
        StartPoint::Center => scenario.set.center(),
        StartPoint::Minimizer => scenario.minimizers[0].clone(),
    };
    let start = match config.learner {
        LearnerKind::Omnu => {
            if !scenario.oracles[0].in_domain(&start) {
                return Err(Error::DomainViolation);
            }
            start
        }
        _ => scenario.set.project(&start),
    };

    let mut state = LearnerState::new(
        LearnerConfig {
            kind: config.learner,
            eta: resolved.eta,
            k_inner: resolved.k_inner,
            warmstart_threshold: resolved.warmstart_threshold,
        },
        start.clone(),
    )?;

    let rounds = scenario.rounds();
    let mut records: Vec<RoundRecord> = Vec::with_capacity(rounds);
    let mut cum_regret = 0.0;
    for t in 0..rounds {
        // Commit the iterate, then reveal the loss.
        let x_t = state.x.clone();
        let oracle = &scenario.oracles[t];
        let loss_at_x = oracle.value(&x_t);
        let loss_at_min = oracle.value(&scenario.minimizers[t]);
        let gap = loss_at_x - loss_at_min;
        if gap < -1e-9 {
            return Err(Error::NegativeGap { gap, round: t + 1 });
        }
        let gap = gap.max(0.0);
        cum_regret += gap;

        let extras = match config.scenario.kind {
            ScenarioKind::SelfConcordantDrift => {
                let slack = match oracle {
                    Oracle::SelfConcordant(sc) => sc.min_slack(&x_t),
                    _ => f64::INFINITY,
                };
                if slack <= 0.0 {
                    return Err(Error::DomainViolation.at_round(t + 1));
                }
                vec![scenario.drift_sq_hnorm[t], slack]
            }
            _ => Vec::new(),
        };

        // Inner updates produce the next round's iterate.
        let (inner_iters, inner_final_metric) = if config.learner == LearnerKind::Omnu && t == 0 {
            let (warm, used) =
                learners::omnu_warmstart(oracle, &state.x, scenario.mu.unwrap_or(1.0))
                    .map_err(|e| e.at_round(t + 1))?;
            state.x = warm;
            state.round += 1;
            let metric = newton_decrement(oracle, &state.x).map_err(|e| e.at_round(t + 1))?;
            resolved.warmstart_iters = Some(used);
            // Certify the warm start against the known first minimizer.
            let h1 = oracle.hessian(&scenario.minimizers[0]);
            let off = &state.x - &scenario.minimizers[0];
            let target = 1.0 / (144.0 * scenario.mu.unwrap_or(1.0).max(1.0));
            resolved.warmstart_certified = Some(h1.quad_form(&off) <= target + 1e-12);
            (used, metric)
        } else {
            learners::advance(&mut state, oracle, &scenario.set)
                .map_err(|e| e.at_round(t + 1))?;
            let iters = state.inner_trace.len();
            (iters, state.inner_trace.last().copied().unwrap_or(0.0))
        };

        records.push(RoundRecord {
            t: t + 1,
            x: x_t,
            loss_at_x,
            loss_at_min,
            gap,
            cum_regret,
            p_inc: 0.0,
            s_inc: 0.0,
            p_cum: 0.0,
            s_cum: 0.0,
            inner_iters,
            inner_final_metric,
            extras,
        });
    }

    // Post-run accounting over the full probe set (grid + iterates).
    let probes = build_probes(config, &scenario, &records);
    let variant = governing_variant(scenario.class);
    let regularity = regularity::build_report(
        &scenario.oracles,
        &scenario.set,
        &scenario.minimizers,
        &probes,
        variant,
    )?;
    for (rec, inc) in records.iter_mut().zip(&regularity.per_round) {
        rec.p_inc = inc.p;
        rec.s_inc = inc.s;
    }
    let mut p_cum = 0.0;
    let mut s_cum = 0.0;
    for rec in records.iter_mut() {
        p_cum += rec.p_inc;
        s_cum += rec.s_inc;
        rec.p_cum = p_cum;
        rec.s_cum = s_cum;
    }

    // Independent regret recomputation from the stored losses.
    let losses_x: Vec<f64> = records.iter().map(|r| r.loss_at_x).collect();
    let losses_min: Vec<f64> = records.iter().map(|r| r.loss_at_min).collect();
    let regret = regularity::dynamic_regret(&losses_x, &losses_min)?;

    let bounds = if config.evaluate_bounds {
        Some(evaluate_bounds(
            config, &scenario, &regularity, &resolved, &start, &probes, regret,
        )?)
    } else {
        None
    };

    let summary = SummaryReport {
        seed: config.scenario.seed,
        rounds,
        learner: resolved,
        regret,
        regularity,
        bounds,
        wall_clock_secs: started.elapsed().as_secs_f64(),
        config_echo: config.raw_text.clone(),
    };
    Ok((records, summary))
}

fn compatible(learner: LearnerKind, class: FunctionClass) -> Result<()> {
    let ok = match learner {
        LearnerKind::Omnu => class == FunctionClass::SelfConcordant,
        _ => class != FunctionClass::SelfConcordant,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::Config(format!(
            "learner {} cannot run on a {:?} scenario",
            learner.name(),
            class
        )))
    }
}

fn governing_variant(class: FunctionClass) -> PathVariant {
    match class {
        FunctionClass::StronglyConvex => PathVariant::Euclidean,
        FunctionClass::SemiStrong => PathVariant::Projection,
        FunctionClass::SelfConcordant => PathVariant::HessianWeighted,
    }
}

fn resolve_learner(config: &ExperimentConfig, scenario: &Scenario) -> Result<ResolvedLearner> {
    let eta = match (config.eta, config.learner) {
        (_, LearnerKind::Omnu) => 1.0,
        (Setting::Fixed(v), _) => v,
        (Setting::Auto, _) => {
            let smooth = scenario.smooth.ok_or(Error::MissingConstant("L"))?;
            1.0 / smooth
        }
    };
    let k_inner = match (config.k_inner, config.learner) {
        (_, LearnerKind::Ogd) => 1,
        (InnerCount::Fixed(v), _) => v,
        (InnerCount::Auto, LearnerKind::Omgd) => match scenario.class {
            FunctionClass::StronglyConvex => {
                k_strongly(eta, scenario.lambda.ok_or(Error::MissingConstant("lambda"))?)
            }
            FunctionClass::SemiStrong => {
                k_semistrong(eta, scenario.beta.ok_or(Error::MissingConstant("beta"))?)
            }
            FunctionClass::SelfConcordant => unreachable!("rejected by compatibility check"),
        },
        (InnerCount::Auto, LearnerKind::Omnu) => {
            k_selfconcordant(scenario.mu.ok_or(Error::MissingConstant("mu"))?)
        }
    };
    let warmstart_threshold = (config.learner == LearnerKind::Omnu)
        .then(|| warmstart_decrement_target(scenario.mu.unwrap_or(1.0)));
    Ok(ResolvedLearner {
        kind: config.learner,
        eta,
        k_inner,
        warmstart_threshold,
        warmstart_iters: None,
        warmstart_certified: None,
    })
}

/// Probe set for the sampled maxima: a seeded grid over the feasible set
/// plus every learner iterate and minimizer.
fn build_probes(
    config: &ExperimentConfig,
    scenario: &Scenario,
    records: &[RoundRecord],
) -> Vec<Vector> {
    let mut rng = SeededRng::new(config.scenario.seed).substream(0xB0BE);
    let mut probes = Vec::with_capacity(config.probe_grid + records.len() + scenario.rounds());
    if scenario.set.is_bounded() {
        for _ in 0..config.probe_grid {
            probes.push(scenario.set.sample(&mut rng));
        }
    } else {
        // Unbounded set: scatter around the minimizer path.
        for k in 0..config.probe_grid {
            let anchor = &scenario.minimizers[k % scenario.minimizers.len()];
            probes.push(anchor.add_scaled(0.5, &rng.normal_vector(anchor.dim())));
        }
    }
    probes.extend(records.iter().map(|r| r.x.clone()));
    probes.extend(scenario.minimizers.iter().cloned());
    probes
}

#[allow(clippy::too_many_arguments)]
fn evaluate_bounds(
    config: &ExperimentConfig,
    scenario: &Scenario,
    regularity: &RegularityReport,
    resolved: &ResolvedLearner,
    start: &Vector,
    probes: &[Vector],
    regret: f64,
) -> Result<BoundReport> {
    let x1_distance = match scenario.class {
        FunctionClass::SemiStrong => match &scenario.oracles[0] {
            Oracle::SemiStrong(s) => (start - &s.project_minimizer_set(start)?).norm(),
            _ => unreachable!("semi-strong scenario holds semi-strong oracles"),
        },
        _ => (start - &scenario.minimizers[0]).norm(),
    };
    let grad_at_min_sq_sum = match scenario.class {
        FunctionClass::SemiStrong => {
            // Worst selection of per-round minimizers: maximize the gradient
            // norm over sampled points of each minimizer set.
            let mut total = 0.0;
            for oracle in &scenario.oracles {
                if let Oracle::SemiStrong(s) = oracle {
                    let mut worst = s.gradient(s.representative_minimizer()).norm_sq();
                    for p in probes.iter().take(32) {
                        let proj = s.project_minimizer_set(p)?;
                        worst = worst.max(s.gradient(&proj).norm_sq());
                    }
                    total += worst;
                }
            }
            total
        }
        _ => scenario
            .oracles
            .iter()
            .zip(&scenario.minimizers)
            .map(|(o, m)| o.gradient(m).norm_sq())
            .sum(),
    };
    let f1_gap = scenario.oracles[0].value(start)
        - scenario.oracles[0].value(&scenario.minimizers[0]);
    let drift_ok = (scenario.class == FunctionClass::SelfConcordant).then(|| {
        scenario
            .drift_sq_hnorm
            .iter()
            .all(|&v| v <= 1.0 / 144.0 + 1e-12)
    });
    let inputs = BoundInputs {
        learner: config.learner,
        class: scenario.class,
        eta: resolved.eta,
        k_inner: resolved.k_inner,
        lambda: scenario.lambda,
        smooth: scenario.smooth,
        beta: scenario.beta,
        grad_bound: regularity.grad_const,
        mu: scenario.mu,
        x1_distance,
        grad_at_min_sq_sum,
        f1_gap,
        warmstart_ok: resolved.warmstart_certified,
        drift_ok,
    };
    theorem_bounds(regularity, &inputs, regret)
}

/// Render the records as CSV with the stable column order
/// `t,gap,cum_regret,p_inc,s_inc,p_cum,s_cum,inner_iters,inner_final_metric`
/// plus the scenario-specific extras named in the header.
pub fn records_to_csv(records: &[RoundRecord], kind: ScenarioKind) -> String {
    let mut out = String::new();
    out.push_str("t,gap,cum_regret,p_inc,s_inc,p_cum,s_cum,inner_iters,inner_final_metric");
    for col in extra_columns(kind) {
        out.push(',');
        out.push_str(col);
    }
    out.push('\n');
    for r in records {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}",
            r.t,
            r.gap,
            r.cum_regret,
            r.p_inc,
            r.s_inc,
            r.p_cum,
            r.s_cum,
            r.inner_iters,
            r.inner_final_metric
        ));
        for v in &r.extras {
            out.push_str(&format!(",{v}"));
        }
        out.push('\n');
    }
    out
}

/// Render the summary as indented `key: value` lines.
pub fn summary_to_text(summary: &SummaryReport) -> String {
    let mut out = String::new();
    out.push_str("run:\n");
    out.push_str(&format!("  seed: {}\n", summary.seed));
    out.push_str(&format!("  rounds: {}\n", summary.rounds));
    out.push_str(&format!("  regret: {}\n", summary.regret));
    out.push_str(&format!(
        "  wall_clock_secs: {:.6}\n",
        summary.wall_clock_secs
    ));
    out.push_str("learner:\n");
    out.push_str(&format!("  variant: {}\n", summary.learner.kind.name()));
    out.push_str(&format!("  eta: {}\n", summary.learner.eta));
    out.push_str(&format!("  k_inner: {}\n", summary.learner.k_inner));
    if let Some(th) = summary.learner.warmstart_threshold {
        out.push_str(&format!("  warmstart_threshold: {th}\n"));
    }
    if let Some(iters) = summary.learner.warmstart_iters {
        out.push_str(&format!("  warmstart_iters: {iters}\n"));
    }
    if let Some(ok) = summary.learner.warmstart_certified {
        out.push_str(&format!("  warmstart_certified: {ok}\n"));
    }
    let reg = &summary.regularity;
    out.push_str("regularity:\n");
    out.push_str(&format!("  p_star: {}\n", reg.p_star));
    out.push_str(&format!("  s_star: {}\n", reg.s_star));
    if let (Some(p), Some(s)) = (reg.p_semi, reg.s_semi) {
        out.push_str(&format!("  p_semi: {p}\n"));
        out.push_str(&format!("  s_semi: {s}\n"));
        out.push_str(&format!("  semi_exact: {}\n", reg.semi_exact));
    }
    if let (Some(p), Some(s)) = (reg.p_hess, reg.s_hess) {
        out.push_str(&format!("  p_hess: {p}\n"));
        out.push_str(&format!("  s_hess: {s}\n"));
    }
    out.push_str(&format!("  f_var: {}\n", reg.f_var));
    out.push_str(&format!("  g_var: {}\n", reg.g_var));
    out.push_str(&format!("  variation_exact: {}\n", reg.variation_exact));
    if let Some(mu) = reg.mu {
        out.push_str(&format!("  mu: {mu}\n"));
    }
    if let Some(g) = reg.grad_const {
        out.push_str(&format!("  grad_bound: {g}\n"));
    }
    if let Some(bounds) = &summary.bounds {
        out.push_str("bounds:\n");
        out.push_str(&format!("  pairing: {}\n", bounds.pairing));
        if let Some(g) = bounds.gamma {
            out.push_str(&format!("  gamma: {g}\n"));
        }
        if let Some(a) = bounds.alpha_star {
            out.push_str(&format!("  alpha_star: {a}\n"));
        }
        if let (Some(b), Some(ok)) = (bounds.bound_p, bounds.satisfied_p) {
            out.push_str(&format!("  bound_p: {b}\n"));
            out.push_str(&format!("  satisfied_p: {ok}\n"));
        }
        if let (Some(b), Some(ok)) = (bounds.bound_s, bounds.satisfied_s) {
            out.push_str(&format!("  bound_s: {b}\n"));
            out.push_str(&format!("  satisfied_s: {ok}\n"));
        }
        if let (Some(b), Some(ok)) = (
            bounds.bound_selfconcordant,
            bounds.satisfied_selfconcordant,
        ) {
            out.push_str(&format!("  bound_selfconcordant: {b}\n"));
            out.push_str(&format!("  satisfied_selfconcordant: {ok}\n"));
        }
        for note in &bounds.notes {
            out.push_str(&format!("  note: {note}\n"));
        }
    }
    out.push_str("config_echo:\n");
    for line in summary.config_echo.lines() {
        out.push_str(&format!("  {line}\n"));
    }
    out
}

/// Run and write `rounds.csv` and `summary.txt` under `out_dir`.
pub fn run_to_dir(
    config: &ExperimentConfig,
    out_dir: &std::path::Path,
) -> Result<(Vec<RoundRecord>, SummaryReport)> {
    let (records, summary) = run(config)?;
    std::fs::create_dir_all(out_dir)?;
    std::fs::write(
        out_dir.join("rounds.csv"),
        records_to_csv(&records, config.scenario.kind),
    )?;
    std::fs::write(out_dir.join("summary.txt"), summary_to_text(&summary))?;
    Ok((records, summary))
}
