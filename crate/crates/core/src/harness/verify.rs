//! Named property suites verifying the contraction lemmas, the Newton
//! decrement bounds, oracle gradients, the regret bounds, and the
//! lower-bound expectation, on seeded random instances.
//!
//! Each suite reports one line per check with counterexample details on
//! failure. The acceptance tests run these same suites.

use std::time::Instant;

use super::config::{parse, ExperimentConfig};
use super::runner;
use crate::functions::{
    hessian_norm, minimizer, FeasibleSet, FunctionOracle, LogisticOracle, Oracle,
    QuadraticOracle, SelfConcordantOracle, SemiStrongOracle,
};
use crate::learners::{damped_newton_step, newton_decrement};
use crate::numerics::{
    finite_diff_gradient, finite_diff_hessian, max_generalized_eig, SeededRng, SymMatrix, Vector,
};
use crate::regularity::squared_path_length;
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub label: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct SuiteResult {
    pub suite: &'static str,
    pub checks: Vec<CheckResult>,
    pub elapsed_secs: f64,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

pub const SUITE_NAMES: &[&str] = &[
    "contraction",
    "semi_contraction",
    "newton",
    "decrement_bound",
    "gradients",
    "bounds",
    "lower_bound",
];

/// Run one named suite. `seeds` overrides the sample count of the
/// statistical lower-bound suite.
pub fn run_suite(name: &str, seeds: Option<usize>) -> Result<SuiteResult> {
    let started = Instant::now();
    let checks = match name {
        "contraction" => contraction_suite(),
        "semi_contraction" => semi_contraction_suite()?,
        "newton" => newton_suite()?,
        "decrement_bound" => decrement_bound_suite()?,
        "gradients" => gradients_suite()?,
        "bounds" => bounds_suite()?,
        "lower_bound" => lower_bound_suite(seeds.unwrap_or(50))?,
        other => {
            return Err(Error::Config(format!(
                "unknown suite `{other}`; available: {}",
                SUITE_NAMES.join(", ")
            )));
        }
    };
    Ok(SuiteResult {
        suite: SUITE_NAMES
            .iter()
            .find(|s| **s == name)
            .copied()
            .unwrap_or("unknown"),
        checks,
        elapsed_secs: started.elapsed().as_secs_f64(),
    })
}

fn check(label: impl Into<String>, passed: bool, detail: impl Into<String>) -> CheckResult {
    CheckResult {
        label: label.into(),
        passed,
        detail: detail.into(),
    }
}

fn random_set(rng: &mut SeededRng, dim: usize) -> FeasibleSet {
    match rng.index(3) {
        0 => FeasibleSet::new_whole_space(dim),
        1 => FeasibleSet::new_ball(
            rng.normal_vector(dim).scale(0.3),
            rng.uniform_in(0.8, 2.5),
        )
        .expect("positive radius"),
        _ => {
            let half = rng.uniform_in(0.7, 2.0);
            let center = rng.normal_vector(dim).scale(0.3);
            FeasibleSet::new_box(
                Vector::from_fn(dim, |i| center[i] - half),
                Vector::from_fn(dim, |i| center[i] + half),
            )
            .expect("ordered bounds")
        }
    }
}

/// Lemma-style contraction of one projected gradient step on strongly
/// convex and smooth instances:
/// `||v - x*|| <= sqrt(1 - 2 lambda / (1/eta + lambda)) ||u - x*||`.
fn contraction_suite() -> Vec<CheckResult> {
    let mut rng = SeededRng::new(0xC041_7AC7);
    let total = 1000;
    let mut worst_excess = f64::NEG_INFINITY;
    let mut failures = 0;
    let mut detail = String::new();
    for i in 0..total {
        let dim = 1 + rng.index(8);
        let (oracle, lambda, smooth): (Oracle, f64, f64) = if i % 5 == 4 {
            let m = 1 + rng.index(3);
            let data: Vec<(Vector, f64)> = (0..m)
                .map(|_| {
                    let z = rng.normal_vector(dim);
                    let y = if rng.uniform() < 0.5 { 1.0 } else { -1.0 };
                    (z, y)
                })
                .collect();
            let reg = rng.uniform_in(0.1, 2.0);
            let l = LogisticOracle::new(data, reg).expect("valid batch");
            let smooth = l.smoothness().unwrap();
            (Oracle::Logistic(l), reg, smooth)
        } else {
            let eigs: Vec<f64> = (0..dim).map(|_| rng.uniform_in(0.05, 5.0)).collect();
            let center = rng.normal_vector(dim).scale(0.5);
            let q = QuadraticOracle::from_center(SymMatrix::diag(&eigs), &center)
                .expect("PSD diagonal");
            let lambda = q.strong_convexity().unwrap();
            let smooth = q.smoothness().unwrap();
            (Oracle::Quadratic(q), lambda, smooth)
        };
        let set = random_set(&mut rng, dim);
        let xstar = match minimizer(&oracle, &set) {
            Ok(x) => x,
            Err(e) => {
                failures += 1;
                detail = format!("instance {i}: minimizer solve failed: {e}");
                continue;
            }
        };
        let eta = (1.0 / smooth) * rng.uniform_in(0.2, 1.0f64).max(0.2);
        let gamma = (1.0 - 2.0 * lambda / (1.0 / eta + lambda)).sqrt();
        let u = set.project(&rng.normal_vector(dim).scale(1.5));
        let v = set.project(&u.add_scaled(-eta, &oracle.gradient(&u)));
        let lhs = (&v - &xstar).norm();
        let rhs = gamma * (&u - &xstar).norm() + 1e-9;
        worst_excess = worst_excess.max(lhs - rhs);
        if lhs > rhs {
            failures += 1;
            if detail.is_empty() {
                detail = format!(
                    "instance {i}: ||v - x*|| = {lhs} > gamma ||u - x*|| + 1e-9 = {rhs} \
                     (lambda {lambda}, L {smooth}, eta {eta})"
                );
            }
        }
    }
    vec![check(
        format!("one-step contraction on {total} strongly convex instances"),
        failures == 0,
        if failures == 0 {
            format!("worst excess {worst_excess:.3e}")
        } else {
            format!("{failures} failures; first: {detail}")
        },
    )]
}

fn random_semi_oracle(
    rng: &mut SeededRng,
    seed: u64,
) -> crate::Result<(SemiStrongOracle, FeasibleSet)> {
    let dim = 2 + rng.index(3);
    let rank = 1 + rng.index(dim - 1);
    let boxed = rng.uniform() < 0.4;
    let set = if boxed {
        let half = rng.uniform_in(1.0, 2.0);
        FeasibleSet::new_box(
            Vector::from_fn(dim, |_| -half),
            Vector::from_fn(dim, |_| half),
        )?
    } else {
        FeasibleSet::new_whole_space(dim)
    };
    // Axis-aligned rows on boxes keep the minimizer-set projection cheap;
    // general Gaussian rows exercise the eigen machinery on the whole space.
    let e_rows: Vec<Vector> = if boxed {
        let mut coords: Vec<usize> = (0..dim).collect();
        for i in (1..dim).rev() {
            let j = rng.index(i + 1);
            coords.swap(i, j);
        }
        coords[..rank]
            .iter()
            .map(|&c| Vector::basis(dim, c).scale(rng.uniform_in(0.7, 1.4)))
            .collect()
    } else {
        (0..rank).map(|_| rng.normal_vector(dim)).collect()
    };
    let inner_eigs: Vec<f64> = (0..rank).map(|_| rng.uniform_in(0.5, 2.0)).collect();
    let inner = SymMatrix::diag(&inner_eigs);
    // Choose b so a concrete interior point solves the stationarity system.
    let mut m_rows: Vec<Vector> = Vec::with_capacity(rank);
    for k in 0..rank {
        let mut acc = Vector::zeros(dim);
        for l in 0..rank {
            acc = acc.add_scaled(inner.get(k, l), &e_rows[l]);
        }
        m_rows.push(acc);
    }
    let h = SymMatrix::from_fn_symmetric(dim, |i, j| {
        2.0 * (0..rank).map(|k| e_rows[k][i] * m_rows[k][j]).sum::<f64>()
    });
    let anchor = match &set {
        FeasibleSet::WholeSpace { .. } => rng.normal_vector(dim).scale(0.5),
        _ => set.sample(rng).scale(0.5),
    };
    let b = h.matvec(&anchor).scale(-1.0);
    let oracle = SemiStrongOracle::new(e_rows, inner, b, set.clone(), seed)?;
    Ok((oracle, set))
}

/// Semi-strong contraction of one projected gradient step, measured to the
/// minimizer set with the oracle's certified growth constant.
fn semi_contraction_suite() -> Result<Vec<CheckResult>> {
    let mut rng = SeededRng::new(0x5E11_1C0D);
    let total = 500;
    let mut worst_excess = f64::NEG_INFINITY;
    let mut failures = 0;
    let mut detail = String::new();
    for i in 0..total {
        let (oracle, set) = random_semi_oracle(&mut rng, 0xBEEF + i as u64)?;
        let beta = oracle.semi_strong().unwrap();
        let smooth = oracle.smoothness().unwrap();
        let eta = (1.0 / smooth) * rng.uniform_in(0.3, 1.0);
        let gamma = (1.0 - beta / (1.0 / eta + beta)).sqrt();
        let u = set.project(&rng.normal_vector(oracle.dim()).scale(1.2));
        let v = set.project(&u.add_scaled(-eta, &oracle.gradient(&u)));
        let lhs = oracle.minimizer_set_distance(&v)?;
        let rhs = gamma * oracle.minimizer_set_distance(&u)? + 1e-9;
        worst_excess = worst_excess.max(lhs - rhs);
        if lhs > rhs {
            failures += 1;
            if detail.is_empty() {
                detail = format!(
                    "instance {i}: dist(v) = {lhs} > gamma dist(u) + 1e-9 = {rhs} (beta {beta})"
                );
            }
        }
    }
    Ok(vec![check(
        format!("minimizer-set contraction on {total} semi-strong instances"),
        failures == 0,
        if failures == 0 {
            format!("worst excess {worst_excess:.3e}")
        } else {
            format!("{failures} failures; first: {detail}")
        },
    )])
}

fn random_barrier_oracle(rng: &mut SeededRng) -> SelfConcordantOracle {
    let dim = 1 + rng.index(3);
    let half = rng.uniform_in(1.0, 3.0);
    let eigs: Vec<f64> = (0..dim).map(|_| rng.uniform_in(0.3, 2.0)).collect();
    let b = rng.normal_vector(dim).scale(0.2 * half);
    let lower = Vector::from_fn(dim, |_| -half);
    let upper = Vector::from_fn(dim, |_| half);
    SelfConcordantOracle::new(
        SymMatrix::diag(&eigs),
        b,
        0.0,
        SelfConcordantOracle::box_barriers(&lower, &upper),
        Vector::zeros(dim),
    )
    .expect("strictly feasible witness")
}

fn interior_point(rng: &mut SeededRng, oracle: &SelfConcordantOracle) -> Vector {
    // Uniform in the barrier box shrunk by 10%.
    let dim = oracle.dim();
    loop {
        let x = Vector::from_fn(dim, |_| rng.uniform_in(-0.9, 0.9));
        // Scale into the box via the first barrier offsets (symmetric box).
        let half = oracle.barriers()[0].1;
        let x = x.scale(half);
        if oracle.min_slack(&x) > 0.05 * half {
            return x;
        }
    }
}

/// Decrement decay of one damped Newton step: `lambda(v) <= 2 lambda(u)^2`.
fn decrement_bound_suite() -> Result<Vec<CheckResult>> {
    let mut rng = SeededRng::new(0xDEC0_0001);
    let total = 500;
    let mut worst_excess = f64::NEG_INFINITY;
    let mut failures = 0;
    let mut detail = String::new();
    for i in 0..total {
        let oracle = random_barrier_oracle(&mut rng);
        let u = interior_point(&mut rng, &oracle);
        let lam_u = newton_decrement(&oracle, &u)?;
        let v = damped_newton_step(&oracle, &u)?;
        let lam_v = newton_decrement(&oracle, &v)?;
        let rhs = 2.0 * lam_u * lam_u + 1e-8;
        worst_excess = worst_excess.max(lam_v - rhs);
        if lam_v > rhs {
            failures += 1;
            if detail.is_empty() {
                detail =
                    format!("point {i}: lambda(v) = {lam_v} > 2 lambda(u)^2 + 1e-8 = {rhs}");
            }
        }
        // The damped step never increases the value.
        if oracle.value(&v) > oracle.value(&u) + 1e-10 {
            failures += 1;
            if detail.is_empty() {
                detail = format!(
                    "point {i}: value increased from {} to {}",
                    oracle.value(&u),
                    oracle.value(&v)
                );
            }
        }
    }
    Ok(vec![check(
        format!("damped-step decrement decay on {total} barrier points"),
        failures == 0,
        if failures == 0 {
            format!("worst excess {worst_excess:.3e}")
        } else {
            format!("{failures} failures; first: {detail}")
        },
    )])
}

/// Decrement-versus-distance bound near the minimizer, the warm-start
/// certificate, and the Dikin Hessian sandwich.
fn newton_suite() -> Result<Vec<CheckResult>> {
    let mut rng = SeededRng::new(0x0EA7_0002);
    let mut checks = Vec::new();

    // lambda(u) <= dist / (1 - 2 dist) whenever dist < 0.45 in the
    // minimizer's Hessian norm.
    let total = 300;
    let mut failures = 0;
    let mut worst = f64::NEG_INFINITY;
    let mut detail = String::new();
    for i in 0..total {
        let oracle = random_barrier_oracle(&mut rng);
        let xstar = crate::functions::solve_min_of(&oracle)?;
        let h = oracle.hessian(&xstar);
        let dir = rng.normal_vector(oracle.dim());
        let norm = h.quad_form(&dir).max(1e-300).sqrt();
        let rho = rng.uniform_in(0.02, 0.45);
        let u = xstar.add_scaled(rho / norm, &dir);
        let dist = hessian_norm(&oracle, &xstar, &(&u - &xstar));
        if dist >= 0.45 {
            continue;
        }
        let lam = newton_decrement(&oracle, &u)?;
        let rhs = dist / (1.0 - 2.0 * dist) + 1e-8;
        worst = worst.max(lam - rhs);
        if lam > rhs {
            failures += 1;
            if detail.is_empty() {
                detail = format!("point {i}: lambda = {lam} > dist/(1-2 dist) + 1e-8 = {rhs}");
            }
        }
    }
    checks.push(check(
        format!("decrement-distance bound on {total} near-minimizer points"),
        failures == 0,
        if failures == 0 {
            format!("worst excess {worst:.3e}")
        } else {
            detail.clone()
        },
    ));

    // Warm start certificate measured against the known minimizer.
    let mut failures = 0;
    let mut detail = String::new();
    for (i, mu) in [1.0, 2.5, 10.0, 100.0].into_iter().enumerate() {
        let oracle = random_barrier_oracle(&mut rng);
        let xstar = crate::functions::solve_min_of(&oracle)?;
        let start = interior_point(&mut rng, &oracle);
        let (warm, _) = crate::learners::omnu_warmstart(&oracle, &start, mu)?;
        let h = oracle.hessian(&xstar);
        let off = &warm - &xstar;
        let lhs = h.quad_form(&off);
        let target = 1.0 / (144.0 * mu) + 1e-10;
        if lhs > target {
            failures += 1;
            if detail.is_empty() {
                detail = format!("mu case {i}: ||z - x*||^2 = {lhs} > 1/(144 mu) = {target}");
            }
        }
    }
    checks.push(check(
        "warm-start certificate at mu in {1, 2.5, 10, 100}",
        failures == 0,
        if failures == 0 { String::new() } else { detail },
    ));

    // Dikin sandwich: (1-r)^2 H(x) <= H(x+h) <= H(x)/(1-r)^2 for r <= 0.9.
    let total = 200;
    let mut failures = 0;
    let mut detail = String::new();
    for i in 0..total {
        let oracle = random_barrier_oracle(&mut rng);
        let x = interior_point(&mut rng, &oracle);
        let dir = rng.normal_vector(oracle.dim());
        let norm = hessian_norm(&oracle, &x, &dir).max(1e-300);
        let r = rng.uniform_in(0.05, 0.9);
        let h_step = dir.scale(r / norm);
        let moved = &x + &h_step;
        let h_x = oracle.hessian(&x);
        let h_moved = oracle.hessian(&moved);
        let upper = max_generalized_eig(&h_moved, &h_x)?;
        let lower = 1.0 / max_generalized_eig(&h_x, &h_moved)?;
        let cap = 1.0 / ((1.0 - r) * (1.0 - r));
        let floor = (1.0 - r) * (1.0 - r);
        if upper > cap * (1.0 + 1e-8) + 1e-8 || lower < floor * (1.0 - 1e-8) - 1e-8 {
            failures += 1;
            if detail.is_empty() {
                detail = format!(
                    "point {i}: spectrum [{lower}, {upper}] outside [{floor}, {cap}] at r = {r}"
                );
            }
        }
    }
    checks.push(check(
        format!("Dikin Hessian sandwich on {total} points"),
        failures == 0,
        if failures == 0 { String::new() } else { detail },
    ));
    Ok(checks)
}

/// Analytic gradients and Hessians against central differences, per oracle
/// family.
fn gradients_suite() -> Result<Vec<CheckResult>> {
    let mut rng = SeededRng::new(0x6AD_0003);
    let mut checks = Vec::new();
    let families: Vec<(&str, Box<dyn Fn(&mut SeededRng) -> (Oracle, Vector)>)> = vec![
        (
            "quadratic",
            Box::new(|rng: &mut SeededRng| {
                let dim = 1 + rng.index(5);
                let eigs: Vec<f64> = (0..dim).map(|_| rng.uniform_in(0.2, 4.0)).collect();
                let q = QuadraticOracle::from_center(
                    SymMatrix::diag(&eigs),
                    &rng.normal_vector(dim),
                )
                .unwrap();
                let x = rng.normal_vector(dim);
                (Oracle::Quadratic(q), x)
            }),
        ),
        (
            "logistic",
            Box::new(|rng: &mut SeededRng| {
                let dim = 1 + rng.index(4);
                let m = 1 + rng.index(5);
                let data: Vec<(Vector, f64)> = (0..m)
                    .map(|_| {
                        let z = rng.normal_vector(dim);
                        (z, if rng.uniform() < 0.5 { 1.0 } else { -1.0 })
                    })
                    .collect();
                let l = LogisticOracle::new(data, rng.uniform_in(0.05, 1.0)).unwrap();
                let x = rng.normal_vector(dim).scale(0.8);
                (Oracle::Logistic(l), x)
            }),
        ),
        (
            "semi_strong",
            Box::new(|rng: &mut SeededRng| {
                let (oracle, set) = random_semi_oracle(rng, 0x600D).unwrap();
                let x = set.project(&rng.normal_vector(oracle.dim()));
                (Oracle::SemiStrong(oracle), x)
            }),
        ),
        (
            "self_concordant",
            Box::new(|rng: &mut SeededRng| {
                let oracle = random_barrier_oracle(rng);
                let x = interior_point(rng, &oracle);
                (Oracle::SelfConcordant(oracle), x)
            }),
        ),
    ];
    for (family, make) in families {
        let mut worst_grad = 0.0_f64;
        let mut worst_hess = 0.0_f64;
        for _ in 0..100 {
            let (oracle, x) = make(&mut rng);
            let g = oracle.gradient(&x);
            let g_fd = finite_diff_gradient(&|p| oracle.value(p), &x, 1e-5)?;
            worst_grad = worst_grad.max((&g - &g_fd).norm() / g.norm().max(1.0));
            let h = oracle.hessian(&x);
            let h_fd = finite_diff_hessian(&|p| oracle.value(p), &x, 1e-4)?;
            worst_hess = worst_hess.max(h.sub(&h_fd).max_abs() / h.max_abs().max(1.0));
        }
        checks.push(check(
            format!("{family}: gradient vs central differences at 100 points"),
            worst_grad <= 1e-5,
            format!("max relative error {worst_grad:.3e}"),
        ));
        checks.push(check(
            format!("{family}: Hessian vs central differences at 100 points"),
            worst_hess <= 1e-5,
            format!("max relative error {worst_hess:.3e}"),
        ));
    }
    Ok(checks)
}

/// Build an experiment through the config-text surface.
pub fn experiment_from_text(text: &str) -> Result<ExperimentConfig> {
    parse(text, None)
}

fn drifting_config(learner: &str, rounds: usize, dim: usize, tau: f64, seed: u64) -> String {
    format!(
        "[scenario]\nkind = drifting_quadratic\nrounds = {rounds}\ndim = {dim}\n\
         tau = {tau}\nseed = {seed}\nset = ball 1.0\n\
         [learner]\nvariant = {learner}\neta = auto\nk = auto\n\
         [report]\nprobe_grid = 32\n"
    )
}

fn semistrong_config(learner: &str, rounds: usize, seed: u64) -> String {
    format!(
        "[scenario]\nkind = semistrong_drift\nrounds = {rounds}\ndim = 3\n\
         tau = 0.02\nseed = {seed}\nset = box -1 1\nrank = 1\n\
         [learner]\nvariant = {learner}\neta = auto\nk = auto\n\
         [report]\nprobe_grid = 32\n"
    )
}

fn selfconcordant_config(rounds: usize, seed: u64) -> String {
    format!(
        "[scenario]\nkind = selfconcordant_drift\nrounds = {rounds}\ndim = 2\n\
         tau = 0.25\nseed = {seed}\nset = whole_space\nbarrier_halfwidth = 2.0\n\
         [learner]\nvariant = omnu\nk = auto\n\
         [report]\nprobe_grid = 16\n"
    )
}

/// End-to-end bound certification on conforming scenario/learner pairings.
fn bounds_suite() -> Result<Vec<CheckResult>> {
    let mut checks = Vec::new();

    // Single-step learner on strongly convex drift.
    let cfg = experiment_from_text(&drifting_config("ogd", 300, 3, 0.4, 11))?;
    let (_, summary) = runner::run(&cfg)?;
    let b = summary.bounds.as_ref().unwrap();
    checks.push(check(
        "ogd on drifting quadratics: path-length bound",
        b.satisfied_p == Some(true),
        format!("regret {} vs bound {:?}", b.regret, b.bound_p),
    ));

    // Multi-step learner: regret below the minimum of both bounds, for
    // several drift exponents.
    for tau in [0.3, 0.5, 0.8] {
        let cfg = experiment_from_text(&drifting_config("omgd", 1000, 5, tau, 4242))?;
        let (_, summary) = runner::run(&cfg)?;
        let b = summary.bounds.as_ref().unwrap();
        let min_bound = b.min_bound().unwrap();
        checks.push(check(
            format!("omgd on drifting quadratics (tau = {tau}): min(path, squared) bound"),
            b.regret <= min_bound + 1e-9 && b.all_satisfied(),
            format!("regret {} vs min bound {min_bound}", b.regret),
        ));
    }

    // The squared-path bound stays O(1) in the horizon at tau = 1/2.
    let b1024 = {
        let cfg = experiment_from_text(&drifting_config("omgd", 1024, 5, 0.5, 4242))?;
        runner::run(&cfg)?.1.bounds.unwrap().bound_s.unwrap()
    };
    let b4096 = {
        let cfg = experiment_from_text(&drifting_config("omgd", 4096, 5, 0.5, 4242))?;
        runner::run(&cfg)?.1.bounds.unwrap().bound_s.unwrap()
    };
    checks.push(check(
        "squared-path bound is horizon-free at tau = 1/2",
        b4096 < 1.1 * b1024,
        format!("bound_s at 4096 rounds {b4096} vs 1024 rounds {b1024}"),
    ));

    // Semi-strong drift: single-step and multi-step bounds.
    let cfg = experiment_from_text(&semistrong_config("ogd", 500, 77))?;
    let (_, summary) = runner::run(&cfg)?;
    let b = summary.bounds.as_ref().unwrap();
    checks.push(check(
        "ogd on semi-strong drift: projection path-length bound",
        b.satisfied_p == Some(true),
        format!("regret {} vs bound {:?}", b.regret, b.bound_p),
    ));
    let cfg = experiment_from_text(&semistrong_config("omgd", 500, 77))?;
    let (_, summary) = runner::run(&cfg)?;
    let b = summary.bounds.as_ref().unwrap();
    let min_bound = b.min_bound().unwrap();
    checks.push(check(
        "omgd on semi-strong drift: min of both bounds",
        b.regret <= min_bound + 1e-9 && b.all_satisfied(),
        format!("regret {} vs min bound {min_bound}", b.regret),
    ));

    // Newton learner on barrier drift.
    let cfg = experiment_from_text(&selfconcordant_config(300, 7))?;
    let (records, summary) = runner::run(&cfg)?;
    let b = summary.bounds.as_ref().unwrap();
    let feasible = records
        .iter()
        .all(|r| r.extras.get(1).map(|s| *s > 0.0).unwrap_or(false));
    checks.push(check(
        "omnu on self-concordant drift: Hessian-weighted bound",
        b.satisfied_selfconcordant == Some(true)
            && feasible
            && summary.learner.warmstart_certified == Some(true),
        format!(
            "regret {} vs bound {:?}, feasible {feasible}, warmstart {:?}",
            b.regret, b.bound_selfconcordant, summary.learner.warmstart_certified
        ),
    ));

    // Zero drift started at the first minimizer: regret 0, all satisfied.
    let text = drifting_config("omgd", 40, 2, 1e9, 3).replace(
        "variant = omgd",
        "variant = omgd\nstart = minimizer",
    );
    let cfg = experiment_from_text(&text)?;
    let (_, summary) = runner::run(&cfg)?;
    let b = summary.bounds.as_ref().unwrap();
    checks.push(check(
        "zero drift from the first minimizer: zero regret, bounds satisfied",
        summary.regret <= 1e-12 && b.all_satisfied(),
        format!("regret {}", summary.regret),
    ));
    Ok(checks)
}

/// Statistical lower-bound check: mean regret and mean squared path of the
/// randomized adversary against their analytic expectations.
fn lower_bound_suite(seeds: usize) -> Result<Vec<CheckResult>> {
    let t = 200usize;
    let d = 3usize;
    let tau = 0.1f64;
    let mut regrets = Vec::with_capacity(seeds);
    let mut squared_paths = Vec::with_capacity(seeds);
    for i in 0..seeds {
        let text = format!(
            "[scenario]\nkind = lowerbound_adversary\nrounds = {t}\ndim = {d}\n\
             tau = {tau}\nseed = {}\nset = ball 1.0\n\
             [learner]\nvariant = ogd\neta = auto\nk = 1\n\
             [report]\nprobe_grid = 4\nbounds = none\n",
            9000 + i as u64
        );
        let cfg = experiment_from_text(&text)?;
        let (_, summary) = runner::run(&cfg)?;
        regrets.push(summary.regret);
        squared_paths.push(summary.regularity.s_star);
    }
    let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
    let mean_regret = mean(&regrets);
    let mean_s = mean(&squared_paths);
    // Expectations: a tracking learner incurs about 2 E[S], and
    // E[S] = 2 d (T-1) tau^2; the floor 0.9 * 4 d T tau^2 captures both
    // the tracking behaviour and the universal 2 d T tau^2 lower bound.
    let regret_floor = 0.9 * 4.0 * d as f64 * t as f64 * tau * tau;
    let s_expect = 2.0 * d as f64 * (t as f64 - 1.0) * tau * tau;
    let mut checks = Vec::new();
    checks.push(check(
        format!("mean adversary regret over {seeds} seeds"),
        mean_regret >= regret_floor,
        format!("mean {mean_regret:.3} vs floor {regret_floor:.3}"),
    ));
    checks.push(check(
        format!("mean squared path within 10% of expectation over {seeds} seeds"),
        (mean_s - s_expect).abs() <= 0.1 * s_expect,
        format!("mean {mean_s:.3} vs expectation {s_expect:.3}"),
    ));
    // Consistency of the measured squared path with a direct recomputation
    // on the last seed.
    let text = format!(
        "[scenario]\nkind = lowerbound_adversary\nrounds = {t}\ndim = {d}\n\
         tau = {tau}\nseed = {}\nset = ball 1.0\n\
         [learner]\nvariant = ogd\neta = auto\nk = 1\n\
         [report]\nprobe_grid = 4\nbounds = none\n",
        9000 + seeds as u64 - 1
    );
    let cfg = experiment_from_text(&text)?;
    let scenario = crate::scenarios::generate(&cfg.scenario)?;
    let direct = squared_path_length(&scenario.minimizers);
    checks.push(check(
        "squared path agrees with direct recomputation",
        (direct - squared_paths[seeds - 1]).abs() <= 1e-9 * direct.max(1.0),
        format!("{direct} vs {}", squared_paths[seeds - 1]),
    ));
    Ok(checks)
}
