//! Regularity measures of the comparator sequence, the curvature ratio,
//! dynamic-regret accounting, and the regret-bound evaluators.

mod bounds;

pub use bounds::{theorem_bounds, BoundInputs, BoundReport, FunctionClass};

use crate::functions::{FeasibleSet, FunctionOracle, Oracle, SemiStrongOracle};
use crate::numerics::{cholesky_factor, max_generalized_eig, SymMatrix, Vector};
use crate::{Error, Result};

/// Per-round path increments: `p` is a distance, `s` its square.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct RoundIncrements {
    pub p: f64,
    pub s: f64,
}

/// Which notion of comparator distance governs an experiment's per-round
/// columns.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PathVariant {
    /// Plain Euclidean distance between consecutive minimizers.
    Euclidean,
    /// Worst-case displacement of the projections onto consecutive
    /// minimizer sets.
    Projection,
    /// Distance in the local Hessian norm at the newer minimizer.
    HessianWeighted,
}

/// Sum of Euclidean distances between consecutive minimizers. Zero for a
/// single point.
pub fn path_length(minimizers: &[Vector]) -> f64 {
    minimizers
        .windows(2)
        .map(|w| (&w[1] - &w[0]).norm())
        .sum()
}

/// Sum of squared distances between consecutive minimizers.
pub fn squared_path_length(minimizers: &[Vector]) -> f64 {
    minimizers
        .windows(2)
        .map(|w| (&w[1] - &w[0]).norm_sq())
        .sum()
}

/// Projection-based path lengths for sequences with non-unique minimizers.
#[derive(Clone, Debug)]
pub struct SemiRegularities {
    pub p: f64,
    pub s: f64,
    /// True when every per-round displacement is exact (singleton minimizer
    /// sets, or parallel affine sets whose projection displacement is
    /// constant). Otherwise the values are sampled lower bounds over the
    /// probe set.
    pub exact: bool,
    /// Per-round worst displacement (first round zero).
    pub increments: Vec<f64>,
}

/// Worst-case displacement between the projections onto consecutive
/// minimizer sets, accumulated over rounds.
///
/// For parallel affine minimizer sets over the whole space the displacement
/// is independent of the probe point and therefore exact; otherwise the max
/// runs over `probes` (plus the set center) and is flagged as an estimate.
pub fn semistrong_regularities(
    oracles: &[SemiStrongOracle],
    set: &FeasibleSet,
    probes: &[Vector],
) -> Result<SemiRegularities> {
    let mut p = 0.0;
    let mut s = 0.0;
    let mut exact = true;
    let mut increments = vec![0.0];
    for w in oracles.windows(2) {
        let (prev, cur) = (&w[0], &w[1]);
        let pair_exact = !set.is_bounded() && same_null_space(prev, cur);
        let mut disp = {
            let anchor = set.center();
            displacement(prev, cur, &anchor)?
        };
        if !pair_exact {
            for probe in probes {
                disp = disp.max(displacement(prev, cur, probe)?);
            }
            exact = false;
        }
        increments.push(disp);
        p += disp;
        s += disp * disp;
    }
    Ok(SemiRegularities {
        p,
        s,
        exact,
        increments,
    })
}

fn displacement(prev: &SemiStrongOracle, cur: &SemiStrongOracle, x: &Vector) -> Result<f64> {
    Ok((&cur.project_minimizer_set(x)? - &prev.project_minimizer_set(x)?).norm())
}

fn same_null_space(a: &SemiStrongOracle, b: &SemiStrongOracle) -> bool {
    let na = a.null_directions();
    let nb = b.null_directions();
    if na.len() != nb.len() {
        return false;
    }
    // Each direction of one basis must be reproduced by projecting onto the
    // other (both bases are orthonormal).
    na.iter().all(|q| {
        let mut proj = Vector::zeros(q.dim());
        for r in nb {
            proj = proj.add_scaled(r.dot(q), r);
        }
        (&proj - q).norm() < 1e-9
    })
}

/// Hessian-weighted path lengths: increments are measured in the norm of
/// the Hessian at the newer round's minimizer,
/// `||x_t - x_{t-1}||_t = sqrt((x_t - x_{t-1})^T H_t (x_t - x_{t-1}))`.
///
/// Returns `(p, s)`; `hessians[t]` must be positive definite.
pub fn hessian_regularities(
    minimizers: &[Vector],
    hessians_at_minimizers: &[SymMatrix],
) -> Result<(f64, f64)> {
    let incs = hessian_increments(minimizers, hessians_at_minimizers)?;
    let p = incs.iter().sum();
    let s = incs.iter().map(|v| v * v).sum();
    Ok((p, s))
}

/// Per-round Hessian-weighted increments (first round zero).
pub fn hessian_increments(
    minimizers: &[Vector],
    hessians_at_minimizers: &[SymMatrix],
) -> Result<Vec<f64>> {
    if minimizers.len() != hessians_at_minimizers.len() {
        return Err(Error::DimensionMismatch {
            expected: minimizers.len(),
            got: hessians_at_minimizers.len(),
        });
    }
    let mut incs = vec![0.0];
    for t in 1..minimizers.len() {
        let h = &hessians_at_minimizers[t];
        cholesky_factor(h)?;
        let d = &minimizers[t] - &minimizers[t - 1];
        incs.push(h.quad_form(&d).max(0.0).sqrt());
    }
    Ok(incs)
}

/// Curvature ratio: the largest generalized eigenvalue comparing each
/// round's Hessian (at its minimizer) against the previous round's.
pub fn mu(hessians_at_minimizers: &[SymMatrix]) -> Result<f64> {
    if hessians_at_minimizers.len() < 2 {
        return Err(Error::InvalidArgument(
            "curvature ratio needs at least two rounds".into(),
        ));
    }
    let mut worst = f64::NEG_INFINITY;
    for w in hessians_at_minimizers.windows(2) {
        worst = worst.max(max_generalized_eig(&w[1], &w[0])?);
    }
    Ok(worst)
}

/// Cumulative functional and gradient variation across the sequence.
#[derive(Clone, Debug)]
pub struct VariationEstimates {
    pub functional: f64,
    pub gradient: f64,
    /// True when every increment was evaluated in closed form (consecutive
    /// quadratics sharing their curvature matrix); otherwise both values
    /// are sampled lower bounds over the probe set.
    pub exact: bool,
}

/// Estimate `sum_t max_x |f_t - f_{t-1}|` and
/// `sum_t max_x ||grad f_t - grad f_{t-1}||^2`.
///
/// Consecutive quadratics sharing `A` differ by an affine function, so both
/// maxima have closed forms (the gradient difference is constant). All
/// other pairs are sampled over the probes.
pub fn variation_estimates(
    oracles: &[Oracle],
    set: &FeasibleSet,
    probes: &[Vector],
) -> VariationEstimates {
    let mut functional = 0.0;
    let mut gradient = 0.0;
    let mut exact = true;
    for w in oracles.windows(2) {
        if let (Oracle::Quadratic(prev), Oracle::Quadratic(cur)) = (&w[0], &w[1]) {
            if prev.matrix().sub(cur.matrix()).max_abs()
                <= 1e-12 * prev.matrix().max_abs().max(1.0)
            {
                // f_t - f_{t-1} = -2 (b_t - b_{t-1})^T x + (c_t - c_{t-1});
                // the gradient difference is the constant -2 delta_b.
                let delta_b = cur.linear_term() - prev.linear_term();
                gradient += 4.0 * delta_b.norm_sq();
                functional += affine_abs_max(&delta_b.scale(-2.0), delta_gap(prev, cur), set);
                continue;
            }
        }
        exact = false;
        let mut f_max = 0.0_f64;
        let mut g_max = 0.0_f64;
        for probe in probes {
            // Probes must lie in both domains (barrier domains drift).
            if !w[0].in_domain(probe) || !w[1].in_domain(probe) {
                continue;
            }
            let df = (w[1].value(probe) - w[0].value(probe)).abs();
            if df.is_finite() {
                f_max = f_max.max(df);
            }
            g_max = g_max.max((&w[1].gradient(probe) - &w[0].gradient(probe)).norm_sq());
        }
        functional += f_max;
        gradient += g_max;
    }
    VariationEstimates {
        functional,
        gradient,
        exact,
    }
}

fn delta_gap(
    prev: &crate::functions::QuadraticOracle,
    cur: &crate::functions::QuadraticOracle,
) -> f64 {
    // Constant offset of f_cur - f_prev, read at the origin.
    let origin = Vector::zeros(prev.dim());
    cur.value(&origin) - prev.value(&origin)
}

/// Max of `|coef^T x + offset|` over the set; infinite over the whole space
/// unless the linear part vanishes.
fn affine_abs_max(coef: &Vector, offset: f64, set: &FeasibleSet) -> f64 {
    if coef.norm() <= 1e-300 {
        return offset.abs();
    }
    match set {
        FeasibleSet::WholeSpace { .. } => f64::INFINITY,
        FeasibleSet::Ball { center, radius } => {
            (coef.dot(center) + offset).abs() + coef.norm() * radius
        }
        FeasibleSet::Box { lower, upper } => {
            let center = set.center();
            let mut spread = 0.0;
            for i in 0..coef.dim() {
                spread += coef[i].abs() * 0.5 * (upper[i] - lower[i]);
            }
            (coef.dot(&center) + offset).abs() + spread
        }
    }
}

/// Dynamic regret: the sum of per-round loss gaps
/// `f_t(x_t) - min_x f_t(x)`.
///
/// Solver round-off can push a gap slightly negative; gaps are clamped at
/// zero, but anything below `-1e-9` means the stored minimizer was not
/// minimal and raises [`Error::NegativeGap`].
pub fn dynamic_regret(losses_at_iterates: &[f64], losses_at_minimizers: &[f64]) -> Result<f64> {
    if losses_at_iterates.len() != losses_at_minimizers.len() {
        return Err(Error::DimensionMismatch {
            expected: losses_at_iterates.len(),
            got: losses_at_minimizers.len(),
        });
    }
    let mut total = 0.0;
    for (t, (&at, &min)) in losses_at_iterates
        .iter()
        .zip(losses_at_minimizers)
        .enumerate()
    {
        let gap = at - min;
        if gap < -1e-9 {
            return Err(Error::NegativeGap { gap, round: t + 1 });
        }
        total += gap.max(0.0);
    }
    Ok(total)
}

/// Cumulative regularity measures for one experiment.
#[derive(Clone, Debug)]
pub struct RegularityReport {
    /// Euclidean path-length of the minimizer sequence.
    pub p_star: f64,
    /// Euclidean squared path-length.
    pub s_star: f64,
    /// Projection-based variants (semi-strong sequences only).
    pub p_semi: Option<f64>,
    pub s_semi: Option<f64>,
    pub semi_exact: bool,
    /// Hessian-weighted variants (when all Hessians at minimizers are PD).
    pub p_hess: Option<f64>,
    pub s_hess: Option<f64>,
    /// Functional and gradient variation.
    pub f_var: f64,
    pub g_var: f64,
    pub variation_exact: bool,
    /// Curvature ratio across consecutive rounds.
    pub mu: Option<f64>,
    /// Gradient bound over the feasible set (when finite).
    pub grad_const: Option<f64>,
    /// Which variant populates `per_round`.
    pub variant: PathVariant,
    /// Governing per-round increments (entry 0 is zero).
    pub per_round: Vec<RoundIncrements>,
}

impl RegularityReport {
    /// The governing path-length pair for the report's variant.
    pub fn governing(&self) -> (f64, f64) {
        match self.variant {
            PathVariant::Euclidean => (self.p_star, self.s_star),
            PathVariant::Projection => (
                self.p_semi.unwrap_or(self.p_star),
                self.s_semi.unwrap_or(self.s_star),
            ),
            PathVariant::HessianWeighted => (
                self.p_hess.unwrap_or(self.p_star),
                self.s_hess.unwrap_or(self.s_star),
            ),
        }
    }
}

/// Assemble the full regularity report for a sequence of losses with known
/// per-round minimizers.
pub fn build_report(
    oracles: &[Oracle],
    set: &FeasibleSet,
    minimizers: &[Vector],
    probes: &[Vector],
    variant: PathVariant,
) -> Result<RegularityReport> {
    if oracles.len() != minimizers.len() {
        return Err(Error::DimensionMismatch {
            expected: oracles.len(),
            got: minimizers.len(),
        });
    }
    let p_star = path_length(minimizers);
    let s_star = squared_path_length(minimizers);

    let semis: Vec<&SemiStrongOracle> = oracles
        .iter()
        .filter_map(|o| match o {
            Oracle::SemiStrong(s) => Some(s),
            _ => None,
        })
        .collect();
    let semi = if semis.len() == oracles.len() && !oracles.is_empty() {
        let owned: Vec<SemiStrongOracle> = semis.into_iter().cloned().collect();
        Some(semistrong_regularities(&owned, set, probes)?)
    } else {
        None
    };

    let hessians: Vec<SymMatrix> = oracles
        .iter()
        .zip(minimizers)
        .map(|(o, m)| o.hessian(m))
        .collect();
    let hess = hessian_regularities(minimizers, &hessians).ok();
    let mu_val = mu(&hessians).ok();

    let variation = variation_estimates(oracles, set, probes);

    let grad_const = oracles
        .iter()
        .map(|o| crate::functions::gradient_bound(o, set))
        .try_fold(0.0_f64, |acc, g| g.map(|g| acc.max(g)))
        .ok();

    let per_round: Vec<RoundIncrements> = match variant {
        PathVariant::Euclidean => std::iter::once(0.0)
            .chain(minimizers.windows(2).map(|w| (&w[1] - &w[0]).norm()))
            .map(|p| RoundIncrements { p, s: p * p })
            .collect(),
        PathVariant::Projection => semi
            .as_ref()
            .map(|s| {
                s.increments
                    .iter()
                    .map(|&p| RoundIncrements { p, s: p * p })
                    .collect()
            })
            .unwrap_or_default(),
        PathVariant::HessianWeighted => hessian_increments(minimizers, &hessians)?
            .into_iter()
            .map(|p| RoundIncrements { p, s: p * p })
            .collect(),
    };

    Ok(RegularityReport {
        p_star,
        s_star,
        p_semi: semi.as_ref().map(|s| s.p),
        s_semi: semi.as_ref().map(|s| s.s),
        semi_exact: semi.as_ref().map(|s| s.exact).unwrap_or(false),
        p_hess: hess.map(|(p, _)| p),
        s_hess: hess.map(|(_, s)| s),
        f_var: variation.functional,
        g_var: variation.gradient,
        variation_exact: variation.exact,
        mu: mu_val,
        grad_const,
        variant,
        per_round,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::QuadraticOracle;
    use crate::numerics::SeededRng;

    fn points(coords: &[&[f64]]) -> Vec<Vector> {
        coords.iter().map(|c| Vector::new(c.to_vec())).collect()
    }

    #[test]
    fn path_lengths_of_simple_sequences() {
        let constant = points(&[&[1.0, 1.0], &[1.0, 1.0], &[1.0, 1.0]]);
        assert_eq!(path_length(&constant), 0.0);
        assert_eq!(squared_path_length(&constant), 0.0);

        let steps = points(&[&[0.0, 0.0], &[1.0, 0.0], &[1.0, 1.0]]);
        assert_eq!(path_length(&steps), 2.0);
        assert_eq!(squared_path_length(&steps), 2.0);

        let single = points(&[&[4.0]]);
        assert_eq!(path_length(&single), 0.0);
    }

    #[test]
    fn uniform_drift_matches_square_root_scaling() {
        // 101 points stepping 100^{-1/2} = 0.1 each: path 10, squared path 1.
        let t = 100usize;
        let step = (t as f64).powf(-0.5);
        let mut pts = vec![Vector::zeros(2)];
        for k in 1..=t {
            pts.push(Vector::new(vec![step * k as f64, 0.0]));
        }
        assert!((path_length(&pts) - 10.0).abs() < 1e-12);
        assert!((squared_path_length(&pts) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn hessian_weighted_scalar_case() {
        // d = 1, Hessians (2, 8) on rounds 2 and 3, displacements 1 and 0.5:
        // p = sqrt(1 * 2) + sqrt(0.25 * 8) = 2 sqrt(2), s = 2 + 2 = 4.
        let mins = points(&[&[0.0], &[1.0], &[1.5]]);
        let hessians = vec![
            SymMatrix::diag(&[5.0]),
            SymMatrix::diag(&[2.0]),
            SymMatrix::diag(&[8.0]),
        ];
        let (p, s) = hessian_regularities(&mins, &hessians).unwrap();
        assert!((p - 2.0 * 2.0_f64.sqrt()).abs() < 1e-12);
        assert!((s - 4.0).abs() < 1e-12);
    }

    #[test]
    fn identity_hessians_reduce_to_euclidean() {
        let mins = points(&[&[0.0, 0.0], &[1.0, 0.0], &[1.0, 1.0]]);
        let hessians = vec![SymMatrix::identity(2); 3];
        let (p, s) = hessian_regularities(&mins, &hessians).unwrap();
        assert!((p - path_length(&mins)).abs() < 1e-12);
        assert!((s - squared_path_length(&mins)).abs() < 1e-12);
        // Doubling the Hessians scales p by sqrt(2) and s by 2.
        let doubled = vec![SymMatrix::identity(2).scale(2.0); 3];
        let (p2, s2) = hessian_regularities(&mins, &doubled).unwrap();
        assert!((p2 - 2.0_f64.sqrt() * p).abs() < 1e-12);
        assert!((s2 - 2.0 * s).abs() < 1e-12);
    }

    #[test]
    fn curvature_ratio_cases() {
        let same = vec![SymMatrix::identity(2); 3];
        assert!((mu(&same).unwrap() - 1.0).abs() < 1e-10);
        let grown = vec![SymMatrix::identity(2), SymMatrix::identity(2).scale(2.0)];
        assert!((mu(&grown).unwrap() - 2.0).abs() < 1e-10);
        // Scaling every Hessian leaves the ratio unchanged.
        let mut rng = SeededRng::new(3);
        let seq: Vec<SymMatrix> = (0..4)
            .map(|_| {
                let d1 = rng.uniform_in(0.5, 2.0);
                let d2 = rng.uniform_in(0.5, 2.0);
                SymMatrix::diag(&[d1, d2])
            })
            .collect();
        let scaled: Vec<SymMatrix> = seq.iter().map(|h| h.scale(7.3)).collect();
        assert!((mu(&seq).unwrap() - mu(&scaled).unwrap()).abs() < 1e-9);
    }

    #[test]
    fn variation_closed_form_for_shared_curvature() {
        let a = SymMatrix::diag(&[1.0, 2.0]);
        let set = FeasibleSet::new_ball(Vector::zeros(2), 2.0).unwrap();
        let centers = points(&[&[0.0, 0.0], &[0.5, 0.0], &[0.5, -0.25]]);
        let oracles: Vec<Oracle> = centers
            .iter()
            .map(|c| Oracle::Quadratic(QuadraticOracle::from_center(a.clone(), c).unwrap()))
            .collect();
        let est = variation_estimates(&oracles, &set, &[]);
        assert!(est.exact);
        // Gradient increments: 4 ||A delta_c||^2 per round.
        let expect_g = 4.0 * a.matvec(&(&centers[1] - &centers[0])).norm_sq()
            + 4.0 * a.matvec(&(&centers[2] - &centers[1])).norm_sq();
        assert!((est.gradient - expect_g).abs() < 1e-12);
        // Identical oracles contribute nothing.
        let twice = vec![oracles[0].clone(), oracles[0].clone()];
        let zero = variation_estimates(&twice, &set, &[]);
        assert_eq!(zero.functional, 0.0);
        assert_eq!(zero.gradient, 0.0);
    }

    #[test]
    fn sampled_variation_grows_with_probes() {
        let set = FeasibleSet::new_ball(Vector::zeros(2), 1.5).unwrap();
        let o1 = Oracle::Quadratic(
            QuadraticOracle::from_center(SymMatrix::diag(&[1.0, 1.0]), &Vector::zeros(2))
                .unwrap(),
        );
        let o2 = Oracle::Quadratic(
            QuadraticOracle::from_center(
                SymMatrix::diag(&[2.0, 1.0]),
                &Vector::new(vec![0.3, 0.0]),
            )
            .unwrap(),
        );
        let seq = vec![o1, o2];
        let mut rng = SeededRng::new(11);
        let few: Vec<Vector> = (0..4).map(|_| set.sample(&mut rng)).collect();
        let mut more = few.clone();
        more.extend((0..60).map(|_| set.sample(&mut rng)));
        let est_few = variation_estimates(&seq, &set, &few);
        let est_more = variation_estimates(&seq, &set, &more);
        assert!(!est_few.exact);
        assert!(est_more.functional >= est_few.functional);
        assert!(est_more.gradient >= est_few.gradient);
    }

    #[test]
    fn singleton_minimizer_sets_reduce_to_plain_path_lengths() {
        // Full-rank factor: every minimizer set is a point, so the
        // projection-based lengths equal the Euclidean ones.
        use crate::functions::SemiStrongOracle;
        let set = FeasibleSet::new_whole_space(2);
        let mut rng = SeededRng::new(41);
        let oracles: Vec<SemiStrongOracle> = (0..4)
            .map(|k| {
                let anchor = rng.normal_vector(2);
                let rows = vec![Vector::basis(2, 0), Vector::basis(2, 1)];
                let inner = SymMatrix::diag(&[1.0, 1.5]);
                let h = SymMatrix::diag(&[2.0, 3.0]);
                let b = h.matvec(&anchor).scale(-1.0);
                SemiStrongOracle::new(rows, inner, b, set.clone(), 100 + k).unwrap()
            })
            .collect();
        let minimizers: Vec<Vector> = oracles
            .iter()
            .map(|o| o.representative_minimizer().clone())
            .collect();
        let reg = semistrong_regularities(&oracles, &set, &[]).unwrap();
        assert!(reg.exact);
        assert!((reg.p - path_length(&minimizers)).abs() < 1e-9);
        assert!((reg.s - squared_path_length(&minimizers)).abs() < 1e-9);
    }

    #[test]
    fn sampled_variation_skips_out_of_domain_probes() {
        use crate::functions::SelfConcordantOracle;
        let lower = Vector::new(vec![-1.0, -1.0]);
        let upper = Vector::new(vec![1.0, 1.0]);
        let base = SelfConcordantOracle::new(
            SymMatrix::identity(2).scale(0.5),
            Vector::zeros(2),
            0.0,
            SelfConcordantOracle::box_barriers(&lower, &upper),
            Vector::zeros(2),
        )
        .unwrap();
        // Far translation: the two domains barely overlap, and probes from
        // either domain are infeasible for the other.
        let moved = base.translated(&Vector::new(vec![1.5, 0.0]));
        let oracles = vec![
            Oracle::SelfConcordant(base),
            Oracle::SelfConcordant(moved),
        ];
        let probes = vec![
            Vector::new(vec![0.0, 0.0]),  // only in the first domain
            Vector::new(vec![1.5, 0.0]),  // only in the second
            Vector::new(vec![0.75, 0.0]), // in both
            Vector::new(vec![5.0, 5.0]),  // in neither
        ];
        let set = FeasibleSet::new_whole_space(2);
        let est = variation_estimates(&oracles, &set, &probes);
        assert!(!est.exact);
        assert!(est.functional.is_finite());
        assert!(est.gradient.is_finite());
        assert!(est.gradient > 0.0);
    }

    #[test]
    fn regret_accounting() {
        assert_eq!(dynamic_regret(&[1.0, 2.0], &[1.0, 2.0]).unwrap(), 0.0);
        assert_eq!(dynamic_regret(&[1.0], &[0.0]).unwrap(), 1.0);
        // Tiny negative gaps are absorbed.
        assert_eq!(dynamic_regret(&[1.0 - 1e-13], &[1.0]).unwrap(), 0.0);
        // Real negativity is an error naming the round.
        match dynamic_regret(&[0.0, 1.0], &[0.0, 2.0]) {
            Err(Error::NegativeGap { round, .. }) => assert_eq!(round, 2),
            other => panic!("expected NegativeGap, got {other:?}"),
        }
    }

    #[test]
    fn per_round_increments_sum_to_cumulative() {
        let a = SymMatrix::diag(&[1.0, 1.5]);
        let set = FeasibleSet::new_ball(Vector::zeros(2), 3.0).unwrap();
        let mut rng = SeededRng::new(17);
        let centers: Vec<Vector> = (0..8).map(|_| rng.normal_vector(2).scale(0.4)).collect();
        let oracles: Vec<Oracle> = centers
            .iter()
            .map(|c| Oracle::Quadratic(QuadraticOracle::from_center(a.clone(), c).unwrap()))
            .collect();
        let report =
            build_report(&oracles, &set, &centers, &[], PathVariant::Euclidean).unwrap();
        let p_sum: f64 = report.per_round.iter().map(|r| r.p).sum();
        let s_sum: f64 = report.per_round.iter().map(|r| r.s).sum();
        assert!((p_sum - report.p_star).abs() <= 1e-12 * report.p_star.max(1.0));
        assert!((s_sum - report.s_star).abs() <= 1e-12 * report.s_star.max(1.0));
        // Squared increments are the squares of the path increments.
        for r in &report.per_round {
            assert!((r.s - r.p * r.p).abs() <= 1e-12 * r.s.max(1.0));
        }
        assert!(report.grad_const.is_some());
        assert!(report.mu.is_some());
    }
}
