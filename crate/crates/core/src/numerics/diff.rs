//! Independent verification oracles: finite differences and grid search.
//!
//! These deliberately avoid the analytic gradient/Hessian code paths they
//! are used to check.

use super::{SymMatrix, Vector};
use crate::functions::FeasibleSet;
use crate::{Error, Result};

/// Central-difference gradient estimate with stencil width `h`.
///
/// Entry `i` is `(f(x + h e_i) - f(x - h e_i)) / 2h`. Fails with
/// [`Error::NonFiniteValue`] if any stencil point evaluates to NaN or
/// infinity (the stencil left a barrier domain).
pub fn finite_diff_gradient(
    f: &dyn Fn(&Vector) -> f64,
    x: &Vector,
    h: f64,
) -> Result<Vector> {
    let d = x.dim();
    let mut g = vec![0.0; d];
    let mut probe = x.clone();
    for i in 0..d {
        probe[i] = x[i] + h;
        let fp = f(&probe);
        probe[i] = x[i] - h;
        let fm = f(&probe);
        probe[i] = x[i];
        if !fp.is_finite() || !fm.is_finite() {
            return Err(Error::NonFiniteValue {
                context: "finite-difference gradient stencil",
            });
        }
        g[i] = (fp - fm) / (2.0 * h);
    }
    Ok(Vector::new(g))
}

/// Second-order central-difference Hessian estimate, symmetrized.
pub fn finite_diff_hessian(
    f: &dyn Fn(&Vector) -> f64,
    x: &Vector,
    h: f64,
) -> Result<SymMatrix> {
    let d = x.dim();
    let f0 = f(x);
    if !f0.is_finite() {
        return Err(Error::NonFiniteValue {
            context: "finite-difference Hessian center",
        });
    }
    let mut probe = x.clone();
    let mut entries = vec![0.0; d * d];
    for i in 0..d {
        probe[i] = x[i] + h;
        let fp = f(&probe);
        probe[i] = x[i] - h;
        let fm = f(&probe);
        probe[i] = x[i];
        if !fp.is_finite() || !fm.is_finite() {
            return Err(Error::NonFiniteValue {
                context: "finite-difference Hessian stencil",
            });
        }
        entries[i * d + i] = (fp - 2.0 * f0 + fm) / (h * h);
    }
    for i in 0..d {
        for j in 0..i {
            let mut corner = |si: f64, sj: f64| -> f64 {
                probe[i] = x[i] + si * h;
                probe[j] = x[j] + sj * h;
                let v = f(&probe);
                probe[i] = x[i];
                probe[j] = x[j];
                v
            };
            let (fpp, fpm, fmp, fmm) = (
                corner(1.0, 1.0),
                corner(1.0, -1.0),
                corner(-1.0, 1.0),
                corner(-1.0, -1.0),
            );
            if ![fpp, fpm, fmp, fmm].iter().all(|v| v.is_finite()) {
                return Err(Error::NonFiniteValue {
                    context: "finite-difference Hessian stencil",
                });
            }
            let v = (fpp - fpm - fmp + fmm) / (4.0 * h * h);
            entries[i * d + j] = v;
            entries[j * d + i] = v;
        }
    }
    Ok(SymMatrix::from_row_major(d, entries))
}

/// Grid search over a bounded set, followed by repeated local refinement
/// around the incumbent. For convex objectives the first pass lands within
/// one grid cell of the optimum and every refinement pass keeps it inside
/// the shrunken window, so the final point is accurate to roughly the
/// terminal window size.
///
/// Restricted to `d <= 3`; the grid has `resolution^d` points per pass.
pub fn brute_force_min(
    f: &dyn Fn(&Vector) -> f64,
    set: &FeasibleSet,
    resolution: usize,
) -> Result<(Vector, f64)> {
    let d = set.dim();
    if d > 3 {
        return Err(Error::InvalidArgument(format!(
            "brute_force_min supports d <= 3, got {d}"
        )));
    }
    if resolution < 2 {
        return Err(Error::InvalidArgument(
            "brute_force_min needs resolution >= 2".into(),
        ));
    }
    let (orig_lo, orig_hi) = set.bounding_box().ok_or(Error::UnboundedSet)?;

    let mut lo = orig_lo.clone();
    let mut hi = orig_hi.clone();
    let mut best_x = set.project(&lo);
    let mut best_v = f(&best_x);

    let scale = (&orig_hi - &orig_lo).norm().max(1.0);
    for _pass in 0..80 {
        let mut idx = vec![0usize; d];
        loop {
            let cand = Vector::from_fn(d, |k| {
                lo[k] + (hi[k] - lo[k]) * idx[k] as f64 / (resolution - 1) as f64
            });
            let p = set.project(&cand);
            let v = f(&p);
            if v < best_v {
                best_v = v;
                best_x = p;
            }
            // Odometer increment over the d-dimensional grid.
            let mut k = 0;
            loop {
                idx[k] += 1;
                if idx[k] < resolution {
                    break;
                }
                idx[k] = 0;
                k += 1;
                if k == d {
                    break;
                }
            }
            if k == d {
                break;
            }
        }
        // Shrink the window to one cell on each side of the incumbent,
        // clipped to the original box.
        let mut width = 0.0_f64;
        for k in 0..d {
            let cell = (hi[k] - lo[k]) / (resolution - 1) as f64;
            lo[k] = (best_x[k] - cell).max(orig_lo[k]);
            hi[k] = (best_x[k] + cell).min(orig_hi[k]);
            width = width.max(hi[k] - lo[k]);
        }
        if width < 1e-13 * scale {
            break;
        }
    }
    Ok((best_x, best_v))
}
