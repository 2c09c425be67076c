//! Deterministic one-dimensional numerics: adaptive quadrature with certified
//! absolute error estimates, improper integrals driven by analytic tail
//! bounds, bisection root finding and golden-section minimization.
//!
//! Everything here is plain `f64`. The adaptive scheme pairs a 7-point Gauss
//! rule with its 15-point Kronrod extension and splits intervals left to
//! right, so results are bit-identical from run to run.

use crate::error::{Error, Result};

/// Absolute tolerances used across the crate, with the defaults the rest of
/// the pipeline was tuned against.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToleranceConfig {
    /// Absolute tolerance for a single definite integral.
    pub quad_abs_tol: f64,
    /// Bracket width at which bisection stops.
    pub root_tol: f64,
    /// Bracket width at which golden-section search stops.
    pub minimize_tol: f64,
    /// Total number of interval splits one integral may spend.
    pub max_subdivisions: u32,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        ToleranceConfig {
            quad_abs_tol: 1e-10,
            root_tol: 1e-12,
            minimize_tol: 1e-9,
            max_subdivisions: 10_000,
        }
    }
}

/// Value of an integral together with a certified absolute error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    /// Upper estimate of |value - true integral|; never negative.
    pub error_estimate: f64,
}

// 15-point Kronrod abscissae on [0, 1] side of the symmetric rule. The even
// indices (0, 2, 4, 6) are the Kronrod-only points, the odd ones are the
// embedded 7-point Gauss nodes, and the last entry is the midpoint.
const XGK: [f64; 8] = [
    0.991455371120813,
    0.949107912342759,
    0.864864423359769,
    0.741531185599394,
    0.586087235467691,
    0.405845151377397,
    0.207784955007898,
    0.0,
];

const WGK: [f64; 8] = [
    0.022935322010529,
    0.063092092629979,
    0.104790010322250,
    0.140653259715525,
    0.169004726639267,
    0.190350578064785,
    0.204432940075298,
    0.209482141084728,
];

const WG: [f64; 4] = [
    0.129484966168870,
    0.279705391489277,
    0.381830050505119,
    0.417959183673469,
];

/// One Gauss-Kronrod 7/15 evaluation on [a, b]. Returns the Kronrod value,
/// the plain |K15 - G7| discrepancy (which overestimates the Kronrod error
/// for every integrand in this crate), and the Kronrod estimate of the
/// integral of |f|, used to recognize when the discrepancy has hit the
/// roundoff floor of the evaluations themselves.
fn gauss_kronrod_15(f: &mut dyn FnMut(f64) -> f64, a: f64, b: f64) -> (f64, f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);

    let fc = f(center);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    let mut resabs = WGK[7] * fc.abs();
    for (j, &x) in XGK.iter().enumerate().take(7) {
        let dx = half * x;
        let (fl, fr) = (f(center - dx), f(center + dx));
        kronrod += WGK[j] * (fl + fr);
        resabs += WGK[j] * (fl.abs() + fr.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (fl + fr);
        }
    }
    let value = kronrod * half;
    (
        value,
        (kronrod - gauss).abs() * half.abs(),
        resabs * half.abs(),
    )
}

/// Integrate `f` over [a, b] to absolute tolerance `tol`.
///
/// Subdivision is strictly left to right with the tolerance budget halved at
/// each split, so the accumulated error estimate is below `tol` whenever the
/// call succeeds. Endpoints are never evaluated (the rule is open), which
/// lets integrands with integrable endpoint kinks pass through unharmed.
pub fn integrate<F>(mut f: F, a: f64, b: f64, tol: f64, max_subdivisions: u32) -> Result<QuadratureResult>
where
    F: FnMut(f64) -> f64,
{
    if !(a <= b) {
        return Err(Error::InvalidInterval { lo: a, hi: b });
    }
    if a == b {
        return Ok(QuadratureResult {
            value: 0.0,
            error_estimate: 0.0,
        });
    }

    // Explicit stack keeps the traversal order fixed: (lo, hi, budget).
    let mut stack: Vec<(f64, f64, f64)> = vec![(a, b, tol)];
    let mut value = 0.0;
    let mut err_acc = 0.0;
    let mut splits: u32 = 0;
    let mut worst = f64::INFINITY;

    while let Some((lo, hi, budget)) = stack.pop() {
        let (v, e, resabs) = gauss_kronrod_15(&mut f, lo, hi);
        let width = hi - lo;
        // Cells narrower than a few ulps cannot be refined further; their
        // estimate is taken as is and audited against the total below. The
        // same goes for cells whose discrepancy is at the roundoff floor of
        // the evaluations: splitting shrinks the budget as fast as the
        // noise, so refinement can never terminate past that point.
        let floor = f64::EPSILON * lo.abs().max(hi.abs()).max(1.0) * 4.0;
        let noise_floor = 50.0 * f64::EPSILON * resabs;
        if e <= budget || e <= noise_floor || width <= floor {
            value += v;
            err_acc += e;
            continue;
        }
        if splits >= max_subdivisions {
            worst = worst.min(e);
            return Err(Error::SubdivisionLimit {
                tol,
                limit: max_subdivisions,
                best: worst,
            });
        }
        splits += 1;
        let mid = 0.5 * (lo + hi);
        let half_budget = 0.5 * budget;
        // Push right first so the left half is processed next.
        stack.push((mid, hi, half_budget));
        stack.push((lo, mid, half_budget));
    }

    if err_acc > tol {
        return Err(Error::SubdivisionLimit {
            tol,
            limit: max_subdivisions,
            best: err_acc,
        });
    }
    Ok(QuadratureResult {
        value,
        error_estimate: err_acc,
    })
}

/// Integrate over [points[0], points[last]] with forced breakpoints, giving
/// every panel an equal share of the tolerance.
///
/// Callers use this to hand the integrator known kinks (absolute values of
/// oscillating derivatives), branch switches, and oscillation periods, which
/// keeps the adaptive part shallow.
pub fn integrate_piecewise<F>(
    mut f: F,
    points: &[f64],
    tol: f64,
    max_subdivisions: u32,
) -> Result<QuadratureResult>
where
    F: FnMut(f64) -> f64,
{
    if points.len() < 2 {
        return Err(Error::InvalidInterval {
            lo: f64::NAN,
            hi: f64::NAN,
        });
    }
    let panels = points.len() - 1;
    let panel_tol = tol / panels as f64;
    let mut value = 0.0;
    let mut err = 0.0;
    for w in points.windows(2) {
        let r = integrate(&mut f, w[0], w[1], panel_tol, max_subdivisions)?;
        value += r.value;
        err += r.error_estimate;
    }
    Ok(QuadratureResult {
        value,
        error_estimate: err,
    })
}

/// Integrate `f` over [a, infinity).
///
/// `tail_bound(T)` must bound |integral of f over [T, infinity)| from above
/// and tend to zero; the truncation point doubles until the bound is below
/// tol/2, then [a, T*] is integrated with geometrically growing panels so
/// boundary-layer integrands are resolved near `a`. The discarded tail is
/// charged to the error estimate, not added to the value.
pub fn integrate_improper_upper<F, G>(
    mut f: F,
    a: f64,
    tail_bound: G,
    tol: f64,
    max_subdivisions: u32,
) -> Result<QuadratureResult>
where
    F: FnMut(f64) -> f64,
    G: Fn(f64) -> f64,
{
    let t_star = improper_truncation_point(&tail_bound, a, tol, 1.0)?;
    integrate_truncated(&mut f, a, t_star, &tail_bound, tol, max_subdivisions)
}

/// Same as [`integrate_improper_upper`] but with the initial truncation point
/// scaled by `t_scale`. Used by stability tests that double the truncation
/// and assert the value does not move.
pub fn integrate_improper_upper_scaled<F, G>(
    mut f: F,
    a: f64,
    tail_bound: G,
    tol: f64,
    max_subdivisions: u32,
    t_scale: f64,
) -> Result<QuadratureResult>
where
    F: FnMut(f64) -> f64,
    G: Fn(f64) -> f64,
{
    let t_star = improper_truncation_point(&tail_bound, a, tol, t_scale)?;
    integrate_truncated(&mut f, a, t_star, &tail_bound, tol, max_subdivisions)
}

fn improper_truncation_point<G>(tail_bound: &G, a: f64, tol: f64, t_scale: f64) -> Result<f64>
where
    G: Fn(f64) -> f64,
{
    let threshold = 0.5 * tol;
    let mut t_star = (2.0 * a).max(a + 1.0).max(1.0);
    let mut last = f64::INFINITY;
    for _ in 0..200 {
        last = tail_bound(t_star);
        // Written negated so a NaN from a not-yet-valid bound keeps doubling.
        if last <= threshold {
            return Ok(t_star * t_scale);
        }
        t_star *= 2.0;
    }
    Err(Error::TailDivergence {
        threshold,
        last,
        at: t_star,
    })
}

fn integrate_truncated<G>(
    f: &mut dyn FnMut(f64) -> f64,
    a: f64,
    t_star: f64,
    tail_bound: &G,
    tol: f64,
    max_subdivisions: u32,
) -> Result<QuadratureResult>
where
    G: Fn(f64) -> f64,
{
    // Panel edges at a + (2^k - 1): dense where decaying integrands live.
    let mut points = vec![a];
    let mut step = 1.0;
    while a + step < t_star {
        points.push(a + step);
        step *= 2.0;
    }
    points.push(t_star);
    let r = integrate_piecewise(f, &points, 0.5 * tol, max_subdivisions)?;
    Ok(QuadratureResult {
        value: r.value,
        error_estimate: r.error_estimate + tail_bound(t_star),
    })
}

/// Bisection on [lo, hi]; needs a sign change and returns the midpoint of the
/// final bracket once its width is at most `tol`.
pub fn find_root<F>(mut f: F, lo: f64, hi: f64, tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    if !(lo <= hi) {
        return Err(Error::InvalidInterval { lo, hi });
    }
    let mut lo = lo;
    let mut hi = hi;
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo * fhi > 0.0 {
        return Err(Error::NoSignChange { lo, hi, flo, fhi });
    }
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break; // bracket no longer representable
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if flo * fm < 0.0 {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    Ok(0.5 * (lo + hi))
}

const INV_GOLDEN: f64 = 0.618_033_988_749_894_9;

/// Golden-section minimization of a unimodal `f` on [lo, hi]; returns the
/// center of the final bracket once its width is at most `tol`.
pub fn minimize_scalar<F>(mut f: F, lo: f64, hi: f64, tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    if !(lo <= hi) {
        return Err(Error::InvalidInterval { lo, hi });
    }
    let mut a = lo;
    let mut b = hi;
    let mut x1 = b - INV_GOLDEN * (b - a);
    let mut x2 = a + INV_GOLDEN * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..500 {
        if b - a <= tol {
            break;
        }
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_GOLDEN * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_GOLDEN * (b - a);
            f2 = f(x2);
        }
    }
    Ok(0.5 * (a + b))
}

/// Pairwise summation; deterministic and accurate enough for the panel counts
/// used here (error grows like log n instead of n).
pub fn pairwise_sum(values: &[f64]) -> f64 {
    match values.len() {
        0 => 0.0,
        n if n <= 8 => values.iter().sum(),
        n => {
            let mid = n / 2;
            pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
        }
    }
}
