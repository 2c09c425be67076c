//! Assembly of the cubic remainder certificate C(eta) = alpha1 eta +
//! alpha2 eta^2 + alpha3 eta^3 whose negativity at eta0 is what permits the
//! smoothing scale actually used. The four coefficient families follow the
//! four sources of error: the archimedean terms (c1), the discounted pole
//! terms (q), the zero-density terms (p), and the contour remainder (C4).

use crate::digamma_bounds::{
    psi_diff_bound, re_digamma, u0, u0_second_branch_kink, DigammaBoundParams, Regime,
};
use crate::error::{Error, Result};
use crate::numerics::{integrate_piecewise, pairwise_sum, ToleranceConfig};
use crate::smoothing_kernel::{kernel_constants, m_integral, Theta};
use crate::stechkin_positivity::{solve_delta_kappa, PositivityParams};
use crate::zero_counting::c30_weighted_sum;
use crate::zero_free_region::TrigPolynomial;
use serde::Serialize;
use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Mutex, OnceLock};

/// Default height at which the region constant is anchored.
pub const DEFAULT_T0_CAP: f64 = 3330657430.697;
/// Default lower ordinate cutoff of the region.
pub const DEFAULT_T0: f64 = 1.0;

/// Full parameter state of one pipeline step. R is the region constant the
/// step assumes, r the one it aims for; everything else is derived from the
/// pair except the kernel angle.
#[allow(non_snake_case)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionParams {
    pub T0: f64,
    pub t0: f64,
    pub R: f64,
    pub r: f64,
    pub theta: Theta,
    pub eta0: f64,
    pub sigma0: f64,
    pub kappa: f64,
    pub delta: f64,
}

impl RegionParams {
    /// Derive a step state from the (R, r) pair at the default anchor
    /// height, solving the discount pair along the way.
    pub fn new(big_r: f64, r: f64, theta: Theta) -> Result<Self> {
        Self::with_heights(big_r, r, theta, DEFAULT_T0_CAP, DEFAULT_T0)
    }

    pub fn with_heights(big_r: f64, r: f64, theta: Theta, t0_cap: f64, t0: f64) -> Result<Self> {
        if !(5.0 <= r && r <= big_r) {
            return Err(Error::InvalidParameter {
                reason: format!("need 5 <= r <= R, got r = {r}, R = {big_r}"),
            });
        }
        if !(t0_cap > 1.0 && t0 > 0.0) {
            return Err(Error::InvalidParameter {
                reason: format!("heights (T0, t0) = ({t0_cap}, {t0}) out of range"),
            });
        }
        let eta0 = 1.0 / (r * t0_cap.ln());
        let sigma0 = 1.0 - 1.0 / (big_r * (4.0 * t0_cap + t0).ln());
        let pos = PositivityParams::new(eta0, sigma0, theta, 10.0)?;
        let (delta, kappa) = solve_delta_kappa(&pos)?;
        Ok(RegionParams {
            T0: t0_cap,
            t0,
            R: big_r,
            r,
            theta,
            eta0,
            sigma0,
            kappa,
            delta,
        })
    }
}

/// Coefficients of the remainder cubic and its certified value at eta0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RemainderCubic {
    pub alpha1: f64,
    pub alpha2: f64,
    pub alpha3: f64,
    pub value_at_eta0: f64,
}

impl RemainderCubic {
    pub fn eval(&self, eta: f64) -> f64 {
        ((self.alpha3 * eta + self.alpha2) * eta + self.alpha1) * eta
    }
}

/// Archimedean coefficient for comb line k. The k = 0 line uses exact real
/// digamma values; the lines at height k T0 use the far bound pair evaluated
/// on the strip [sigma0 + 2, 3].
pub fn c1_k(k: usize, p: &RegionParams) -> Result<f64> {
    let RegionParams {
        sigma0,
        kappa,
        delta,
        ..
    } = *p;
    match k {
        0 => Ok(-0.5 * (1.0 - kappa) * PI.ln() + 0.5 * re_digamma(3.0, 0.0)?
            - 0.5 * kappa * re_digamma(sigma0 + delta + 2.0, 0.0)?),
        1..=4 => {
            let bounds =
                DigammaBoundParams::new(sigma0 + 2.0, 3.0, k as f64 * p.T0, kappa, delta)?;
            Ok(-0.5 * (1.0 - kappa) * (2.0 * PI / k as f64).ln()
                + 0.5 * psi_diff_bound(&bounds, Regime::LargeY))
        }
        _ => Err(Error::InvalidParameter {
            reason: format!("comb line index k = {k} outside 0..=4"),
        }),
    }
}

/// Weighted archimedean total: g1 times the comb sum of c1_k.
pub fn c1_coefficient(p: &RegionParams, poly: &TrigPolynomial) -> Result<f64> {
    let g1 = kernel_constants(p.theta).g1;
    let mut terms = [0.0; 5];
    for (k, slot) in terms.iter_mut().enumerate() {
        *slot = poly.a[k] * c1_k(k, p)?;
    }
    Ok(pairwise_sum(&terms) * g1)
}

fn inverse_height_sum(p: &RegionParams, poly: &TrigPolynomial) -> f64 {
    let terms: Vec<f64> = (1..=4)
        .map(|k| poly.a[k] / (k as f64 * p.T0).powi(2))
        .collect();
    pairwise_sum(&terms)
}

/// Discounted pole coefficients (q1, q2, q3), entering the cubic at degrees
/// one through three.
pub fn c2_coefficients(p: &RegionParams, poly: &TrigPolynomial) -> Result<(f64, f64, f64)> {
    let kernel = kernel_constants(p.theta);
    let skt = inverse_height_sum(p, poly);
    let m_minus1 = m_integral(p.theta, -1.0, 0)?;
    let q1 = -p.kappa * (poly.a[0] * kernel.g1 / p.delta + 0.5 * p.delta * kernel.g1 * skt);
    let q2 = (m_minus1 + p.kappa * kernel.m) * skt;
    let q3 = poly.a[0] * kernel.m * p.kappa / p.delta.powi(3);
    Ok((q1, q2, q3))
}

/// Zero-density coefficients (p1, p2, p3). The shifted abscissa
/// sigma0 - eta0 + delta enters the first- and third-degree terms; the
/// counting weight is shared with the second-degree term through the comb
/// sum of c30.
pub fn c3_coefficients(p: &RegionParams, poly: &TrigPolynomial) -> Result<(f64, f64, f64)> {
    let kernel = kernel_constants(p.theta);
    let sc30 = c30_weighted_sum(&poly.a, p.T0)?;
    let m0 = m_integral(p.theta, 0.0, 0)?;
    let xp = p.sigma0 - p.eta0 + p.delta;
    let p1 = poly.a[1] * kernel.g1 * ((1.0 / p.delta + 1.0 / xp) * p.kappa - 1.0);
    let p2 = 0.5 * m0 * sc30;
    let p3 = (1.0 + 2.0 * p.kappa) * kernel.m / (2.0 * p.sigma0 - 1.0) * sc30
        + poly.a[1] * kernel.m * ((1.0 / p.delta.powi(3) + 1.0 / xp.powi(3)) * p.kappa + 1.0);
    Ok((p1, p2, p3))
}

const U0_WINDOW: f64 = 1e6;

/// Two-sided Lorentzian integral of the digamma majorant,
/// int U0(T) / (x^2 + (T - y)^2) dT, windowed at |T - y| <= w with an
/// explicit majorant for the discarded tails (so the result is an upper
/// bound, not an estimate).
fn u0_lorentzian_integral(x: f64, y: f64, w: f64) -> Result<f64> {
    let tolerances = ToleranceConfig::default();
    let quad_tol = 1e-9;
    if y == 0.0 {
        // Even in T: panel edges at the two U0 branch points, then decade
        // steps out to the window.
        let mut pts = vec![0.0, 0.5, u0_second_branch_kink(), 10.0];
        let mut edge = 1e3;
        while edge < w {
            pts.push(edge);
            edge *= 10.0;
        }
        pts.push(w);
        let half = integrate_piecewise(
            |t| u0(t) / (x * x + t * t),
            &pts,
            quad_tol,
            tolerances.max_subdivisions,
        )?;
        let tail = ((0.5 * w).ln() + 2.0) / w + 1.0 / (3.0 * w * w);
        return Ok(2.0 * (half.value + tail));
    }

    // Far comb line: the Lorentzian is localized at T = y and U0 is slowly
    // varying there, so integrate in s = T - y on a geometric ladder.
    let mut pts = vec![0.0];
    let mut edge = x;
    while edge < 1e3 {
        pts.push(edge);
        edge *= 4.0;
    }
    edge = 1e3;
    while edge < w {
        pts.push(edge);
        edge *= 10.0;
    }
    pts.push(w);
    let pos = integrate_piecewise(
        |s| u0(y + s) / (x * x + s * s),
        &pts,
        quad_tol,
        tolerances.max_subdivisions,
    )?;
    let neg = integrate_piecewise(
        |s| u0(y - s) / (x * x + s * s),
        &pts,
        quad_tol,
        tolerances.max_subdivisions,
    )?;
    // Both tails |s| > w: split the s > w side exactly by parts against
    // log((y+s)/2) + 1; the reflected side plus every O(1/y) crumb is
    // absorbed by a crude 60/y.
    let tail = 2.0 * ((0.5 * (y + w)).ln() + 1.0) / w + 60.0 / y;
    Ok(pos.value + neg.value + tail)
}

fn u0_integral_cached(x: f64, y: f64) -> Result<f64> {
    static MEMO: OnceLock<Mutex<HashMap<(u64, u64), f64>>> = OnceLock::new();
    let memo = MEMO.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (x.to_bits(), y.to_bits());
    if let Some(v) = memo.lock().unwrap().get(&key) {
        return Ok(*v);
    }
    let v = u0_lorentzian_integral(x, y, U0_WINDOW)?;
    memo.lock().unwrap().insert(key, v);
    Ok(v)
}

/// Contour remainder bound C4, an upper bound by construction.
pub fn c4_bound(p: &RegionParams, poly: &TrigPolynomial) -> Result<f64> {
    c4_bound_impl(p, poly, None)
}

/// [`c4_bound`] with an explicit window override for the stability check;
/// bypasses the integral cache.
pub fn c4_bound_with_window(p: &RegionParams, poly: &TrigPolynomial, w: f64) -> Result<f64> {
    c4_bound_impl(p, poly, Some(w))
}

fn c4_bound_impl(p: &RegionParams, poly: &TrigPolynomial, window: Option<f64>) -> Result<f64> {
    let kernel = kernel_constants(p.theta);
    let m = kernel.m;
    let x = p.sigma0 - 0.5;
    let xd = x + p.delta;
    let integral = |x: f64, y: f64| -> Result<f64> {
        match window {
            None => u0_integral_cached(x, y),
            Some(w) => u0_lorentzian_integral(x, y, w),
        }
    };

    let mut terms = [0.0; 5];
    for (k, slot) in terms.iter_mut().enumerate() {
        let y = k as f64 * p.T0;
        let c41 = m / (2.0 * PI * x) * integral(x, y)?
            + p.kappa * m / (2.0 * PI * xd) * integral(xd, y)?;
        let c42 = if k == 0 {
            (p.sigma0.powi(-3) + p.kappa * (p.sigma0 + p.delta).powi(-3)) * m
        } else {
            (p.sigma0.recip() + p.kappa / (p.sigma0 + p.delta)) * m / (k as f64 * p.T0).powi(2)
        };
        *slot = poly.a[k] * (c41 + c42);
    }
    Ok(pairwise_sum(&terms))
}

/// Assemble the remainder cubic and certify its sign structure: exactly one
/// descent coefficient (alpha1 < 0 < alpha2, alpha3) and a negative value at
/// the working scale eta0.
pub fn assemble_c(p: &RegionParams, poly: &TrigPolynomial) -> Result<RemainderCubic> {
    let c1 = c1_coefficient(p, poly)?;
    let (q1, q2, q3) = c2_coefficients(p, poly)?;
    let (p1, p2, p3) = c3_coefficients(p, poly)?;
    let c4 = c4_bound(p, poly)?;

    let cubic = RemainderCubic {
        alpha1: c1 + q1 + p1,
        alpha2: q2 + p2,
        alpha3: q3 + p3 + c4,
        value_at_eta0: 0.0,
    };
    let cubic = RemainderCubic {
        value_at_eta0: cubic.eval(p.eta0),
        ..cubic
    };

    if !(cubic.alpha1 < 0.0 && cubic.alpha2 > 0.0 && cubic.alpha3 > 0.0) {
        return Err(Error::InvalidParameter {
            reason: format!(
                "cubic sign pattern broken: alpha = ({}, {}, {})",
                cubic.alpha1, cubic.alpha2, cubic.alpha3
            ),
        });
    }
    if !(cubic.value_at_eta0 < 0.0) {
        return Err(Error::CertificateFailure {
            value: cubic.value_at_eta0,
            eta0: p.eta0,
        });
    }
    Ok(cubic)
}
