//! Explicit envelopes for the zero-counting function of zeta on the critical
//! line and the two smoothed zero-density integrals the remainder terms
//! consume: the inverse-square sum over the first ordinate block and the
//! height-dependent coefficient c30(t).

use crate::error::{Error, Result};
use crate::numerics::{
    integrate_improper_upper_scaled, integrate_piecewise, pairwise_sum, ToleranceConfig,
};
use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Mutex, OnceLock};

/// First zero ordinate plus the envelope constants of the counting bound
/// N(u) = (u/2pi) log(u/2pi e) +- (c_log log u + c_const).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BacklundBounds {
    pub t1: f64,
    pub c_log: f64,
    pub c_const: f64,
}

impl Default for BacklundBounds {
    fn default() -> Self {
        BacklundBounds {
            t1: 14.134725146,
            c_log: 0.29992,
            c_const: 5.225,
        }
    }
}

/// Which side of the counting envelope to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Upper,
    Lower,
}

const TWO_PI: f64 = 2.0 * PI;

fn main_term(u: f64) -> f64 {
    (u / TWO_PI) * (u / (TWO_PI * std::f64::consts::E)).ln()
}

impl BacklundBounds {
    /// Envelope value without the domain check; internal integrands call
    /// this on ranges already known to sit above t1.
    fn envelope(&self, u: f64, side: Side) -> f64 {
        let fluct = self.c_log * u.ln() + self.c_const;
        match side {
            Side::Upper => main_term(u) + fluct,
            Side::Lower => main_term(u) - fluct,
        }
    }
}

/// Upper or lower envelope for the number of zeta zeros of ordinate in
/// (0, u], valid from the first zero ordinate up.
pub fn n_bound(u: f64, side: Side) -> Result<f64> {
    let b = BacklundBounds::default();
    if u < b.t1 {
        return Err(Error::DomainBelowT1 { u, t1: b.t1 });
    }
    Ok(b.envelope(u, side))
}

/// Sharper upper envelope with the log log u refinement, used only where the
/// partial-fraction sum at height zero needs the extra accuracy.
fn n_upper_sharp(u: f64) -> f64 {
    main_term(u) + 0.137 * u.ln() + 0.443 * u.ln().ln() + 5.225
}

/// Certified upper bound for sum over zeta zeros rho of 1/|rho|^2 restricted
/// to Im rho > 0 (doubled for the conjugate pairs), via 4 int N1(u)/u^3 du.
pub fn sum_inverse_gamma_sq_at_zero() -> Result<f64> {
    static VALUE: OnceLock<f64> = OnceLock::new();
    if let Some(v) = VALUE.get() {
        return Ok(*v);
    }
    let v = sum_inverse_gamma_sq_impl(&ToleranceConfig::default())?;
    Ok(*VALUE.get_or_init(|| v))
}

fn sum_inverse_gamma_sq_impl(tol: &ToleranceConfig) -> Result<f64> {
    let t1 = BacklundBounds::default().t1;
    // For u >= t1 the sharp envelope is below u log(u)/(2 pi), so the tail
    // of the integrand N1(u)/u^3 is below log(u)/(2 pi u^2).
    let tail = |t: f64| (t.ln() + 1.0) / (TWO_PI * t);
    let r = integrate_improper_upper_scaled(
        |u| n_upper_sharp(u) / (u * u * u),
        t1,
        &tail,
        2.5e-11,
        tol.max_subdivisions,
        1.0,
    )?;
    Ok(4.0 * r.value)
}

/// Lower companion of [`sum_inverse_gamma_sq_at_zero`], from the lower
/// envelope clipped at zero.
pub fn sum_inverse_gamma_sq_lower() -> Result<f64> {
    let b = BacklundBounds::default();
    let tail = |t: f64| (t.ln() + 1.0) / (TWO_PI * t);
    let r = integrate_improper_upper_scaled(
        |u| b.envelope(u, Side::Lower).max(0.0) / (u * u * u),
        b.t1,
        &tail,
        2.5e-11,
        ToleranceConfig::default().max_subdivisions,
        1.0,
    )?;
    Ok(4.0 * r.value)
}

/// Combined two-sided integrand over the shared window w in [1, t - t1]:
/// [N1(t + w) - N2(t - w)] / w^3, written so the two degree-one main terms
/// cancel analytically before any subtraction of large floats.
fn combined_window_integrand(b: &BacklundBounds, t: f64, w: f64) -> f64 {
    let log_prod = ((t + w) * (t - w)).ln();
    let main = (t * (2.0 * w / (t - w)).ln_1p() + w * (log_prod - 2.0 * TWO_PI.ln() - 2.0))
        / TWO_PI;
    (main + b.c_log * log_prod + 2.0 * b.c_const) / (w * w * w)
}

/// Height-dependent coefficient of the smoothed zero-density remainder:
/// twice the sum of the three one-sided envelope integrals against the cube
/// kernels 1/(u + t)^3, 1/(t - u)^3 and 1/(u - t)^3.
///
/// The two integrals whose kernels blow up near u = t are merged over their
/// shared window so the leading counting terms cancel in closed form; the
/// naive difference of separately computed integrals loses nine digits at
/// t ~ 3e9.
pub fn c30(t: f64) -> Result<f64> {
    static MEMO: OnceLock<Mutex<HashMap<u64, f64>>> = OnceLock::new();
    let memo = MEMO.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = memo.lock().unwrap().get(&t.to_bits()) {
        return Ok(*v);
    }
    let v = c30_impl(t, &ToleranceConfig::default(), 1.0)?;
    memo.lock().unwrap().insert(t.to_bits(), v);
    Ok(v)
}

/// [`c30`] with an explicit truncation scale for the improper pieces; the
/// doubling check in the test suite compares scale 1 against scale 2.
pub fn c30_with_scale(t: f64, tol: &ToleranceConfig, t_scale: f64) -> Result<f64> {
    c30_impl(t, tol, t_scale)
}

fn c30_impl(t: f64, tol: &ToleranceConfig, t_scale: f64) -> Result<f64> {
    let b = BacklundBounds::default();
    if t <= b.t1 + 1.0 {
        return Err(Error::DomainTooSmall {
            t,
            min: b.t1 + 1.0,
        });
    }
    let piece_tol = 1e-9 / 3.0;

    // Far side: int_{t1}^inf N1(u) / (u + t)^3 du. The kernel is below
    // 1/u^3 everywhere, so the tail bound needs no validity threshold.
    let far_tail = |v: f64| (v.ln() + 1.0) / (TWO_PI * v);
    let far = integrate_improper_upper_scaled(
        |u| b.envelope(u, Side::Upper) / (u + t).powi(3),
        b.t1,
        &far_tail,
        piece_tol,
        tol.max_subdivisions,
        t_scale,
    )?;

    // Shared window w in [1, t - t1]: N1(t + w) - N2(t - w) against 1/w^3,
    // on dyadic panels since the integrand decays like log(t)/w^3.
    let w_hi = t - b.t1;
    let mut pts = vec![1.0];
    let mut w = 2.0;
    while w < w_hi {
        pts.push(w);
        w *= 2.0;
    }
    pts.push(w_hi);
    let window = integrate_piecewise(
        |w| combined_window_integrand(&b, t, w),
        &pts,
        piece_tol,
        tol.max_subdivisions,
    )?;

    // Upper flank alone for w >= t - t1: N1(t + w) / w^3. Truncation starts
    // at 2(t - t1) > t, where t + w <= 2w makes the envelope integrand drop
    // below 2 log(2w)/(2 pi w^2).
    let flank_tail = |v: f64| {
        if v < t {
            f64::INFINITY
        } else {
            2.0 * ((2.0 * v).ln() + 1.0) / (TWO_PI * v)
        }
    };
    let flank = integrate_improper_upper_scaled(
        |w| b.envelope(t + w, Side::Upper) / (w * w * w),
        w_hi,
        &flank_tail,
        piece_tol,
        tol.max_subdivisions,
        t_scale,
    )?;

    Ok(2.0 * (far.value + window.value + flank.value))
}

/// Weighted sum of c30 over the comb of heights k T0 (k = 1..4) with the
/// height-zero block folded in through the inverse-square sum.
pub fn c30_weighted_sum(a: &[f64; 5], t0_cap: f64) -> Result<f64> {
    let zero_block = a[0] * sum_inverse_gamma_sq_at_zero()?;
    let mut terms = vec![zero_block];
    for (k, &ak) in a.iter().enumerate().skip(1) {
        terms.push(ak * c30(k as f64 * t0_cap)?);
    }
    Ok(pairwise_sum(&terms))
}
