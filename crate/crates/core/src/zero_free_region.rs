//! The outer loop: the nonnegative trigonometric polynomial, the kernel
//! transform K(omega) it is paired with, the single-step region constant,
//! the (R, r) iteration that drives the constant to its fixed point, and the
//! optimization of the kernel angle.

use crate::error::{Error, Result};
use crate::numerics::{find_root, integrate_piecewise, minimize_scalar, ToleranceConfig};
use crate::remainder_terms::{assemble_c, RegionParams, DEFAULT_T0, DEFAULT_T0_CAP};
use crate::smoothing_kernel::{d1_of, h, kernel_constants, Theta};
use serde::Serialize;
use std::f64::consts::PI;

/// Even nonnegative trigonometric polynomial sum a_k cos(k y), degree four,
/// with its tail weight A = a_1 + ... + a_4 and, when the polynomial was
/// built as 8 (c + cos y)^2 (c' + cos y)^2, the root pair it came from.
#[allow(non_snake_case)]
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrigPolynomial {
    pub a: [f64; 5],
    pub A: f64,
    pub factored_roots: Option<(f64, f64)>,
}

const POLY_GRID: usize = 10_000;

impl TrigPolynomial {
    /// Wrap an explicit coefficient list, checking nonnegativity of the
    /// coefficients and of the polynomial itself on a dense grid.
    pub fn from_coefficients(a: [f64; 5]) -> Result<Self> {
        if a.iter().any(|&c| !(c >= 0.0)) {
            return Err(Error::InvalidPolynomial {
                reason: format!("negative or non-finite coefficient in {a:?}"),
            });
        }
        let poly = TrigPolynomial {
            a,
            A: a[1] + a[2] + a[3] + a[4],
            factored_roots: None,
        };
        for i in 0..=POLY_GRID {
            let y = 2.0 * PI * i as f64 / POLY_GRID as f64;
            if poly.eval(y) < -1e-12 {
                return Err(Error::InvalidPolynomial {
                    reason: format!("negative value {} at y = {y}", poly.eval(y)),
                });
            }
        }
        Ok(poly)
    }

    /// Expand 8 (c + cos y)^2 (c' + cos y)^2 into the cosine basis.
    pub fn from_roots(c: f64, cp: f64) -> Result<Self> {
        let s = c + cp;
        let p = c * cp;
        let a = [
            3.0 + 4.0 * s * s + 8.0 * p + 8.0 * p * p,
            4.0 * s * (3.0 + 4.0 * p),
            4.0 * (1.0 + s * s + 2.0 * p),
            4.0 * s,
            1.0,
        ];
        let mut poly = Self::from_coefficients(a)?;
        poly.factored_roots = Some((c, cp));
        Ok(poly)
    }

    pub fn eval(&self, y: f64) -> f64 {
        self.a
            .iter()
            .enumerate()
            .map(|(k, &ak)| ak * (k as f64 * y).cos())
            .sum()
    }

    /// Product form, available when the root pair is known.
    pub fn factored_eval(&self, y: f64) -> Option<f64> {
        self.factored_roots.map(|(c, cp)| {
            8.0 * (c + y.cos()).powi(2) * (cp + y.cos()).powi(2)
        })
    }
}

/// The polynomial behind the final constant.
pub fn trig_poly_default() -> TrigPolynomial {
    TrigPolynomial::from_roots(0.91, 0.265).expect("fixed roots are admissible")
}

/// The classical comparison polynomial.
pub fn trig_poly_rosser_schoenfeld() -> TrigPolynomial {
    TrigPolynomial::from_roots(0.9126, 0.2766).expect("fixed roots are admissible")
}

/// One row of the iteration table.
#[allow(non_snake_case)]
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IterationRecord {
    pub step: usize,
    pub R_in: f64,
    pub r_in: f64,
    pub eta0: f64,
    pub kappa: f64,
    pub delta: f64,
    pub alpha1: f64,
    pub alpha2: f64,
    pub alpha3: f64,
    pub C_at_eta0: f64,
    pub R0_out: f64,
}

/// Kernel transform K(omega): the integral of (a_1 e^-u - a_0) h(u) e^(omega u)
/// over the kernel support. Strictly increasing in omega on the admissible
/// range, and positive exactly where the angle is usable.
pub fn k_omega(theta: Theta, omega: f64, poly: &TrigPolynomial) -> Result<f64> {
    if !(0.0..=1.0).contains(&omega) {
        return Err(Error::OmegaOutOfRange { value: omega });
    }
    let d1 = d1_of(theta);
    let (a0, a1) = (poly.a[0], poly.a[1]);
    let mut pts = vec![0.0, d1];
    if a0 > 0.0 && a1 > 0.0 {
        let sign_flip = (a1 / a0).ln();
        if 0.0 < sign_flip && sign_flip < d1 {
            pts.insert(1, sign_flip);
        }
    }
    let tol = ToleranceConfig::default();
    let r = integrate_piecewise(
        |u| (a1 * (-u).exp() - a0) * h(theta, u) * (omega * u).exp(),
        &pts,
        tol.quad_abs_tol,
        tol.max_subdivisions,
    )?;
    Ok(r.value)
}

/// Exponent ratio omega = r log T0 / (R log(4 T0 + t0)).
pub fn omega_of(p: &RegionParams) -> Result<f64> {
    let omega = p.r * p.T0.ln() / (p.R * (4.0 * p.T0 + p.t0).ln());
    if !(0.0..=1.0).contains(&omega) {
        return Err(Error::OmegaOutOfRange { value: omega });
    }
    Ok(omega)
}

/// One full pipeline step: solve the discount pair (already folded into the
/// parameter state), certify the remainder cubic, and produce the output
/// constant R0 = (A/2) g1 (1 - kappa) / K(omega).
pub fn r0_step(p: &RegionParams, poly: &TrigPolynomial) -> Result<IterationRecord> {
    let cubic = assemble_c(p, poly)?;
    let omega = omega_of(p)?;
    let k_val = k_omega(p.theta, omega, poly)?;
    let g1 = kernel_constants(p.theta).g1;
    let r0_out = 0.5 * poly.A * g1 * (1.0 - p.kappa) / k_val;
    Ok(IterationRecord {
        step: 0,
        R_in: p.R,
        r_in: p.r,
        eta0: p.eta0,
        kappa: p.kappa,
        delta: p.delta,
        alpha1: cubic.alpha1,
        alpha2: cubic.alpha2,
        alpha3: cubic.alpha3,
        C_at_eta0: cubic.value_at_eta0,
        R0_out: r0_out,
    })
}

/// How the target exponent r is chosen at each step.
#[derive(Debug, Clone, PartialEq)]
pub enum Schedule {
    /// Replay an explicit list of r values.
    Explicit(Vec<f64>),
    /// Solve r = R0(R, r) at each step and stop when R0 stabilizes.
    Auto,
}

const AUTO_STOP: f64 = 1e-5;
const AUTO_MAX_STEPS: usize = 200;

/// Drive the region constant to its fixed point starting from R_init.
pub fn iterate(
    r_init: f64,
    schedule: &Schedule,
    theta: Theta,
    poly: &TrigPolynomial,
) -> Result<Vec<IterationRecord>> {
    iterate_with_heights(r_init, schedule, theta, poly, DEFAULT_T0_CAP, DEFAULT_T0)
}

/// [`iterate`] with the height pair (cutoff and foot) chosen by the caller.
pub fn iterate_with_heights(
    r_init: f64,
    schedule: &Schedule,
    theta: Theta,
    poly: &TrigPolynomial,
    t0_cap: f64,
    t0: f64,
) -> Result<Vec<IterationRecord>> {
    let mut records = Vec::new();
    match schedule {
        Schedule::Explicit(rs) => {
            let mut big_r = r_init;
            for (i, &r) in rs.iter().enumerate() {
                let p = RegionParams::with_heights(big_r, r, theta, t0_cap, t0)?;
                let mut rec = r0_step(&p, poly)?;
                rec.step = i + 1;
                big_r = rec.R0_out;
                records.push(rec);
            }
        }
        Schedule::Auto => {
            let mut big_r = r_init;
            let mut prev: Option<f64> = None;
            for i in 1..=AUTO_MAX_STEPS {
                let r_star = solve_r_fixed_point(big_r, theta, poly, t0_cap, t0)?;
                let p = RegionParams::with_heights(big_r, r_star, theta, t0_cap, t0)?;
                let mut rec = r0_step(&p, poly)?;
                rec.step = i;
                if rec.R0_out > big_r {
                    return Err(Error::NonContraction {
                        step: i,
                        r0_out: rec.R0_out,
                        r_in: big_r,
                    });
                }
                let done = prev.map_or(false, |v| (v - rec.R0_out).abs() < AUTO_STOP);
                prev = Some(rec.R0_out);
                big_r = rec.R0_out;
                records.push(rec);
                if done {
                    break;
                }
            }
        }
    }
    Ok(records)
}

/// Inner solve of the auto schedule: the r with R0(R, r) = r, bracketed by
/// the smallest admissible exponent and R itself.
fn solve_r_fixed_point(
    big_r: f64,
    theta: Theta,
    poly: &TrigPolynomial,
    t0_cap: f64,
    t0: f64,
) -> Result<f64> {
    let mut failure: Option<Error> = None;
    let root = find_root(
        |r| {
            match RegionParams::with_heights(big_r, r, theta, t0_cap, t0)
                .and_then(|p| r0_step(&p, poly))
            {
                Ok(rec) => rec.R0_out - r,
                Err(e) => {
                    failure = Some(e);
                    f64::NAN
                }
            }
        },
        5.0,
        big_r,
        AUTO_STOP,
    );
    match (root, failure) {
        (_, Some(e)) => Err(e),
        (Ok(r), None) => Ok(r),
        (Err(e), None) => Err(e),
    }
}

/// Optimize the kernel angle at a fixed (R, r) pair. Returns the angle and
/// the constant it yields; every kernel-dependent quantity is recomputed per
/// candidate angle through the per-angle caches.
pub fn optimize_theta(big_r: f64, r: f64, poly: &TrigPolynomial) -> Result<(f64, f64)> {
    optimize_theta_with_heights(big_r, r, poly, DEFAULT_T0_CAP, DEFAULT_T0)
}

/// [`optimize_theta`] with caller-chosen heights.
pub fn optimize_theta_with_heights(
    big_r: f64,
    r: f64,
    poly: &TrigPolynomial,
    t0_cap: f64,
    t0: f64,
) -> Result<(f64, f64)> {
    let lo = PI / 2.0 + 0.05;
    let hi = PI - 0.05;
    let mut last_err: Option<Error> = None;
    let mut objective = |th: f64| -> f64 {
        let attempt = Theta::new(th)
            .and_then(|theta| RegionParams::with_heights(big_r, r, theta, t0_cap, t0))
            .and_then(|p| r0_step(&p, poly));
        match attempt {
            Ok(rec) if rec.R0_out.is_finite() && rec.R0_out > 0.0 => rec.R0_out,
            Ok(_) => f64::INFINITY,
            Err(e) => {
                last_err = Some(e);
                f64::INFINITY
            }
        }
    };

    const GRID: usize = 101;
    let mut best = (0usize, f64::INFINITY);
    let at = |i: usize| lo + (hi - lo) * i as f64 / (GRID - 1) as f64;
    let values: Vec<f64> = (0..GRID).map(|i| objective(at(i))).collect();
    for (i, &v) in values.iter().enumerate() {
        if v < best.1 {
            best = (i, v);
        }
    }
    if !best.1.is_finite() {
        return Err(last_err.unwrap_or(Error::InvalidParameter {
            reason: "no admissible angle on the search grid".into(),
        }));
    }
    let bracket_lo = at(best.0.saturating_sub(1));
    let bracket_hi = at((best.0 + 1).min(GRID - 1));
    let theta_star = minimize_scalar(&mut objective, bracket_lo, bracket_hi, 1e-7)?;
    let r0_star = objective(theta_star);
    Ok((theta_star, r0_star))
}
