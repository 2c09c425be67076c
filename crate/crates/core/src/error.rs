//! Error type shared by every module in the crate.

use thiserror::Error;

/// Everything that can go wrong in the numerical pipeline.
///
/// Variants carry enough context to print an actionable message; none of them
/// are expected during a normal run with the default configuration.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Adaptive quadrature exhausted its subdivision budget before reaching
    /// the requested tolerance.
    #[error("quadrature did not reach tolerance {tol:e} within {limit} subdivisions (best error estimate {best:e})")]
    SubdivisionLimit { tol: f64, limit: u32, best: f64 },

    /// The caller-supplied tail bound of an improper integral never dropped
    /// below half the requested tolerance.
    #[error("tail bound for improper integral never fell below {threshold:e} (last value {last:e} at T={at:e})")]
    TailDivergence { threshold: f64, last: f64, at: f64 },

    /// Bisection was started on a bracket with no sign change.
    #[error("no sign change on [{lo}, {hi}]: f(lo)={flo:e}, f(hi)={fhi:e}")]
    NoSignChange { lo: f64, hi: f64, flo: f64, fhi: f64 },

    /// An interval [lo, hi] with lo > hi (or NaN endpoints) was supplied.
    #[error("invalid interval [{lo}, {hi}]")]
    InvalidInterval { lo: f64, hi: f64 },

    /// A derivative order outside the implemented set was requested.
    #[error("derivative order {order} not supported (only {supported})")]
    OrderUnsupported { order: u32, supported: &'static str },

    /// The kernel opening angle must lie strictly inside (pi/2, pi).
    #[error("theta = {value} outside the open interval (pi/2, pi)")]
    ThetaOutOfRange { value: f64 },

    /// The digamma reference evaluation requires a positive real part.
    #[error("digamma evaluation needs x > 0, got x = {x}")]
    NonpositiveRealPart { x: f64 },

    /// Zero-counting envelopes are only valid above the first zero ordinate.
    #[error("u = {u} is below the first zero ordinate t1 = {t1}")]
    DomainBelowT1 { u: f64, t1: f64 },

    /// The tail sum c30(t) needs t > t1 + 1 so both companion integrals exist.
    #[error("t = {t} too small for the tail sum (needs t > {min})")]
    DomainTooSmall { t: f64, min: f64 },

    /// The solved (kappa, delta) pair fell outside its admissibility window.
    #[error("(kappa, delta) = ({kappa}, {delta}) violates the admissibility window [{lo}, {hi}]")]
    WindowViolation {
        kappa: f64,
        delta: f64,
        lo: f64,
        hi: f64,
    },

    /// The remainder cubic failed its negativity certificate at eta0.
    #[error("remainder cubic is {value:e} >= 0 at eta0 = {eta0}; the chosen (r, R) pair is inadmissible")]
    CertificateFailure { value: f64, eta0: f64 },

    /// The rescaled abscissa omega left [0, 1].
    #[error("omega = {value} outside [0, 1]")]
    OmegaOutOfRange { value: f64 },

    /// Auto-mode iteration produced a step that expanded the region.
    #[error("iteration step {step} expanded the constant: R0 = {r0_out} > R_in = {r_in}")]
    NonContraction { step: usize, r0_out: f64, r_in: f64 },

    /// A parameter bundle failed one of its structural invariants.
    #[error("invalid parameter: {reason}")]
    InvalidParameter { reason: String },

    /// A trigonometric polynomial failed a structural invariant.
    #[error("invalid trigonometric polynomial: {reason}")]
    InvalidPolynomial { reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
