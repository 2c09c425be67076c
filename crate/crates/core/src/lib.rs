//! Computational engine for an explicit zero-free region of the Riemann
//! zeta function of the classical de la Vallee Poussin shape: no zero with
//! ordinate at least some cutoff has real part exceeding
//! 1 - 1/(R0 log |ordinate|), with every constant explicit and certified by
//! interval-honest upper bounds rather than estimates.
//!
//! The pipeline proceeds bottom up: a compactly supported smoothing kernel
//! and its Laplace transform, explicit digamma bounds, zero-counting
//! envelopes, a discounted positivity argument pairing each zero with its
//! reflection, a cubic remainder certificate in the smoothing scale, and the
//! outer fixed-point iteration that contracts the region constant to its
//! final value. A verification layer re-derives every published table entry.

pub mod digamma_bounds;
pub mod error;
pub mod numerics;
pub mod remainder_terms;
pub mod smoothing_kernel;
pub mod stechkin_positivity;
pub mod verify;
pub mod zero_counting;
pub mod zero_free_region;

pub use digamma_bounds::{DigammaBoundParams, Regime};
pub use error::{Error, Result};
pub use numerics::{QuadratureResult, ToleranceConfig};
pub use remainder_terms::{RegionParams, RemainderCubic};
pub use smoothing_kernel::{SmoothingKernel, Theta};
pub use stechkin_positivity::PositivityParams;
pub use verify::SuiteReport;
pub use zero_counting::{BacklundBounds, Side};
pub use zero_free_region::{IterationRecord, Schedule, TrigPolynomial};
