//! Zero-counting envelopes and the cubic-weighted counting integrals.
//!
//! The partial-fraction sum at height zero and the four c30 ladder values
//! were frozen from an mpmath prototype of the same integrals.

use zeta_region_core::error::Error;
use zeta_region_core::zero_counting::{
    c30, c30_weighted_sum, n_bound, sum_inverse_gamma_sq_at_zero, sum_inverse_gamma_sq_lower,
};
use zeta_region_core::Side;

const T1: f64 = 14.134_725_146;
const T0: f64 = 3_330_657_430.697;

#[test]
fn envelopes_order_correctly() {
    for &u in &[T1, 20.0, 100.0, 1e4, 1e9] {
        let lower = n_bound(u, Side::Lower).unwrap();
        let upper = n_bound(u, Side::Upper).unwrap();
        assert!(lower < upper, "envelopes crossed at u = {u}");
        // The band has width 2 (0.29992 ln u + 5.225). Differencing the two
        // envelopes cancels their large main terms, so scale the tolerance.
        let width = 2.0 * (0.29992 * u.ln() + 5.225);
        let tol = 1e-9 + 8.0 * f64::EPSILON * upper.abs();
        assert!((upper - lower - width).abs() < tol);
    }
}

#[test]
fn envelope_values_at_the_first_ordinate() {
    // Main term (u/2pi) ln(u/2pie) plus the fluctuation band.
    let u = T1;
    let main = u / (2.0 * std::f64::consts::PI)
        * (u / (2.0 * std::f64::consts::PI * std::f64::consts::E)).ln();
    let upper = n_bound(u, Side::Upper).unwrap();
    assert!((upper - (main + 0.29992 * u.ln() + 5.225)).abs() < 1e-12);
    assert!((upper - 5.593_618).abs() < 1e-3);
}

#[test]
fn domain_starts_at_the_first_ordinate() {
    match n_bound(14.0, Side::Upper) {
        Err(Error::DomainBelowT1 { u, .. }) => assert_eq!(u, 14.0),
        other => panic!("expected DomainBelowT1, got {other:?}"),
    }
    assert!(n_bound(T1, Side::Upper).is_ok());
}

#[test]
fn counting_respects_known_counts() {
    // N(100) = 29 zeros; the envelopes must bracket generously.
    let lower = n_bound(100.0, Side::Lower).unwrap();
    let upper = n_bound(100.0, Side::Upper).unwrap();
    assert!(lower <= 29.0 && 29.0 <= upper);

    // N(1000) = 649.
    let lower = n_bound(1000.0, Side::Lower).unwrap();
    let upper = n_bound(1000.0, Side::Upper).unwrap();
    assert!(lower <= 649.0 && 649.0 <= upper);
}

#[test]
fn inverse_square_sum_at_height_zero() {
    let s = sum_inverse_gamma_sq_at_zero().unwrap();
    assert!((s - 0.098_177_249_556_478_63).abs() < 1e-9);
    // Certified upper bound: must stay below the printed ceiling.
    assert!(s <= 0.098_178);
}

#[test]
fn inverse_square_sum_brackets() {
    let hi = sum_inverse_gamma_sq_at_zero().unwrap();
    let lo = sum_inverse_gamma_sq_lower().unwrap();
    assert!(lo > 0.0);
    assert!(lo < hi, "lower estimate {lo} not below upper bound {hi}");
    // The first zero pair alone contributes 2/t1^2 = 0.0100; the lower
    // envelope loses the band but must stay above a positive floor.
    assert!(lo > 0.01, "lower estimate collapsed: {lo}");
}

#[test]
fn cubic_weighted_integral_ladder() {
    // Frozen ladder at t = k T0.
    let want = [
        36.391_126_626_964_74,
        37.248_175_232_057_12,
        37.749_516_527_331_54,
        38.105_223_837_149_50,
    ];
    for (k, w) in want.iter().enumerate() {
        let t = (k + 1) as f64 * T0;
        let got = c30(t).unwrap();
        assert!((got - w).abs() < 1e-8, "c30({}T0) = {got} vs {w}", k + 1);
    }
}

#[test]
fn cubic_weighted_integral_grows_slowly() {
    // Roughly logarithmic growth: increments shrink along the ladder.
    let v: Vec<f64> = (1..=4).map(|k| c30(k as f64 * T0).unwrap()).collect();
    assert!(v[0] < v[1] && v[1] < v[2] && v[2] < v[3]);
    assert!(v[1] - v[0] > v[2] - v[1]);
    assert!(v[2] - v[1] > v[3] - v[2]);
}

#[test]
fn cubic_weighted_integral_needs_headroom() {
    match c30(T1 + 0.5) {
        Err(Error::DomainTooSmall { .. }) => {}
        other => panic!("expected DomainTooSmall, got {other:?}"),
    }
}

#[test]
fn weighted_sum_combines_the_ladder() {
    let a = [10.916_926_58, 18.633_62, 11.4517, 4.7, 1.0];
    let got = c30_weighted_sum(&a, T0).unwrap();
    let want = a[0] * sum_inverse_gamma_sq_at_zero().unwrap()
        + a[1] * c30(T0).unwrap()
        + a[2] * c30(2.0 * T0).unwrap()
        + a[3] * c30(3.0 * T0).unwrap()
        + a[4] * c30(4.0 * T0).unwrap();
    assert!((got - want).abs() < 1e-9, "{got} vs {want}");
}

#[test]
fn results_are_cached_and_deterministic() {
    let a = c30(T0).unwrap();
    let b = c30(T0).unwrap();
    assert_eq!(a.to_bits(), b.to_bits());
}
