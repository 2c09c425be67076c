//! Kernel constants, weighted suprema integrals and the Laplace transform.
//!
//! Reference values were computed independently with mpmath at 50 digits
//! (closed forms) and a Python quadrature prototype (integral quantities),
//! then frozen here.

use zeta_region_core::error::Error;
use zeta_region_core::numerics::integrate;
use zeta_region_core::smoothing_kernel::{
    d1_of, endpoint_residuals, h, h_deriv, h_remainder_bound, kernel_constants, laplace_f_tilde,
    m_integral, monotonicity_thresholds, Theta,
};

fn theta() -> Theta {
    Theta::new(1.848).unwrap()
}

#[test]
fn angle_must_be_an_interior_obtuse_angle() {
    assert!(Theta::new(1.848).is_ok());
    for bad in [
        std::f64::consts::FRAC_PI_2,
        std::f64::consts::PI,
        0.5,
        4.0,
        f64::NAN,
    ] {
        match Theta::new(bad) {
            Err(Error::ThetaOutOfRange { .. }) => {}
            other => panic!("expected ThetaOutOfRange for {bad}, got {other:?}"),
        }
    }
}

#[test]
fn closed_form_constants_at_the_default_angle() {
    let k = kernel_constants(theta());
    assert!((k.d1 - 1.051_619_931_725_934_5).abs() < 1e-12);
    assert!((k.g1 - 147.841_120_261_156_65).abs() < 1e-9);
    assert!((k.g2 - 62.170_672_078_068_78).abs() < 1e-9);
    assert!((k.g3 - 48.766_762_213_528_45).abs() < 1e-9);
    assert!((k.m - 1322.866_258_122_512_6).abs() < 1e-8);
    assert!((k.m1 - 4135.127_069_317_292).abs() < 1e-8);
    // Grid-plus-refine supremum: slightly looser than the closed forms.
    assert!((k.uh2_sup - 423.866_104_825_528_85).abs() < 1e-6);
}

#[test]
fn value_at_zero_is_g1_and_support_width_matches() {
    let k = kernel_constants(theta());
    assert!((h(theta(), 0.0) - k.g1).abs() < 1e-9);
    assert!((d1_of(theta()) - k.d1).abs() < 1e-15);
    // Outside the support the kernel vanishes identically.
    assert_eq!(h(theta(), k.d1 + 1e-9), 0.0);
    assert_eq!(h(theta(), -0.1), 0.0);
}

#[test]
fn second_derivative_at_zero_is_minus_m() {
    let k = kernel_constants(theta());
    let h2 = h_deriv(theta(), 0.0, 2).unwrap();
    assert!((h2 + k.m).abs() < 1e-8, "h''(0) = {h2}, m = {}", k.m);
}

#[test]
fn endpoint_conditions_hold() {
    for r in endpoint_residuals(theta()) {
        assert!(r.abs() < 1e-8, "endpoint residual {r}");
    }
}

#[test]
fn derivative_orders_above_three_are_rejected() {
    match h_deriv(theta(), 0.3, 4) {
        Err(Error::OrderUnsupported { order, .. }) => assert_eq!(order, 4),
        other => panic!("expected OrderUnsupported, got {other:?}"),
    }
}

#[test]
fn weighted_suprema_integrals() {
    // M(z) = int |h''| e^{z u}, M1/M2 the third-derivative and u-weighted
    // variants. Frozen from the mpmath prototype.
    let th = theta();
    assert!((m_integral(th, 0.0, 0).unwrap() - 521.632_466_559_808_3).abs() < 1e-8);
    assert!((m_integral(th, -1.0, 0).unwrap() - 822.674_265_906_166_7).abs() < 1e-8);
    assert!((m_integral(th, 0.0, 1).unwrap() - 2526.445_781_923_900_5).abs() < 1e-7);
    assert!((m_integral(th, 0.0, 2).unwrap() - 212.573_673_979_338_82).abs() < 1e-8);
}

#[test]
fn weighted_integral_rejects_unknown_orders() {
    match m_integral(theta(), 0.0, 3) {
        Err(Error::OrderUnsupported { order, .. }) => assert_eq!(order, 3),
        other => panic!("expected OrderUnsupported, got {other:?}"),
    }
}

#[test]
fn transform_at_the_origin_is_the_kernel_mass() {
    // F(0,0) has no damping or oscillation left, so it must equal g2.
    let k = kernel_constants(theta());
    let f = laplace_f_tilde(theta(), 8e-3, 0.0, 0.0).unwrap();
    assert!((f - k.g2).abs() < 1e-9, "F(0,0) = {f} vs g2 = {}", k.g2);
}

#[test]
fn transform_matches_direct_quadrature() {
    // Cross-check the production path against a plain one-shot quadrature
    // of the defining integral at a few (x, y) pairs.
    let th = theta();
    let d1 = d1_of(th);
    for &(eta, x, y) in &[
        (8e-3, 0.3, 0.0),
        (8e-3, 1.0, 2.0),
        (1e-3, 0.0, 5.0),
        (7.633_183e-3, 0.495_553, 14.1),
    ] {
        let fast = laplace_f_tilde(th, eta, x, y).unwrap();
        // One-shot quadrature of hundreds of oscillation periods; only ask
        // for what a single adaptive pass can honestly certify.
        let direct = integrate(
            |t| (-x * t / eta).exp() * (y * t / eta).cos() * h(th, t),
            0.0,
            d1,
            1e-9,
            200_000,
        )
        .unwrap()
        .value;
        assert!(
            (fast - direct).abs() < 1e-8,
            "transform mismatch at ({eta}, {x}, {y}): {fast} vs {direct}"
        );
    }
}

#[test]
fn transform_decays_in_the_damping_direction() {
    let th = theta();
    let mut prev = f64::INFINITY;
    for i in 0..8 {
        let x = i as f64 * 0.5;
        let f = laplace_f_tilde(th, 8e-3, x, 0.0).unwrap();
        assert!(f < prev, "no decay at x = {x}");
        assert!(f > 0.0);
        prev = f;
    }
}

#[test]
fn remainder_bound_dominates_the_pole_corrected_transform() {
    // |F(x,y) - g1 eta x/(x^2+y^2)| <= bound, both the coarse and the
    // refined version, across a deterministic sample.
    let th = theta();
    let k = kernel_constants(th);
    for &(eta, x, y) in &[
        (8e-3, 0.5, 1.0),
        (8e-3, 1.5, 0.7),
        (4e-3, 0.2, 3.0),
        (1e-2, 2.0, 2.0),
        (2e-3, 1.0, 9.0),
    ] {
        let f = laplace_f_tilde(th, eta, x, y).unwrap();
        let lhs = (f - k.g1 * eta * x / (x * x + y * y)).abs();
        for fine in [false, true] {
            let bound = h_remainder_bound(th, eta, x, y, fine).unwrap();
            assert!(
                lhs <= bound + 1e-10,
                "bound violated (fine={fine}) at ({eta},{x},{y}): {lhs} > {bound}"
            );
        }
    }
}

#[test]
fn monotonicity_thresholds_at_reference_arguments() {
    let (x1, x2) = monotonicity_thresholds(8e-3, 1.0).unwrap();
    assert!((x2 - 1.064_828_233_463_937).abs() < 1e-6);
    let x1 = x1.expect("inner threshold exists at these arguments");
    assert!((x1 - 0.867_269_855_370_935_5).abs() < 1e-6);
    assert!(x1 < x2);

    // For a large eta the inner threshold's square root goes negative and
    // the threshold disappears.
    let (x1, x2) = monotonicity_thresholds(1e-2, 0.05).unwrap();
    assert!(x1.is_none());
    assert!(x2.is_finite());
}

#[test]
fn constants_are_cached_per_angle() {
    let a = kernel_constants(theta());
    let b = kernel_constants(theta());
    assert_eq!(a.g1.to_bits(), b.g1.to_bits());
    assert_eq!(a.uh2_sup.to_bits(), b.uh2_sup.to_bits());

    // A different angle gives genuinely different constants.
    let c = kernel_constants(Theta::new(1.9).unwrap());
    assert!((c.g1 - a.g1).abs() > 1.0);
}
