//! Polynomials, the kernel transform K, and the region-constant iteration.
//!
//! Printed step values are cross-implementation constants frozen from an
//! mpmath prototype of the same pipeline.

use proptest::prelude::*;
use zeta_region_core::error::Error;
use zeta_region_core::smoothing_kernel::Theta;
use zeta_region_core::zero_free_region::{
    iterate, k_omega, omega_of, r0_step, trig_poly_default, trig_poly_rosser_schoenfeld,
    IterationRecord, Schedule, TrigPolynomial,
};
use zeta_region_core::RegionParams;

fn theta() -> Theta {
    Theta::new(1.848).unwrap()
}

const REPLAY_R: [f64; 6] = [5.97484, 5.73045, 5.70487, 5.70208, 5.70178, 5.70174];
const REPLAY_R0: [f64; 6] = [
    5.974_849_075,
    5.730_454_010,
    5.704_872_616,
    5.702_089_881,
    5.701_785_245,
    5.701_752_890,
];

#[test]
fn default_polynomial_expands_from_its_roots() {
    let p = trig_poly_default();
    let want = [10.916_926_58, 18.633_62, 11.4517, 4.7, 1.0];
    for (got, want) in p.a.iter().zip(want) {
        assert!((got - want).abs() < 1e-8, "{got} vs {want}");
    }
    assert!((p.A - 35.785_32).abs() < 1e-8);
    assert_eq!(p.factored_roots, Some((0.91, 0.265)));
}

#[test]
fn alternative_polynomial_expands_from_its_roots() {
    let p = trig_poly_rosser_schoenfeld();
    let want = [
        11.185_935_531_208_205,
        19.073_344_004_352_002,
        11.676_187_84,
        4.7568,
        1.0,
    ];
    for (got, want) in p.a.iter().zip(want) {
        assert!((got - want).abs() < 1e-10, "{got} vs {want}");
    }
}

#[test]
fn coefficient_constructor_rejects_bad_polynomials() {
    // cos 4y alone dips to -1.
    assert!(matches!(
        TrigPolynomial::from_coefficients([0.0, 0.0, 0.0, 0.0, 1.0]),
        Err(Error::InvalidPolynomial { .. })
    ));
    // Negative coefficients are out regardless of the sign of the sum.
    assert!(TrigPolynomial::from_coefficients([3.0, -0.1, 4.0, 0.0, 1.0]).is_err());
    // 8 cos^4 y is fine.
    assert!(TrigPolynomial::from_coefficients([3.0, 0.0, 4.0, 0.0, 1.0]).is_ok());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // Any root pair in the unit square expands to an admissible polynomial
    // whose cosine expansion agrees with the factored product everywhere.
    #[test]
    fn root_pairs_expand_consistently(c in 0.0f64..1.0, cp in 0.0f64..1.0) {
        let p = TrigPolynomial::from_roots(c, cp).unwrap();
        for i in 0..32 {
            let y = 2.0 * std::f64::consts::PI * i as f64 / 31.0;
            let expanded = p.eval(y);
            let product = p.factored_eval(y).unwrap();
            prop_assert!((expanded - product).abs() < 1e-9);
            prop_assert!(expanded >= -1e-9);
        }
    }
}

#[test]
fn transform_is_increasing_in_omega() {
    let poly = trig_poly_default();
    let k03 = k_omega(theta(), 0.3, &poly).unwrap();
    let k06 = k_omega(theta(), 0.6, &poly).unwrap();
    let k09 = k_omega(theta(), 0.9, &poly).unwrap();
    assert!((k03 - 239.277_670_577).abs() < 1e-4);
    assert!((k06 - 248.992_273_284).abs() < 1e-4);
    assert!((k09 - 259.115_310_304).abs() < 1e-4);
    assert!(k03 < k06 && k06 < k09);
}

#[test]
fn transform_rejects_external_abscissas() {
    let poly = trig_poly_default();
    for bad in [-0.1, 1.1] {
        match k_omega(theta(), bad, &poly) {
            Err(Error::OmegaOutOfRange { value }) => assert_eq!(value, bad),
            other => panic!("expected OmegaOutOfRange, got {other:?}"),
        }
    }
}

#[test]
fn rescaled_abscissa_at_step_one() {
    let p = RegionParams::new(9.645_908_801, 5.974_84, theta()).unwrap();
    let omega = omega_of(&p).unwrap();
    assert!((omega - 0.582_583_302_201).abs() < 1e-9, "omega = {omega}");
}

#[test]
fn single_step_reproduces_the_first_row() {
    let p = RegionParams::new(9.645_908_801, 5.974_84, theta()).unwrap();
    let rec = r0_step(&p, &trig_poly_default()).unwrap();
    assert_eq!(rec.R_in, 9.645_908_801);
    assert_eq!(rec.r_in, 5.974_84);
    assert!((rec.R0_out - 5.974_849_076).abs() < 1e-6, "{}", rec.R0_out);
    assert!(rec.C_at_eta0 < 0.0);
    assert!((rec.eta0 - 7.633_19e-3).abs() < 1e-7);
}

#[test]
fn replay_reproduces_the_whole_table() {
    let records = iterate(
        9.645_908_801,
        &Schedule::Explicit(REPLAY_R.to_vec()),
        theta(),
        &trig_poly_default(),
    )
    .unwrap();
    assert_eq!(records.len(), 6);
    let eta0_col = [7.633_19e-3, 7.958_73e-3, 7.994_41e-3, 7.998_32e-3, 7.998_74e-3, 7.998_80e-3];
    let kappa_col = [0.438_904, 0.438_525, 0.438_483, 0.438_479, 0.438_478, 0.438_478];
    let delta_col = [0.620_626, 0.620_748, 0.620_762, 0.620_763, 0.620_763, 0.620_763];
    for (i, rec) in records.iter().enumerate() {
        assert_eq!(rec.step, i + 1);
        assert!(
            (rec.R0_out - REPLAY_R0[i]).abs() < 1e-5,
            "step {}: R0 = {} vs {}",
            i + 1,
            rec.R0_out,
            REPLAY_R0[i]
        );
        assert!((rec.eta0 - eta0_col[i]).abs() < 1e-7);
        assert!((rec.kappa - kappa_col[i]).abs() < 1e-5);
        assert!((rec.delta - delta_col[i]).abs() < 1e-5);
        if i > 0 {
            assert_eq!(rec.R_in, records[i - 1].R0_out, "chained input at step {}", i + 1);
        }
    }
}

#[test]
fn auto_schedule_converges_to_the_replay_limit() {
    let records = iterate(
        9.645_908_801,
        &Schedule::Auto,
        theta(),
        &trig_poly_default(),
    )
    .unwrap();
    assert!(records.len() >= 3 && records.len() < 200);
    let last = records.last().unwrap();
    assert!(
        (last.R0_out - 5.701_752_890).abs() < 1e-4,
        "converged to {}",
        last.R0_out
    );
    // Monotone descent.
    for w in records.windows(2) {
        assert!(w[1].R0_out <= w[0].R0_out + 1e-12);
    }
}

#[test]
fn auto_schedule_fails_below_the_fixed_point() {
    // Starting under the limit leaves no admissible inner solution.
    match iterate(5.6, &Schedule::Auto, theta(), &trig_poly_default()) {
        Err(Error::NoSignChange { .. }) | Err(Error::NonContraction { .. }) => {}
        other => panic!("expected an iteration failure, got {other:?}"),
    }
}

#[test]
fn record_serialization_preserves_column_order() {
    let rec = IterationRecord {
        step: 1,
        R_in: 9.645_908_801,
        r_in: 5.974_84,
        eta0: 7.633_19e-3,
        kappa: 0.438_903,
        delta: 0.620_627,
        alpha1: -3915.26,
        alpha2: 344_604.26,
        alpha3: 5_793_224.69,
        C_at_eta0: -7.230_82,
        R0_out: 5.974_849_076,
    };
    let json = serde_json::to_string(&rec).unwrap();
    let keys: Vec<&str> = json
        .split('"')
        .skip(1)
        .step_by(2)
        .collect();
    assert_eq!(
        keys,
        vec![
            "step", "R_in", "r_in", "eta0", "kappa", "delta", "alpha1", "alpha2", "alpha3",
            "C_at_eta0", "R0_out"
        ]
    );
}
