use approx::assert_relative_eq;
use dyckq::qseries::*;
use dyckq::Error;
use num_complex::Complex64;
use proptest::prelude::*;

fn settings(q: f64) -> EvalSettings {
    EvalSettings::new(q).unwrap()
}

fn c(t: f64) -> Complex64 {
    Complex64::new(t, 0.0)
}

fn catalan_gf(t: f64) -> f64 {
    (1.0 - (1.0 - 4.0 * t).sqrt()) / (2.0 * t)
}

#[test]
fn pochhammer_values() {
    let s = settings(0.5);
    let inf = q_pochhammer(c(0.5), 0.5, Order::Infinite, &s).unwrap();
    assert!((inf.value.re - 0.2887880950866024).abs() < 1e-14);
    assert!(inf.truncation_bound < 1e-15);
    assert_eq!(
        q_pochhammer(c(0.5), 0.5, Order::Finite(1), &s)
            .unwrap()
            .value
            .re,
        0.5
    );
    assert_relative_eq!(
        ln_euler_function(0.5).exp(),
        0.2887880950866024,
        max_relative = 1e-14
    );
}

#[test]
fn h_series_values() {
    let s = settings(0.5);
    assert_eq!(h_series(c(0.0), &s).unwrap().value, c(1.0));
    assert!((h_series(c(0.2), &s).unwrap().value.re - 0.6262869831031218).abs() < 1e-14);
    assert!((h_series(c(0.1), &s).unwrap().value.re - 0.806619126952128).abs() < 1e-14);
}

#[test]
fn h_series_reports_non_convergence() {
    let s = settings(0.999).with_max_terms(5);
    match h_series(c(0.2), &s) {
        Err(Error::NonConvergence { iterations, .. }) => assert_eq!(iterations, 5),
        other => panic!("{other:?}"),
    }
}

#[test]
fn ratio_and_fraction_agree() {
    let s = settings(0.5);
    assert_eq!(g_ratio(c(0.0), &s).unwrap().value, c(1.0));
    let r = g_ratio(c(0.2), &s).unwrap().value.re;
    let f = g_cfrac(0.2, &s).unwrap().value;
    assert!((r - 1.2879385149528385).abs() < 1e-13);
    assert!(((r - f) / f).abs() < 1e-10);
    assert_eq!(g_cfrac(0.0, &s).unwrap().value, 1.0);
}

#[test]
fn fraction_continues_beyond_quarter() {
    let s = settings(0.5);
    let f = g_cfrac(0.35, &s).unwrap().value;
    assert!((f - 1.765271538841364).abs() < 1e-12);
    let r = g_ratio(c(0.35), &s).unwrap().value.re;
    assert!(((r - f) / f).abs() < 1e-10);
}

#[test]
fn ratio_near_catalan_limit() {
    let s = settings(0.999);
    let r = g_ratio(c(0.24), &s).unwrap().value.re;
    assert!((r - 1.6168).abs() < 5e-2, "{r}");
    let f = g_cfrac(0.24, &s).unwrap().value;
    assert!(((r - f) / f).abs() < 1e-8);
}

#[test]
fn ratio_refuses_zero_of_h() {
    let s = settings(0.5);
    let t_inf = t_infinity(&s).unwrap();
    assert!(matches!(g_ratio(c(t_inf), &s), Err(Error::Pole(_))));
}

#[test]
fn fraction_tends_to_catalan() {
    for &t in &[0.1, 0.2, 0.24] {
        let mut prev = f64::INFINITY;
        for k in 1..=5 {
            let q = 1.0 - 10f64.powi(-k);
            let err = (g_cfrac(t, &settings(q)).unwrap().value - catalan_gf(t)).abs();
            assert!(err < prev, "t = {t}, k = {k}");
            prev = err;
        }
        assert!(prev < 1e-3);
    }
}

#[test]
fn phase_boundary_values() {
    let expected = [
        (0.3, 0.7561996),
        (0.5, 0.6241096),
        (0.7, 0.4985144),
        (0.9, 0.3629798),
        (0.99, 0.2746980),
    ];
    for (q, t) in expected {
        let v = t_infinity(&settings(q)).unwrap();
        assert!((v - t).abs() < 1e-6, "q = {q}: {v}");
    }
    let half = t_infinity(&settings(0.5)).unwrap();
    assert!(half > 0.55 && half < 0.65);
}

#[test]
fn phase_boundary_decreases_towards_quarter() {
    let qs = [0.3, 0.6, 0.9, 0.95, 0.99];
    let ts: Vec<f64> = qs
        .iter()
        .map(|&q| t_infinity(&settings(q)).unwrap())
        .collect();
    assert!(ts.windows(2).all(|w| w[1] < w[0]));
    assert!(ts[4] - 0.25 < 0.03);
}

#[test]
fn g_poles_at_phase_boundary() {
    let s = settings(0.7);
    let t = t_infinity(&s).unwrap();
    let below = g_cfrac(t - 1e-6, &s).unwrap().value;
    assert!(below > 1e4);
}

#[test]
fn remainder_checks() {
    for &(z, q) in &[
        (Complex64::new(0.3, 0.3), 0.9),
        (Complex64::new(0.0, 1.0), 0.99),
    ] {
        let r = euler_maclaurin_check(z, q).unwrap();
        assert!(r.holds_derived(), "{r:?}");
        let lead = z / (12.0 * (1.0 - z));
        assert!((r.remainder - lead).norm() < 0.2 * lead.norm());
    }
}

#[test]
fn expansion_error_scales_with_epsilon() {
    let z = Complex64::new(0.3, 0.3);
    let ratios: Vec<f64> = [0.9, 0.95, 0.975]
        .iter()
        .map(|&q| {
            let r = euler_maclaurin_check(z, q).unwrap();
            r.expansion_error / -q.ln()
        })
        .collect();
    for w in ratios.windows(2) {
        assert!((w[1] / w[0] - 1.0).abs() < 0.1, "{ratios:?}");
    }
}

#[test]
fn contour_matches_series() {
    for &q in &[0.3, 0.5] {
        let s = settings(q).with_tol(1e-12).unwrap();
        for &t in &[0.1, 0.2] {
            let h = h_series(c(t), &s).unwrap().value.re;
            let k = contour_h(c(t), &ContourSpec::default(), &s).unwrap();
            assert!(
                ((k.value.re - h) / h).abs() < 1e-8,
                "q = {q}, t = {t}: {} vs {h}",
                k.value.re
            );
            assert!(k.value.im.abs() < 1e-10);
        }
    }
}

#[test]
fn contour_ray_length_doubling() {
    let s = settings(0.5).with_tol(1e-12).unwrap();
    let base = contour_h(c(0.2), &ContourSpec::default(), &s).unwrap();
    let spec = ContourSpec {
        lambda_max: Some(2.0 * base.lambda_max),
        ..ContourSpec::default()
    };
    let doubled = contour_h(c(0.2), &spec, &s).unwrap();
    assert!((doubled.value - base.value).norm() < 1e-11);
}

#[test]
fn contour_reports_short_rays() {
    let s = settings(0.5);
    let spec = ContourSpec {
        lambda_max: Some(3.0),
        ..ContourSpec::default()
    };
    assert!(matches!(
        contour_h(c(0.2), &spec, &s),
        Err(Error::Truncation(_))
    ));
}

#[test]
fn contour_other_angles() {
    let s = settings(0.5).with_tol(1e-12).unwrap();
    let spec = ContourSpec {
        rho: 0.3,
        phi: 1.2,
        psi: 0.8,
        ..ContourSpec::default()
    };
    let k = contour_h(c(0.2), &spec, &s).unwrap();
    assert!((k.value.re - 0.6262869831031218).abs() < 1e-9);
}

#[test]
fn settings_validation() {
    assert!(EvalSettings::new(1.0).is_err());
    assert!(EvalSettings::new(0.5)
        .unwrap()
        .with_precision(Precision::Bits(32))
        .is_err());
    assert!(EvalSettings::new(0.5).unwrap().with_tol(0.0).is_err());
    let s = EvalSettings::from_epsilon(0.01).unwrap();
    assert!((s.epsilon() - 0.01).abs() < 1e-15);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn methods_agree_below_pole_line(q in 0.3f64..0.9, frac in 0.02f64..0.9) {
        let s = settings(q);
        let t = frac * t_infinity(&s).unwrap();
        let r = g_ratio(c(t), &s).unwrap().value.re;
        let f = g_cfrac(t, &s).unwrap().value;
        prop_assert!(((r - f) / f).abs() < 1e-9);
        // G(t) = 1 + t G(t) G(qt)
        let fq = g_cfrac(q * t, &s).unwrap().value;
        prop_assert!((f - 1.0 - t * f * fq).abs() < 1e-12);
    }

    #[test]
    fn g_increases_in_t(q in 0.3f64..0.99, a in 0.0f64..0.2, d in 0.001f64..0.04) {
        let s = settings(q);
        prop_assert!(g_cfrac(a + d, &s).unwrap().value > g_cfrac(a, &s).unwrap().value);
    }
}
