use dyckq::enumeration::*;
use dyckq::qseries::{g_cfrac, EvalSettings};
use num_bigint::BigUint;
use proptest::prelude::*;

fn big(v: &[u64]) -> Vec<BigUint> {
    v.iter().map(|&x| BigUint::from(x)).collect()
}

#[test]
fn small_rows() {
    let t = build_area_polynomials(4).unwrap();
    assert_eq!(t.row(0).unwrap().coeffs, big(&[1]));
    assert_eq!(t.row(1).unwrap().coeffs, big(&[1]));
    assert_eq!(t.row(2).unwrap().coeffs, big(&[1, 1]));
    assert_eq!(t.row(3).unwrap().coeffs, big(&[1, 2, 1, 1]));
    assert_eq!(t.row(4).unwrap().coeffs, big(&[1, 3, 3, 3, 2, 1, 1]));
    assert_eq!(t.row(4).unwrap().total(), BigUint::from(14u32));
}

#[test]
fn recurrence_matches_brute_force() {
    let t = build_area_polynomials(12).unwrap();
    for n in 0..=12 {
        assert_eq!(
            t.row(n).unwrap(),
            &brute_force_area_polynomial(n).unwrap(),
            "n = {n}"
        );
    }
    assert_eq!(t.row(12).unwrap().total(), BigUint::from(208_012u32));
}

#[test]
fn brute_force_examples() {
    assert_eq!(brute_force_area_polynomial(0).unwrap().coeffs, big(&[1]));
    assert_eq!(brute_force_area_polynomial(2).unwrap().coeffs, big(&[1, 1]));
    let p9 = brute_force_area_polynomial(9).unwrap();
    assert_eq!(p9.total(), BigUint::from(4862u32));
    assert!(p9.coeff(10) > BigUint::from(0u32));
    assert!(brute_force_area_polynomial(BRUTE_FORCE_MAX_N + 1).is_err());
}

#[test]
fn row_structure() {
    let t = build_area_polynomials(40).unwrap();
    let one = BigUint::from(1u32);
    for n in 0..=40 {
        let row = t.row(n).unwrap();
        let top = AreaPolynomial::max_area(n);
        assert_eq!(row.coeffs.len(), top + 1);
        assert_eq!(row.coeff(0), one);
        assert_eq!(row.coeff(top), one);
        assert_eq!(row.total(), catalan(n), "n = {n}");
    }
    // overflows u64 well before n = 40
    assert!(catalan(40) > BigUint::from(u64::MAX) / BigUint::from(1u64 << 20));
}

#[test]
fn capped_table_agrees_with_recurrence() {
    let full = build_area_polynomials(30).unwrap();
    let capped = build_area_capped(30, 25).unwrap();
    assert_eq!(capped.max_complete_area(), 25);
    for m in 0..=25 {
        assert_eq!(full.column(m), capped.column(m), "m = {m}");
    }
}

#[test]
fn oversized_table_rejected() {
    match build_area_polynomials(100_000) {
        Err(dyckq::Error::Capacity(msg)) => assert!(msg.contains("100000") || msg.contains("n = ")),
        other => panic!("expected a capacity error, got {other:?}"),
    }
}

#[test]
fn low_area_columns() {
    let t = build_area_polynomials(30).unwrap();
    assert!(t.column(0).iter().all(|c| *c == BigUint::from(1u32)));
    let c1 = t.column(1);
    assert_eq!(c1[0], BigUint::from(0u32));
    assert_eq!(c1[1], BigUint::from(0u32));
    for (n, c) in c1.iter().enumerate().skip(2) {
        assert_eq!(*c, BigUint::from(n as u64 - 1));
    }
}

#[test]
fn partition_series_examples() {
    let t = build_area_polynomials(60).unwrap();
    let q0 = partition_series(&t, 0, 0.3).unwrap();
    let partial = (1.0 - 0.3f64.powi(61)) / 0.7;
    assert!((q0.value - partial).abs() < 1e-14);
    assert!(!q0.tail_warning);
    assert_eq!(partition_series(&t, 1, 0.0).unwrap().value, 0.0);
    let near_one = partition_series(&t, 0, 0.99).unwrap();
    assert!(near_one.tail_warning);
    assert!(partition_series(&t, 0, 1.0).is_err());
    assert!(partition_series(&t, 5000, 0.1).is_err());
}

#[test]
fn truncated_g_examples() {
    assert_eq!(eval_g_truncated(0.0, 0.3, 10).unwrap().value, 1.0);
    let c = eval_g_truncated(0.2, 1.0, 60).unwrap();
    let catalan_gf = (1.0 - 0.2f64.sqrt()) / 0.4;
    assert!((c.value - catalan_gf).abs() < 1e-6, "{}", c.value);
    let g = eval_g_truncated(0.2, 0.5, 60).unwrap();
    let cf = g_cfrac(0.2, &EvalSettings::new(0.5).unwrap())
        .unwrap()
        .value;
    assert!((g.value - cf).abs() < 1e-13);
    assert!(g.tail_bound < 1e-13);
    assert!(eval_g_truncated(0.3, 1.0, 200).is_err());
    assert!(eval_g_truncated(0.2, 0.0, 10).is_err());
}

#[test]
fn truncated_g_approaches_catalan_limit() {
    let exact = (1.0 - (1.0 - 4.0 * 0.24f64).sqrt()) / 0.48;
    let errs: Vec<f64> = [50, 100, 200, 400]
        .iter()
        .map(|&n| (eval_g_truncated(0.24, 1.0, n).unwrap().value - exact).abs())
        .collect();
    assert!(errs.windows(2).all(|w| w[1] < w[0]), "{errs:?}");
}

#[test]
fn exports() {
    let t = build_area_polynomials(3).unwrap();
    let csv = t.to_csv().unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("n,m,c"));
    assert!(csv.lines().any(|l| l == "3,1,2"));
    let json: serde_json::Value = serde_json::from_str(&t.to_json().unwrap()).unwrap();
    assert_eq!(json["rows"][3]["coeffs"][1], "2");
    let big_row = build_area_polynomials(40).unwrap();
    let back: CoefficientTable = serde_json::from_str(&big_row.to_json().unwrap()).unwrap();
    assert_eq!(back.row(40), big_row.row(40));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn tables_nest(a in 0usize..25, extra in 1usize..15) {
        let small = build_area_polynomials(a).unwrap();
        let large = build_area_polynomials(a + extra).unwrap();
        for n in 0..=a {
            prop_assert_eq!(small.row(n), large.row(n));
        }
    }

    #[test]
    fn polynomial_eval_at_one_is_catalan(n in 0usize..30) {
        let t = build_area_polynomials(n).unwrap();
        let v = t.row(n).unwrap().eval(1.0);
        let c = catalan(n).to_string().parse::<f64>().unwrap();
        prop_assert!((v - c).abs() <= 1e-12 * c);
    }
}
