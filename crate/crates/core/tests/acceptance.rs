//! One test per acceptance criterion. Each prints a PASS/FAIL line.

use dyckq::parallel::Parallelism;
use dyckq::validate::run_criterion;

fn check(id: u32) {
    let report = run_criterion(id, Parallelism::default());
    println!("{}", report.line());
    assert!(report.passed, "{}", report.line());
}

#[test]
fn c01_oracle_equivalence() {
    check(1);
}

#[test]
fn c02_functional_equation_residual() {
    check(2);
}

#[test]
fn c03_cross_method_agreement() {
    check(3);
}

#[test]
fn c04_contour_representation() {
    check(4);
}

#[test]
fn c05_euler_maclaurin_bound() {
    check(5);
}

#[test]
fn c06_uniform_approximation() {
    check(6);
}

#[test]
fn c07_tricritical_amplitude() {
    check(7);
}

#[test]
fn c08_scaling_function_reconstruction() {
    check(8);
}

#[test]
fn c09_scaling_function_series() {
    check(9);
}

#[test]
fn c10_finite_size_scaling() {
    check(10);
}

#[test]
fn c11_special_function_spot_values() {
    check(11);
}
