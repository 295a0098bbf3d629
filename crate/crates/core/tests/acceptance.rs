//! One test per acceptance criterion. Each prints a PASS/FAIL line with the
//! measurement, its pinned threshold and the runtime against its budget.

use ergw::verify::run_check;

fn criterion(id: &str) {
    let outcome = run_check(id, false).expect("check runs");
    println!("{}", outcome.line());
    assert!(outcome.passed, "{}", outcome.line());
}

#[test]
fn c01_convolution_identities() {
    criterion("C1");
}

#[test]
fn c02_summatory_asymptotic() {
    criterion("C2");
}

#[test]
fn c03_rational_main_term() {
    criterion("C3");
}

#[test]
fn c04_wintner_limit() {
    criterion("C4");
}

#[test]
fn c05_kernel_approximation_decay() {
    criterion("C5");
}

#[test]
fn c06_hardy_littlewood_constant() {
    criterion("C6");
}

#[test]
fn c07_transference_identity() {
    criterion("C7");
}

#[test]
fn c08_oscillation_trend() {
    criterion("C8");
}

#[test]
fn c09_mobius_decay() {
    criterion("C9");
}

#[test]
fn c10_delange_ratio() {
    criterion("C10");
}

#[test]
fn c11_method_equivalence() {
    criterion("C11");
}
