//! Acceptance suite: one test per verification criterion, each printing
//! a pass/fail line (visible with `--nocapture`) and asserting the
//! criterion at its stated tolerance.
//!
//! The Chebyshev criterion asserts a percent-level accuracy bound that
//! the stock coefficient set measurably does not meet against the
//! quadrature kernel (it misses by an order of magnitude under every
//! reading and argument convention, and an order-6 least-squares refit
//! cannot reach it either). That criterion is expected to fail and the
//! failure message carries the measured numbers; see also the
//! `chebyshev_claim` docs.

use nnsd::checks::{self, CriterionReport};

fn report_and_assert(report: &CriterionReport) {
    println!(
        "ACCEPTANCE [{}] {} — {}",
        if report.pass { "PASS" } else { "FAIL" },
        report.id,
        report.title
    );
    for line in &report.lines {
        println!(
            "    [{}] {} ({})",
            if line.pass { "ok" } else { "FAIL" },
            line.name,
            line.detail
        );
    }
    if let Some(failure) = report.first_failure() {
        panic!(
            "criterion '{}' failed at: {} ({})",
            report.id, failure.name, failure.detail
        );
    }
}

#[test]
fn criterion_1_oracle_certification() {
    report_and_assert(&checks::oracle_certification().unwrap());
}

#[test]
fn criterion_2_mean_identities() {
    report_and_assert(&checks::mean_identities().unwrap());
}

#[test]
fn criterion_3_endpoint_equivalence() {
    report_and_assert(&checks::endpoint_equivalence().unwrap());
}

#[test]
fn criterion_4_chebyshev_claim() {
    report_and_assert(&checks::chebyshev_claim().unwrap());
}

#[test]
fn criterion_5_monte_carlo_consistency() {
    report_and_assert(&checks::monte_carlo_consistency(1_000_000).unwrap());
}

#[test]
fn criterion_6_peak_ratio() {
    report_and_assert(&checks::peak_ratio().unwrap());
}

#[test]
fn criterion_7_small_s_structure() {
    report_and_assert(&checks::small_s_structure().unwrap());
}

#[test]
fn criterion_8_kernel_accuracy() {
    report_and_assert(&checks::kernel_accuracy().unwrap());
}

#[test]
fn general_shell_cross_check() {
    report_and_assert(&checks::general_shell_endpoints().unwrap());
}
