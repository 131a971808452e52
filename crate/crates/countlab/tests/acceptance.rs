//! Acceptance suite: runs every verification suite at its pinned scale with
//! exact integer equality (zero tolerance) and pinned runtime budgets,
//! printing one pass/fail line per criterion.
//!
//! Run with `cargo test -p countlab --test acceptance -- --nocapture` to see
//! the per-criterion lines.

use std::sync::Mutex;
use std::time::Duration;

use countlab::verify::{run_suite, SuiteConfig, SuiteId, VerificationReport};
use countlab::Execution;

/// Criteria time themselves; the lock keeps them from running concurrently
/// so wall times are measured solo.
static EXCLUSIVE: Mutex<()> = Mutex::new(());

struct Outcome {
    report: VerificationReport,
    budget: Duration,
}

impl Outcome {
    fn ok(&self) -> bool {
        self.report.passed() && self.report.wall_time <= self.budget
    }
}

fn run(label: &str, id: SuiteId, n_max: u32, budget: Duration) -> Outcome {
    let _guard = EXCLUSIVE.lock().unwrap_or_else(|e| e.into_inner());
    let config = SuiteConfig {
        n_max: Some(n_max),
        seed: 0,
        exec: Execution::default(),
    };
    let report = run_suite(id, &config);
    let outcome = Outcome { report, budget };
    println!(
        "criterion {label}: {} — suite {} ran {} checks, {} failures, {:.2}s (budget {}s)",
        if outcome.ok() { "PASS" } else { "FAIL" },
        outcome.report.suite,
        outcome.report.checks_run,
        outcome.report.failures.len(),
        outcome.report.wall_time.as_secs_f64(),
        outcome.budget.as_secs(),
    );
    outcome
}

fn assert_outcome(outcome: &Outcome) {
    assert!(
        outcome.report.passed(),
        "suite {} reported counterexamples:\n{}",
        outcome.report.suite,
        outcome.report.text()
    );
    assert!(
        outcome.report.wall_time <= outcome.budget,
        "suite {} exceeded its {}s budget: {:.2}s",
        outcome.report.suite,
        outcome.budget.as_secs(),
        outcome.report.wall_time.as_secs_f64()
    );
}

#[test]
fn criterion_1_unique_count_multiplier_suite() {
    let outcome = run("1", SuiteId::T3, 12, Duration::from_secs(10));
    assert_outcome(&outcome);
}

#[test]
fn criterion_2_half_count_construction_suite() {
    let outcome = run("2", SuiteId::T7, 10, Duration::from_secs(30));
    assert_outcome(&outcome);
}

#[test]
fn criterion_3_mersenne_dtt_suite() {
    let outcome = run("3", SuiteId::T8, 10, Duration::from_secs(10));
    assert_outcome(&outcome);
}

#[test]
fn criterion_4_majority_simulation_suite() {
    let outcome = run("4", SuiteId::T4, 8, Duration::from_secs(60));
    assert_outcome(&outcome);
}

#[test]
fn criterion_5_parity_simulation_and_agreement_suites() {
    // Shared budget across the parity simulation and the promise/parity
    // agreement sweep.
    let parity = run("5 (simulation)", SuiteId::T5, 8, Duration::from_secs(60));
    let agreement = run("5 (agreement)", SuiteId::T6, 20, Duration::from_secs(60));
    assert_outcome(&parity);
    assert!(
        agreement.report.passed(),
        "suite {} reported counterexamples:\n{}",
        agreement.report.suite,
        agreement.report.text()
    );
    let combined = parity.report.wall_time + agreement.report.wall_time;
    assert!(
        combined <= Duration::from_secs(60),
        "combined parity suites exceeded 60s: {:.2}s",
        combined.as_secs_f64()
    );
}

#[test]
fn criterion_6_few_solutions_suite() {
    let outcome = run("6", SuiteId::T2, 6, Duration::from_secs(30));
    assert_outcome(&outcome);
}

#[test]
fn criterion_7_class_registry_suite() {
    let outcome = run("7", SuiteId::Classes, 12, Duration::from_secs(30));
    assert_outcome(&outcome);
}

#[test]
fn criterion_8_engine_equivalence_suite() {
    // The five-second bound on the 24-variable instance is checked inside
    // the suite and surfaces as a failure record.
    let outcome = run("8", SuiteId::Engines, 16, Duration::from_secs(120));
    assert_outcome(&outcome);
}

#[test]
fn criterion_9_gadget_audit_suite() {
    let outcome = run("9", SuiteId::Gadgets, 10, Duration::from_secs(60));
    assert_outcome(&outcome);
}
