//! One pass/fail line per acceptance criterion.

mod common;

use std::time::Instant;

use bfree_core::suite::{self, Check, CriterionOutcome};
use proptest::strategy::Strategy;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

/// Runs `cases` random inputs through `check`, returning (passed, first failure).
fn sample<S: Strategy>(strategy: S, cases: u32, check: impl Fn(S::Value) -> Result<(), String>) -> Check
where
    S::Value: std::fmt::Debug,
{
    let mut runner = TestRunner::new(Config { cases, failure_persistence: None, ..Config::default() });
    let result = runner.run(&strategy, |v| check(v).map_err(TestCaseError::fail));
    Check { name: String::new(), pass: result.is_ok(), detail: result.err().map(|e| e.to_string()).unwrap_or_else(|| format!("{cases}/{cases}")) }
}

fn named(name: &str, mut c: Check) -> Check {
    c.name = name.into();
    c
}

/// Criterion 8 adds the randomized identities to the deterministic suite checks.
fn criterion_8() -> CriterionOutcome {
    let start = Instant::now();
    let mut out = suite::run_criterion(8).expect("criterion 8");
    out.checks
        .insert(0, named("(a) singleton period formula vs direct search", sample(common::singleton_input(), 200, |(a, c)| common::singleton_agrees(a, &c))));
    out.checks.insert(1, named("(b) ℳ_A = ℳ_{A^prim} on [−2000, 2000]", sample(common::set_input(), 200, |a| common::primitivize_agrees(&a, 2000))));
    out.checks.insert(
        2,
        named("(c) progression intersection gcd identity", sample(common::progression_input(), 500, |(r, l, s, m)| common::progression_agrees(r, l, s, m))),
    );
    out.elapsed_ms = start.elapsed().as_millis();
    out
}

#[test]
fn acceptance() {
    let mut failed = Vec::new();
    println!();
    for &(id, _, _) in suite::CRITERIA {
        let out = if id == 8 { criterion_8() } else { suite::run_criterion(id).expect("criterion") };
        println!("{}", out.line());
        if !out.pass() {
            failed.push(id);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
