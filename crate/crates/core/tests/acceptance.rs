//! Runs every acceptance check with the default seed and prints one line per
//! check. Exits nonzero if any check fails or exceeds the time limit.

use std::process::ExitCode;

use k3mirror::verify::{run_check, CHECKS, DEFAULT_SEED, TIME_LIMIT};

fn main() -> ExitCode {
    let mut failures = Vec::new();
    for id in 1..=CHECKS.len() {
        let r = run_check(id, DEFAULT_SEED);
        let ok = r.passed && r.within_budget();
        println!(
            "[{}] {:>2}. {} ({:.2?}): {}",
            if ok { "PASS" } else { "FAIL" },
            r.id,
            r.name,
            r.elapsed,
            r.detail
        );
        if !ok {
            failures.push(r.id);
        }
    }
    if failures.is_empty() {
        println!("acceptance: {} of {} passed", CHECKS.len(), CHECKS.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed {failures:?} (limit {TIME_LIMIT:?} each)");
        ExitCode::FAILURE
    }
}
