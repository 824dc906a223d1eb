//! One PASS/FAIL line per acceptance check. Runs without the libtest
//! harness so every line shows in `cargo test` output; exits nonzero if any
//! check fails.

use gfq_regular::suite::{run_check, SuiteOptions, CHECKS};

fn main() {
    let opts = SuiteOptions::default();
    let mut failed = 0;
    for id in 1..=CHECKS.len() {
        let c = run_check(id, &opts);
        println!("{}", c.line());
        if !c.passed {
            failed += 1;
        }
    }
    println!("acceptance: {} passed, {failed} failed", CHECKS.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
