//! One line per acceptance criterion; exits nonzero when any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use essx_cli::corpus::verify_corpus;
use num_bigint::BigInt;

/// Budget for the whole default run.
const TOTAL_RUNTIME: Duration = Duration::from_secs(60);

fn main() -> ExitCode {
    let start = Instant::now();
    let report = verify_corpus(0, None);
    let elapsed = start.elapsed();
    println!("acceptance (seed 0)");
    for line in report.lines() {
        println!("{line}");
    }
    let mut ok = report.passed();
    let within = elapsed < TOTAL_RUNTIME;
    println!("[{}]    total runtime {:.3}s (budget {}s)", if within { "PASS" } else { "FAIL" }, elapsed.as_secs_f64(), TOTAL_RUNTIME.as_secs());
    ok &= within;

    let again = verify_corpus(0, None);
    let same = report.to_json() == again.to_json();
    println!("[{}]    fixed seed gives identical reports", if same { "PASS" } else { "FAIL" });
    ok &= same;

    let starved = verify_corpus(0, Some(&BigInt::from(1)));
    let failing: Vec<u32> = starved.criteria.iter().filter(|c| !c.passed).map(|c| c.id).collect();
    let expected = starved.exit_code() == 1 && failing.contains(&7);
    println!("[{}]    r_cap = 1 reports witness-not-found (failing criteria {failing:?})", if expected { "PASS" } else { "FAIL" });
    ok &= expected;

    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
