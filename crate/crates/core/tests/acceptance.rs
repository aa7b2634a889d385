//! One line per acceptance criterion; exits nonzero if any fails.

use std::process::ExitCode;
use std::time::Instant;

fn main() -> ExitCode {
    let mut failed = Vec::new();
    for (id, _, check) in projsum::selftest::CRITERIA {
        let start = Instant::now();
        let outcome = check();
        println!("{}  ({:.1} s)", outcome.headline(), start.elapsed().as_secs_f64());
        for d in &outcome.details {
            println!("    {d}");
        }
        if !outcome.passed {
            failed.push(*id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failing criteria {failed:?}");
        ExitCode::FAILURE
    }
}
