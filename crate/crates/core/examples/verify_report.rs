//! Runs the self-check suite and prints a summary per case.

use hilbertkit::verify::{verify_suite, VerifyOptions};

fn main() {
    let report = verify_suite(&VerifyOptions::default());
    for c in &report.suite {
        println!(
            "{:<30} {}  residual {:.2e}  tolerance {:.0e}",
            c.id,
            if c.passed { "ok  " } else { "FAIL" },
            c.residual,
            c.tolerance
        );
    }
    println!("{}/{} passed", report.summary.passed, report.summary.total);
}
