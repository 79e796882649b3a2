//! Runs every acceptance criterion against its time budget and prints one
//! line per criterion.

use std::process::ExitCode;
use std::time::Instant;

use circle_graphs::selftest::{run_criterion, CRITERIA};

fn main() -> ExitCode {
    let mut failed = 0;
    for c in &CRITERIA {
        let start = Instant::now();
        let r = run_criterion(c.id);
        let elapsed = start.elapsed();
        let ok = r.passed && elapsed <= c.budget;
        println!(
            "{} criterion {} {}: {} [{:.3} s, budget {} s]",
            if ok { "PASS" } else { "FAIL" },
            c.id,
            c.name,
            r.detail,
            elapsed.as_secs_f64(),
            c.budget.as_secs()
        );
        failed += usize::from(!ok);
    }
    println!("{} of {} criteria passed", CRITERIA.len() - failed, CRITERIA.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
