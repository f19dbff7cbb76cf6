//! Runs every acceptance criterion at its stated tolerance and prints one
//! pass/fail line per criterion.

use std::process::Command;
use std::time::{Duration, Instant};

use lct::verify::{criteria, run_criterion};

const VERIFY_BUDGET: Duration = Duration::from_secs(300);

#[test]
fn acceptance() {
    let mut failed = Vec::new();
    for c in criteria() {
        let r = run_criterion(&c, None);
        println!("criterion {:>2}: {}", r.id, r.summary_line());
        for check in &r.checks {
            println!("              {}", lct::verify::describe(check));
        }
        if !r.pass() {
            failed.push(r.id);
        }
    }

    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_lct")).arg("verify").output().expect("run lct verify");
    let elapsed = start.elapsed();
    let ok17 = out.status.success() && elapsed <= VERIFY_BUDGET;
    println!(
        "criterion 17: {} cli/verify: exit status {:?}, {:.1} s of a {} s budget",
        if ok17 { "PASS" } else { "FAIL" },
        out.status.code(),
        elapsed.as_secs_f64(),
        VERIFY_BUDGET.as_secs()
    );
    if !ok17 {
        print!("{}", String::from_utf8_lossy(&out.stdout));
        failed.push(17);
    }

    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
