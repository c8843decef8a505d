//! Acceptance gate: runs every verification criterion and prints one
//! pass/fail line per criterion. The test fails if any criterion does.

use quatgroups::verify::{run_all, VerifyConfig};

#[test]
fn acceptance_criteria() {
    let reports = run_all(&VerifyConfig::default());
    let mut failures = 0;
    for r in &reports {
        match &r.detail {
            None => println!("PASS {:>2} {}", r.id, r.name),
            Some(d) => {
                failures += 1;
                println!("FAIL {:>2} {}: {d}", r.id, r.name);
            }
        }
    }
    assert_eq!(failures, 0, "{failures} acceptance criteria failed");
}
