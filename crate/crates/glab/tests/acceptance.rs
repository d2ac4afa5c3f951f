//! Acceptance gate: every criterion must pass at its stated tolerance and
//! inside its runtime budget. One pass/fail line is printed per criterion
//! (run with `--nocapture` to see them).

#[test]
fn acceptance_suite() {
    let reports = glab::acceptance::run_all();
    assert_eq!(reports.len(), 14);
    let mut failures = Vec::new();
    for r in &reports {
        println!("{}", glab::acceptance::format_report(r));
        if !r.passed {
            failures.push(format!("criterion {}: {}", r.id, r.detail));
        }
    }
    assert!(failures.is_empty(), "failed criteria:\n{}", failures.join("\n"));
}
