use std::io::Write;

use horoflow::checks::run_criterion;

#[test]
fn acceptance_criteria() {
    let results: Vec<_> = (1..=10).filter_map(run_criterion).collect();
    assert_eq!(results.len(), 10);
    let mut err = std::io::stderr().lock();
    for r in &results {
        writeln!(err, "{r}").unwrap();
    }
    let failed: Vec<_> = results.iter().filter(|r| !r.passed()).map(|r| r.id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
