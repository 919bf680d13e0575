use parcross::corpus::{enumerate_systems, labeled_systems};
use parcross::suite::run_suite;

#[test]
fn every_labeled_system_up_to_four_blocks() {
    let systems: Vec<_> = (0..=4).flat_map(labeled_systems).collect();
    assert_eq!(systems.len(), 1 + 2 + 7 + 34 + 209);
    let report = run_suite(&systems);
    assert!(report.passed(), "{:#?}", report.violations);
}

#[test]
fn every_unlabeled_system_up_to_four_blocks() {
    let systems = enumerate_systems(4).unwrap();
    let report = run_suite(&systems);
    assert_eq!(report.systems, systems.len());
    assert!(report.passed(), "{:#?}", report.violations);
}
