use gbf::monotone::{class_suite, CMCheckSpec};
use gbf::ParamPair;

#[test]
fn class_suite_passes_on_omega_pairs() {
    let spec = CMCheckSpec::standard();
    let mut failures = Vec::new();
    for (a, b) in [(1.7, 1.6), (2.5, 0.5), (3.2, 1.1), (3.5, 1.0)] {
        let pair = ParamPair::new(a, b).unwrap();
        for r in class_suite(&pair, &spec).unwrap() {
            println!(
                "{:<40} {:<16} worst={:+.3e} noise={} passed={}",
                r.label, r.class_id.to_string(), r.worst_violation, r.within_noise, r.passed
            );
            if !r.passed {
                failures.push(format!("{} {:?}", r.label, r.witness));
            }
        }
    }
    assert!(failures.is_empty(), "{failures:#?}");
}
