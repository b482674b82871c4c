use std::path::Path;

use hilden::verify::{self, Config, Report};

fn untimed(mut r: Report) -> Report {
    r.ms = 0;
    r
}

#[test]
fn suites_repeat_exactly() {
    let one = Config { workers: 1, ..Config::default() };
    let many = Config { workers: 4, ..Config::default() };
    for n in [3, 4] {
        let a = untimed(verify::verify_relations(n, &one).unwrap());
        let b = untimed(verify::verify_relations(n, &many).unwrap());
        assert_eq!(a, b);
        assert_eq!(untimed(verify::membership_suite(n, &one)), untimed(verify::membership_suite(n, &many)));
        assert_eq!(untimed(verify::phi_property_b(n, 20, 9)), untimed(verify::phi_property_b(n, 20, 9)));
        assert_eq!(untimed(verify::purity_suite(n)), untimed(verify::purity_suite(n)));
    }
    let cases = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/phi_cases");
    assert_eq!(
        untimed(verify::phi_cases(&cases, &one).unwrap()),
        untimed(verify::phi_cases(&cases, &many).unwrap())
    );
}

#[test]
fn c2_table_repeats_exactly() {
    let mut a = verify::bruteforce_c2(3, &Config { workers: 1, ..Config::default() }).unwrap();
    let mut b = verify::bruteforce_c2(3, &Config { workers: 3, ..Config::default() }).unwrap();
    a.ms = 0;
    b.ms = 0;
    assert_eq!(a, b);
}

#[test]
fn seeded_samples_repeat() {
    assert_eq!(verify::positive_samples(3, 30, 11), verify::positive_samples(3, 30, 11));
    assert_ne!(verify::positive_samples(3, 30, 11), verify::positive_samples(3, 30, 12));
}

#[test]
fn failure_lists_are_sorted() {
    let mut all = hilden::presentation::relation_instances(3);
    for r in all.iter_mut().step_by(7) {
        r.rhs = r.rhs.concat(&hilden::presentation::word(3, "t(2)"));
    }
    let cfg = Config { workers: 4, ..Config::default() };
    let a = untimed(verify::verify_instances("mutated", 3, &all, &cfg).unwrap());
    let b = untimed(verify::verify_instances("mutated", 3, &all, &cfg).unwrap());
    assert!(a.failures.len() > 1);
    assert_eq!(a, b);
}
