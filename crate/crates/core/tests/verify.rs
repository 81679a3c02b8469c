use std::time::Instant;

use rsym_core::pn::Pn;
use rsym_core::verify::{mutation_witnesses, mutations, verify_suite, SuiteOptions};
use rsym_core::Field;

#[test]
fn every_mutation_of_p2_is_caught() {
    for field in [Field::Rational, Field::Prime(2), Field::Prime(3)] {
        let p = Pn::new(2, field).unwrap();
        let ms = mutations(p.algebra());
        // 24 nonzero constants; over GF(2) negation changes nothing
        let expected = if field == Field::Prime(2) { 24 } else { 48 };
        assert_eq!(ms.len(), expected, "{field}");
        for (m, failure) in mutation_witnesses(&p) {
            let failure = failure.unwrap_or_else(|| panic!("{} undetected over {field}", m.describe(p.algebra())));
            assert!(!failure.detail.is_empty(), "{}: {} has no witness", m.describe(p.algebra()), failure.id);
        }
    }
}

#[test]
fn full_suite_passes() {
    let start = Instant::now();
    let report = verify_suite(&SuiteOptions::default()).unwrap();
    eprintln!("{report}");
    eprintln!("suite: {} checks in {:?}", report.checks.len(), start.elapsed());
    assert!(report.passed());
    let ids: Vec<&str> = report.checks.iter().map(|c| c.id.as_str()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
    for k in 1..=12 {
        assert!(ids.iter().any(|id| id.starts_with(&format!("c{k:02}."))), "criterion {k} missing");
    }
}

#[test]
fn reduced_suite_has_fewer_checks() {
    let small = SuiteOptions {
        fields: vec![Field::Rational],
        n_max: 1,
        counterexample_n_max: 0,
        random_terms: 0,
        seed: 1,
    };
    let report = verify_suite(&small).unwrap();
    assert!(report.passed(), "{report}");
    assert!(report.checks.len() < verify_suite(&SuiteOptions { n_max: 2, ..small.clone() }).unwrap().checks.len());
}

#[test]
fn sample_identities_are_nonzero_identities_of_p2() {
    for field in [Field::Rational, Field::Prime(2), Field::Prime(3)] {
        let p = Pn::new(2, field).unwrap();
        let sample = rsym_core::verify::sample_p2_identities(field);
        assert!(sample.len() >= 10);
        for f in &sample {
            assert!(!f.is_zero(), "zero sample over {field}");
            assert!(f.max_var() <= 3);
            assert!(rsym_core::identity::is_identity_free(p.algebra(), f), "{f} over {field}");
        }
    }
}
