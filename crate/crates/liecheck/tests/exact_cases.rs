//! Every bundled exact-solution case must pass its own claim.

use liecheck::{exact_case, exact_case_ids};

#[test]
fn all_exact_cases_pass() {
    for id in exact_case_ids() {
        let rep = exact_case(id).unwrap();
        assert!(rep.passed, "case {id} failed: witness {:?}", rep.witness);
    }
}

#[test]
fn travelling_wave_reports_the_dispersion_polynomial() {
    let rep = exact_case("hm-eq20").unwrap();
    let disp = rep.dispersion.expect("generic-frequency case reports a dispersion factor");
    // Content-free factor of the generic residual; see the in-crate oracle
    // for the hand expansion it is checked against.
    assert!(disp.contains("Omega"));
    assert!(rep.witness.is_some());
}

#[test]
fn second_class_emits_the_ode_pair() {
    let rep = exact_case("hm-second-class-ode").unwrap();
    assert_eq!(rep.emitted.len(), 2);
    for line in &rep.emitted {
        assert!(line.starts_with("eq:") && line.ends_with("= 0"));
    }
}

#[test]
fn unknown_case_is_an_error() {
    assert!(exact_case("no-such-case").is_err());
}
