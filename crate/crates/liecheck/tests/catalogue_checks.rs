//! Full catalogue run: every bundled generator family against its system,
//! the deliberately broken generators, closure under commutators, and
//! linearity of residuals.

use liecheck::catalogue::{
    emhd_generator, emhd_system, hm_generator, hm_system, kinetic_generator, kinetic_system,
    moment_generator, moment_system,
};
use liecheck::{check_conditional_symmetry, check_symmetry, commutator, Generator};
use symkernel::rat;

#[test]
fn emhd_all_six_generators_pass() {
    let sys = emhd_system();
    sys.validate().unwrap();
    for id in ["x1", "x2", "x3", "x4", "x5", "x6"] {
        let g = emhd_generator(&sys, id).unwrap();
        let rep = check_symmetry(&g, &sys).unwrap();
        assert!(rep.passed(), "{id} failed: witness {:?}", rep.witness);
    }
}

#[test]
fn moment_generators_pass_for_all_truncations() {
    for n in 0..=4u32 {
        let sys = moment_system(n);
        sys.validate().unwrap();
        for id in ["x1", "x2", "x3", "x4", "x5"] {
            let g = moment_generator(&sys, n, id).unwrap();
            let rep = check_symmetry(&g, &sys).unwrap();
            assert!(rep.passed(), "n={n} {id} failed: witness {:?}", rep.witness);
        }
    }
}

#[test]
fn top_moment_family_passes_for_n_1_to_4() {
    for n in 1..=4u32 {
        let sys = moment_system(n);
        let g = moment_generator(&sys, n, "xfgn").unwrap();
        let rep = check_symmetry(&g, &sys).unwrap();
        assert!(rep.passed(), "n={n} xfgn failed: witness {:?}", rep.witness);
    }
}

#[test]
fn top_moment_family_fails_at_n_0() {
    // At n = 0 the fed moment M0 enters the field equation E_x = 1 - M0,
    // so the family stops short of the lowest truncation.
    let sys = moment_system(0);
    let g = moment_generator(&sys, 0, "xfgn").unwrap();
    let rep = check_symmetry(&g, &sys).unwrap();
    assert!(!rep.passed());
    assert!(rep.witness.is_some());
}

#[test]
fn kinetic_generators_pass() {
    let sys = kinetic_system();
    sys.validate().unwrap();
    for id in ["x1", "x2", "x3", "x4", "x5"] {
        let g = kinetic_generator(&sys, id).unwrap();
        let rep = check_symmetry(&g, &sys).unwrap();
        assert!(rep.passed(), "kinetic {id} failed: witness {:?}", rep.witness);
    }
}

#[test]
fn conditional_pair_passes_with_side_conditions() {
    let sys = hm_system();
    for id in ["x1", "x2"] {
        let (g, side) = hm_generator(&sys, id).unwrap();
        let rep = check_conditional_symmetry(&g, &sys, &side).unwrap();
        assert!(rep.passed(), "hm {id} failed: witness {:?}", rep.witness);
        assert_eq!(rep.conditions.len(), 1);
    }
}

#[test]
fn conditional_x1_fails_without_its_side_condition() {
    let sys = hm_system();
    let (g, _) = hm_generator(&sys, "x1").unwrap();
    let rep = check_symmetry(&g, &sys).unwrap();
    assert!(!rep.passed());
    // The obstruction is the second-derivative prolongation term.
    let witness = rep.witness.unwrap();
    assert!(witness.contains("D(Phi,x,x)"), "witness was {witness}");
}

#[test]
fn lone_x_scaling_is_not_a_symmetry() {
    let sys = hm_system();
    let (g, _) = hm_generator(&sys, "xbad").unwrap();
    let rep = check_symmetry(&g, &sys).unwrap();
    assert!(!rep.passed());
    assert!(rep.witness.is_some());
}

#[test]
fn emhd_commutators_close() {
    let sys = emhd_system();
    let gens: Vec<Generator> = ["x1", "x2", "x3", "x4", "x5", "x6"]
        .iter()
        .map(|id| emhd_generator(&sys, id).unwrap())
        .collect();
    for i in 0..gens.len() {
        for j in (i + 1)..gens.len() {
            let bracket = commutator(&gens[i], &gens[j]);
            let rep = check_symmetry(&bracket, &sys).unwrap();
            assert!(
                rep.passed(),
                "[{},{}] not a symmetry: {:?}",
                gens[i].label,
                gens[j].label,
                rep.witness
            );
        }
    }
}

#[test]
fn moment_commutators_close() {
    for n in 0..=4u32 {
        let sys = moment_system(n);
        let gens: Vec<Generator> = ["x1", "x2", "x3", "x4", "x5"]
            .iter()
            .map(|id| moment_generator(&sys, n, id).unwrap())
            .collect();
        for i in 0..gens.len() {
            for j in (i + 1)..gens.len() {
                let bracket = commutator(&gens[i], &gens[j]);
                let rep = check_symmetry(&bracket, &sys).unwrap();
                assert!(
                    rep.passed(),
                    "n={n} [{},{}] not a symmetry: {:?}",
                    gens[i].label,
                    gens[j].label,
                    rep.witness
                );
            }
        }
    }
}

#[test]
fn oscillating_pair_brackets_to_translations() {
    // [X1, X4] = -X5 and [X1, X5] = X4 on the moment chain.
    let sys = moment_system(2);
    let x1 = moment_generator(&sys, 2, "x1").unwrap();
    let x4 = moment_generator(&sys, 2, "x4").unwrap();
    let x5 = moment_generator(&sys, 2, "x5").unwrap();

    let b14 = commutator(&x1, &x4);
    let minus_x5 = Generator::linear_combination(&rat(-1, 1), &x5, &rat(0, 1), &x1);
    for key in sys.dependents.iter() {
        assert!(b14.eta_of(key).equivalent(&minus_x5.eta_of(key)));
    }
    for key in sys.independents.iter() {
        assert!(b14.xi_of(key).equivalent(&minus_x5.xi_of(key)));
    }

    let b15 = commutator(&x1, &x5);
    for key in sys.dependents.iter() {
        assert!(b15.eta_of(key).equivalent(&x4.eta_of(key)));
    }

    // [X4, X5] vanishes: the two time-profiles multiply commuting actions.
    let b45 = commutator(&x4, &x5);
    assert!(b45.is_zero(), "[X4,X5] = {:?}", b45);
}

#[test]
fn residuals_are_linear_in_the_generator() {
    let residuals = |g: &Generator, sys: &symkernel::PdeSystem| liecheck::residuals(g, sys, &[]);
    let sys = moment_system(2);
    let x3 = moment_generator(&sys, 2, "x3").unwrap();
    let x4 = moment_generator(&sys, 2, "x4").unwrap();
    let (a, b) = (rat(3, 2), rat(-7, 5));
    let combo = Generator::linear_combination(&a, &x3, &b, &x4);

    let r_combo = residuals(&combo, &sys).unwrap();
    let r3 = residuals(&x3, &sys).unwrap();
    let r4 = residuals(&x4, &sys).unwrap();
    let ae = symkernel::Expr::from_rat(a);
    let be = symkernel::Expr::from_rat(b);
    for ((rc, ra), rb) in r_combo.iter().zip(r3.iter()).zip(r4.iter()) {
        let lin = &(&ae * ra) + &(&be * rb);
        assert!(rc.equivalent(&lin));
    }
}

#[test]
fn translation_generators_have_all_zero_prolongations() {
    let sys = emhd_system();
    for id in ["x1", "x2", "x3", "x4"] {
        let g = emhd_generator(&sys, id).unwrap();
        let pg = liecheck::prolong(&g, &sys, 2).unwrap();
        assert!(pg.eta_j.values().all(|e| e.is_zero()), "{id} table not zero");
    }
}

#[test]
fn perturbation_shift_identity_holds() {
    let rep = liecheck::exact_case("emhd-perturbed-derivation").unwrap();
    assert!(rep.passed, "witness {:?}", rep.witness);
}
