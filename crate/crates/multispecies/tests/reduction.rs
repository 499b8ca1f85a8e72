//! Numeric mixing and reduction checks: charge-density invariance to
//! roundoff for the sampled F family, the positivity caveat boundary,
//! the exp(a) limit, and the full-vs-reduced two-run equivalence.

use multispecies::{
    apply_mixing, charge_density_l2_distance, exp_family_transform, reduce_equal_qm, MixError,
    MixingFunction,
};
use num_rational::Rational64;
use vlasov::{Grid, PhaseSpaceState, Profile, SpeciesSpec};

fn rat(n: i64, d: i64) -> Rational64 {
    Rational64::new(n, d)
}

/// Alpha-particle-like and deuteron-like pair with exactly equal
/// charge-to-mass ratios, one of them carrying a weak density wave.
fn two_species_state() -> PhaseSpaceState {
    let grid = Grid { nx: 64, nv: 128, length: 4.0 * std::f64::consts::PI, vmax: 6.0 };
    PhaseSpaceState::new(
        grid,
        vec![
            SpeciesSpec::new(
                "alpha",
                rat(2, 1),
                rat(4, 1),
                Profile::Perturbed { density: 0.5, vth: 0.8, drift: 0.0, eps: 0.02, mode: 1 },
            )
            .unwrap(),
            SpeciesSpec::new(
                "deuteron",
                rat(1, 1),
                rat(2, 1),
                Profile::Maxwellian { density: 1.0, vth: 1.0, drift: 0.0 },
            )
            .unwrap(),
        ],
    )
    .unwrap()
}

#[test]
fn charge_density_is_invariant_for_the_sampled_family() {
    let state = two_species_state();
    let rho0 = state.charge_density();
    for mixing in [
        MixingFunction::Const { c: 0.05 },
        MixingFunction::F1Scaled { c: 1.0 },
        MixingFunction::Product,
        MixingFunction::F1Scaled { c: 0.5 }, // f1 / e2 with e2 = 2? here c is explicit
    ] {
        let (mixed, _) = apply_mixing(&state, (0, 1), mixing).unwrap();
        let rho1 = mixed.charge_density();
        let worst = rho0
            .iter()
            .zip(rho1.iter())
            .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
        assert!(worst < 1e-14, "{mixing:?}: charge density moved by {worst}");
    }
}

#[test]
fn positivity_caveat_flags_exactly_where_expected() {
    let state = two_species_state();
    let e2 = state.species[1].spec.charge_f();
    // F = f1/e2 empties species 0 exactly: boundary of positivity, no flag.
    let (boundary, caveats) = apply_mixing(&state, (0, 1), MixingFunction::F1Scaled { c: 1.0 / e2 }).unwrap();
    assert!(!caveats.positivity_lost, "boundary case must not flag");
    assert!(boundary.species[0].f.iter().all(|v| v.abs() < 1e-12));
    // F = 2 f1/e2 drives species 0 negative: flag must raise.
    let (_, caveats) = apply_mixing(&state, (0, 1), MixingFunction::F1Scaled { c: 2.0 / e2 }).unwrap();
    assert!(caveats.positivity_lost);
    // Constant F preserves charge density but breaks moment convergence.
    let (_, caveats) = apply_mixing(&state, (0, 1), MixingFunction::Const { c: 0.1 }).unwrap();
    assert!(caveats.moments_unbounded);
    assert!(!apply_mixing(&state, (0, 1), MixingFunction::Product).unwrap().1.moments_unbounded);
}

#[test]
fn reduction_combines_and_preserves_charge_density() {
    let state = two_species_state();
    let (reduced, result) = reduce_equal_qm(&state, (0, 1)).unwrap();
    assert_eq!(reduced.species.len(), 1);
    assert_eq!(result.dropped, 0);
    assert!(result.charge_density_max_change < 1e-14);
    assert!(!result.caveats.positivity_lost);
    // Combined distribution is (e1 f1 + e2 f2)/e2 = f1 + f2/... with
    // e1 = 2, e2 = 1? Here e1 = 2, e2 = 1: combined = 2 f1 + f2.
    for k in 0..reduced.species[0].f.len() {
        let expected = 2.0 * state.species[0].f[k] + state.species[1].f[k];
        assert!((reduced.species[0].f[k] - expected).abs() < 1e-15);
    }
}

#[test]
fn zero_first_species_reduction_only_drops_it() {
    let grid = Grid { nx: 32, nv: 64, length: 4.0 * std::f64::consts::PI, vmax: 6.0 };
    let state = PhaseSpaceState::new(
        grid,
        vec![
            SpeciesSpec::new(
                "empty",
                rat(2, 1),
                rat(4, 1),
                Profile::Maxwellian { density: 0.0, vth: 1.0, drift: 0.0 },
            )
            .unwrap(),
            SpeciesSpec::new(
                "deuteron",
                rat(1, 1),
                rat(2, 1),
                Profile::Maxwellian { density: 1.0, vth: 1.0, drift: 0.0 },
            )
            .unwrap(),
        ],
    )
    .unwrap();
    let (reduced, _) = reduce_equal_qm(&state, (0, 1)).unwrap();
    for (a, b) in reduced.species[0].f.iter().zip(state.species[1].f.iter()) {
        assert_eq!(a, b);
    }
}

#[test]
fn unequal_ratios_are_rejected() {
    let grid = Grid { nx: 32, nv: 64, length: 4.0 * std::f64::consts::PI, vmax: 6.0 };
    let state = PhaseSpaceState::new(
        grid,
        vec![
            SpeciesSpec::electron(Profile::Maxwellian { density: 1.0, vth: 1.0, drift: 0.0 }),
            SpeciesSpec::new(
                "proton-like",
                rat(1, 1),
                rat(100, 1),
                Profile::Maxwellian { density: 1.0, vth: 0.1, drift: 0.0 },
            )
            .unwrap(),
        ],
    )
    .unwrap();
    assert!(matches!(
        reduce_equal_qm(&state, (0, 1)),
        Err(MixError::UnequalRatios(0, 1))
    ));
}

#[test]
fn exp_family_limits() {
    let state = two_species_state();
    // a = 0 is the identity.
    let same = exp_family_transform(&state, (0, 1), 0.0).unwrap();
    assert_eq!(same.species[0].f, state.species[0].f);
    assert_eq!(same.species[1].f, state.species[1].f);

    // Any a preserves the charge density to roundoff.
    let moved = exp_family_transform(&state, (0, 1), 1.0).unwrap();
    let worst = state
        .charge_density()
        .iter()
        .zip(moved.charge_density().iter())
        .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
    assert!(worst < 1e-14, "charge density moved by {worst}");

    // a = -40 matches the simplifying reduction to < 1e-16 relative.
    let deep = exp_family_transform(&state, (0, 1), -40.0).unwrap();
    let (reduced, _) = reduce_equal_qm(&state, (0, 1)).unwrap();
    let peak = reduced.species[0].f.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let mut worst = 0.0f64;
    for (a, b) in deep.species[1].f.iter().zip(reduced.species[0].f.iter()) {
        worst = worst.max((a - b).abs());
    }
    assert!(worst / peak < 1e-16, "relative deviation {}", worst / peak);
    let f1_peak = deep.species[0].f.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    assert!(f1_peak / peak < 1e-16);
}

#[test]
fn full_and_reduced_runs_agree_in_the_field() {
    // Two-run oracle: the combined species sees the same charge density
    // and the same characteristics, so both runs must produce the same
    // field trajectory to roundoff accumulation.
    let steps = 500;
    let dt = 1e-2;
    let mut full = two_species_state();
    let (mut reduced, _) = reduce_equal_qm(&full, (0, 1)).unwrap();

    let mut e_full = Vec::with_capacity(steps);
    let mut e_reduced = Vec::with_capacity(steps);
    for _ in 0..steps {
        full.step(dt).unwrap();
        reduced.step(dt).unwrap();
        e_full.push(full.e_total());
        e_reduced.push(reduced.e_total());
    }
    let distance = charge_density_l2_distance(&e_full, &e_reduced);
    assert!(distance < 1e-10, "relative L2 distance {distance}");
}
