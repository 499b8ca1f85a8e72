use num_rational::Rational64;
use serde::{Deserialize, Serialize};
use thiserror::Error;
use vlasov::PhaseSpaceState;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MixError {
    #[error("species {0} and {1} have different charge-to-mass ratios")]
    UnequalRatios(usize, usize),

    #[error("species {0} has zero charge; cannot absorb the pair into it")]
    ZeroCharge(usize),

    #[error("species index {0} out of range")]
    BadIndex(usize),

    #[error("no eligible pair with equal charge-to-mass ratio")]
    NoEligiblePair,
}

/// Concrete mixing functions F(f1, f2) sampled by the numeric checks.
#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum MixingFunction {
    Const { c: f64 },
    /// F = c * f1; c = 1/e2 is the simplifying member.
    F1Scaled { c: f64 },
    Product,
}

/// Global-constraint flags the transformation may violate: it preserves
/// the charge density, not positivity or moment convergence.
#[derive(Clone, Copy, Debug, Default, Serialize, PartialEq, Eq)]
pub struct Caveats {
    pub positivity_lost: bool,
    pub moments_unbounded: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReductionResult {
    pub dropped: usize,
    pub absorbed_into: usize,
    pub caveats: Caveats,
    /// max_x of the net charge-density change at the reduction instant.
    pub charge_density_max_change: f64,
}

fn check_pair(state: &PhaseSpaceState, pair: (usize, usize)) -> Result<(), MixError> {
    let (i1, i2) = pair;
    if i1 >= state.species.len() || i2 >= state.species.len() || i1 == i2 {
        return Err(MixError::BadIndex(i1.max(i2)));
    }
    let r1 = state.species[i1].spec.qm_ratio();
    let r2 = state.species[i2].spec.qm_ratio();
    if r1 != r2 {
        return Err(MixError::UnequalRatios(i1, i2));
    }
    Ok(())
}

const POSITIVITY_TOL: f64 = 1e-12;

/// Apply f1' = f1 - e2 F(f1,f2), f2' = f2 + e1 F(f1,f2) pointwise on the
/// shared grid, flagging lost positivity and (for constant F) divergent
/// moments.
pub fn apply_mixing(
    state: &PhaseSpaceState,
    pair: (usize, usize),
    mixing: MixingFunction,
) -> Result<(PhaseSpaceState, Caveats), MixError> {
    check_pair(state, pair)?;
    let (i1, i2) = pair;
    let e1 = state.species[i1].spec.charge_f();
    let e2 = state.species[i2].spec.charge_f();
    let mut out = state.clone();
    let n = state.species[i1].f.len();
    let mut peak = 0.0f64;
    for idx in [i1, i2] {
        for &v in &state.species[idx].f {
            peak = peak.max(v.abs());
        }
    }
    let mut min_after = f64::MAX;
    for k in 0..n {
        let f1 = state.species[i1].f[k];
        let f2 = state.species[i2].f[k];
        let mix = match mixing {
            MixingFunction::Const { c } => c,
            MixingFunction::F1Scaled { c } => c * f1,
            MixingFunction::Product => f1 * f2,
        };
        let f1p = f1 - e2 * mix;
        let f2p = f2 + e1 * mix;
        min_after = min_after.min(f1p).min(f2p);
        out.species[i1].f[k] = f1p;
        out.species[i2].f[k] = f2p;
    }
    let caveats = Caveats {
        positivity_lost: min_after < -POSITIVITY_TOL * peak.max(1e-300),
        moments_unbounded: matches!(mixing, MixingFunction::Const { c } if c != 0.0),
    };
    Ok((out, caveats))
}

/// The simplifying member F = f1/e2: species `pair.0` is emptied into
/// `pair.1` (which then carries (e1 f1 + e2 f2)/e2) and removed from the
/// state. Charge density and field are untouched at the reduction
/// instant.
pub fn reduce_equal_qm(
    state: &PhaseSpaceState,
    pair: (usize, usize),
) -> Result<(PhaseSpaceState, ReductionResult), MixError> {
    check_pair(state, pair)?;
    let (i1, i2) = pair;
    if state.species[i2].spec.charge == Rational64::from_integer(0) {
        return Err(MixError::ZeroCharge(i2));
    }
    let rho_before = state.charge_density();
    let e1 = state.species[i1].spec.charge_f();
    let e2 = state.species[i2].spec.charge_f();

    let mut out = state.clone();
    let mut min_after = f64::MAX;
    for k in 0..state.species[i1].f.len() {
        let combined = (e1 * state.species[i1].f[k] + e2 * state.species[i2].f[k]) / e2;
        min_after = min_after.min(combined);
        out.species[i2].f[k] = combined;
    }
    out.species.remove(i1);

    let rho_after = out.charge_density();
    let change = rho_before
        .iter()
        .zip(rho_after.iter())
        .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
    let peak = state.species[i2].f.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let result = ReductionResult {
        dropped: i1,
        absorbed_into: if i1 < i2 { i2 - 1 } else { i2 },
        caveats: Caveats {
            positivity_lost: min_after < -POSITIVITY_TOL * peak.max(1e-300),
            moments_unbounded: false,
        },
        charge_density_max_change: change,
    };
    Ok((out, result))
}

/// One-parameter family f1' = e^a f1, f2' = f2 + (e1/e2)(1 - e^a) f1,
/// reaching the identity at a = 0 and the reduction as a -> -inf.
pub fn exp_family_transform(
    state: &PhaseSpaceState,
    pair: (usize, usize),
    a: f64,
) -> Result<PhaseSpaceState, MixError> {
    check_pair(state, pair)?;
    let (i1, i2) = pair;
    if state.species[i2].spec.charge == Rational64::from_integer(0) {
        return Err(MixError::ZeroCharge(i2));
    }
    let e1 = state.species[i1].spec.charge_f();
    let e2 = state.species[i2].spec.charge_f();
    let lambda = a.exp();
    let mut out = state.clone();
    for k in 0..state.species[i1].f.len() {
        let f1 = state.species[i1].f[k];
        let f2 = state.species[i2].f[k];
        out.species[i1].f[k] = lambda * f1;
        out.species[i2].f[k] = f2 + e1 / e2 * (1.0 - lambda) * f1;
    }
    Ok(out)
}

/// Relative L2 distance between two sampled field trajectories.
pub fn charge_density_l2_distance(a: &[Vec<f64>], b: &[Vec<f64>]) -> f64 {
    let mut num = 0.0;
    let mut den = 0.0;
    for (ea, eb) in a.iter().zip(b.iter()) {
        for (x, y) in ea.iter().zip(eb.iter()) {
            num += (x - y) * (x - y);
            den += x * x;
        }
    }
    if den == 0.0 {
        num.sqrt()
    } else {
        (num / den).sqrt()
    }
}
