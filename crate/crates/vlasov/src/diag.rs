use crate::state::PhaseSpaceState;

/// Neumaier-compensated sum in fixed index order: the quadratures below
/// are conservation diagnostics, so their own roundoff has to sit well
/// under the drifts they measure.
pub(crate) fn kahan_sum(values: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Phase-space mass of one species. On the periodic velocity view with
/// dead boundary zones the rectangle rule is the quadrature the spline
/// advection preserves exactly, so the conservation diagnostics use it
/// (it agrees with the trapezoid rule up to the empty boundary cells).
/// Fixed summation order, compensated.
pub fn species_mass(state: &PhaseSpaceState, idx: usize) -> f64 {
    let g = &state.grid;
    let total = kahan_sum(state.species[idx].f.iter().copied());
    total * g.dv() * g.dx()
}

/// Kinetic energy (m/2) Int v^2 f of one species, rectangle rule.
pub fn kinetic_energy(state: &PhaseSpaceState, idx: usize) -> f64 {
    let g = &state.grid;
    let f = &state.species[idx].f;
    let total = kahan_sum((0..g.nv).flat_map(|j| {
        let w = g.dv() * g.v(j) * g.v(j);
        f[j * g.nx..(j + 1) * g.nx].iter().map(move |&v| w * v)
    }));
    0.5 * state.species[idx].spec.mass_f() * total * g.dx()
}

/// Field energy (1/2) Int E^2 including the uniform component.
pub fn field_energy(state: &PhaseSpaceState) -> f64 {
    let dx = state.grid.dx();
    let e_mean = state.e_mean;
    0.5 * kahan_sum(state.e_tilde.iter().map(|e| (e + e_mean) * (e + e_mean))) * dx
}

/// Total conserved energy.
pub fn total_energy(state: &PhaseSpaceState) -> f64 {
    let mut acc = field_energy(state);
    for idx in 0..state.species.len() {
        acc += kinetic_energy(state, idx);
    }
    acc
}

/// Interpolation undershoot monitor: largest negative excursion of any
/// distribution, relative to its peak. The scheme does not enforce
/// positivity; this reports how far below zero it went.
pub fn undershoot(state: &PhaseSpaceState) -> f64 {
    let mut worst = 0.0f64;
    for sp in &state.species {
        let mut min = f64::MAX;
        let mut max = f64::MIN;
        for &v in &sp.f {
            min = min.min(v);
            max = max.max(v);
        }
        if max > 0.0 && min < 0.0 {
            worst = worst.max(-min / max);
        }
    }
    worst
}
