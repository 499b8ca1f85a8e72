use num_complex::Complex;

use crate::error::VlasovError;
use crate::state::{mean, PhaseSpaceState};

const NEUTRALITY_TOL: f64 = 1e-8;

/// Solve dE/dx = rho_net spectrally with the zero-mean gauge for the
/// periodic part. The uniform component of E is not touched here: the
/// Poisson equation cannot determine it; it evolves through the mean
/// current law in the stepper.
pub(crate) fn solve_poisson(state: &mut PhaseSpaceState) -> Result<(), VlasovError> {
    let rho = state.charge_density();
    let imbalance = mean(&rho);
    if imbalance.abs() > NEUTRALITY_TOL {
        return Err(VlasovError::NeutralityViolation { value: imbalance });
    }
    let nx = state.grid.nx;
    let mut spec = state.spectrum(&rho);
    let two_pi = 2.0 * std::f64::consts::PI;
    for (i, z) in spec.iter_mut().enumerate() {
        if i == 0 {
            *z = Complex::new(0.0, 0.0);
            continue;
        }
        let k_index = if i <= nx / 2 { i as f64 } else { i as f64 - nx as f64 };
        let k = two_pi * k_index / state.grid.length;
        *z /= Complex::new(0.0, k);
    }
    state.e_tilde = state.signal(&spec);
    Ok(())
}

/// Spectral x-derivative of a periodic sample array on the state's grid.
pub(crate) fn ddx(state: &PhaseSpaceState, values: &[f64]) -> Vec<f64> {
    let nx = state.grid.nx;
    let mut spec = state.spectrum(values);
    let two_pi = 2.0 * std::f64::consts::PI;
    for (i, z) in spec.iter_mut().enumerate() {
        let k_index = if i <= nx / 2 { i as f64 } else { i as f64 - nx as f64 };
        let k = two_pi * k_index / state.grid.length;
        *z *= Complex::new(0.0, k);
    }
    state.signal(&spec)
}
