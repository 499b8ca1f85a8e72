use serde::Serialize;

use crate::diag::{field_energy, kinetic_energy, species_mass, total_energy, undershoot};
use crate::error::VlasovError;
use crate::exec::for_each_row_batch;
use crate::field::solve_poisson;
use crate::moments::{moments, HistorySample};
use crate::state::PhaseSpaceState;

/// Advect every v-row of one species in x by v dt (periodic splines).
fn advect_x(state: &mut PhaseSpaceState, dt: f64) {
    let g = state.grid;
    let dx = g.dx();
    let spline = state.spline_x.clone();
    for sp in state.species.iter_mut() {
        for_each_row_batch(&mut sp.f, g.nx, |row0, batch| {
            let mut out = vec![0.0; g.nx];
            for (r, row) in batch.chunks_mut(g.nx).enumerate() {
                let delta = g.v(row0 + r) * dt / dx;
                if delta != 0.0 {
                    spline.shift(row, delta, &mut out);
                    row.copy_from_slice(&out);
                }
            }
        });
    }
}

/// Advect every x-column of one species in v by qm E(x) dt (natural
/// splines, zero fill). Works on the transposed layout so each column is
/// contiguous.
fn advect_v(state: &mut PhaseSpaceState, accel_dt: &[Vec<f64>]) {
    let g = state.grid;
    let dv = g.dv();
    let spline = state.spline_v.clone();
    for (sp, accel) in state.species.iter_mut().zip(accel_dt.iter()) {
        let mut t = transpose(&sp.f, g.nv, g.nx);
        for_each_row_batch(&mut t, g.nv, |col0, batch| {
            let mut out = vec![0.0; g.nv];
            for (c, col) in batch.chunks_mut(g.nv).enumerate() {
                let delta = accel[col0 + c] / dv;
                if delta != 0.0 {
                    spline.shift(col, delta, &mut out);
                    col.copy_from_slice(&out);
                }
            }
        });
        sp.f = transpose(&t, g.nx, g.nv);
    }
}

fn transpose(data: &[f64], rows: usize, cols: usize) -> Vec<f64> {
    let mut out = vec![0.0; data.len()];
    for r in 0..rows {
        for c in 0..cols {
            out[c * rows + r] = data[r * cols + c];
        }
    }
    out
}

impl PhaseSpaceState {
    /// One Strang-split step: half x-advection, field solve, full
    /// v-advection (with the uniform field component advanced by the mean
    /// current law), half x-advection.
    pub fn step(&mut self, dt: f64) -> Result<(), VlasovError> {
        if !dt.is_finite() || dt <= 0.0 {
            return Err(VlasovError::BadConfig("dt must be positive".into()));
        }
        // Advective displacement guards: a quarter of each domain.
        let x_disp = self.grid.vmax * dt / 2.0;
        if x_disp > self.grid.length / 4.0 {
            return Err(VlasovError::CflViolation {
                displacement: x_disp,
                bound: self.grid.length / 4.0,
            });
        }

        advect_x(self, dt / 2.0);
        solve_poisson(self)?;

        let j_before = self.mean_current();
        let e_mean_mid = self.e_mean - 0.5 * dt * j_before;
        let mut max_kick = 0.0f64;
        let mut accel_dt: Vec<Vec<f64>> = Vec::with_capacity(self.species.len());
        for sp in &self.species {
            let qm = sp.spec.qm_f();
            let mut kicks = Vec::with_capacity(self.grid.nx);
            for e in &self.e_tilde {
                let kick = qm * (e + e_mean_mid) * dt;
                max_kick = max_kick.max(kick.abs());
                kicks.push(kick);
            }
            accel_dt.push(kicks);
        }
        if max_kick > self.grid.vmax / 4.0 {
            return Err(VlasovError::CflViolation {
                displacement: max_kick,
                bound: self.grid.vmax / 4.0,
            });
        }
        advect_v(self, &accel_dt);
        let j_after = self.mean_current();
        self.e_mean -= 0.5 * dt * (j_before + j_after);

        advect_x(self, dt / 2.0);
        self.time += dt;

        for sp in &self.species {
            if sp.f.iter().any(|v| !v.is_finite()) {
                return Err(VlasovError::NonFinite { time: self.time });
            }
        }
        if !self.e_mean.is_finite() {
            return Err(VlasovError::NonFinite { time: self.time });
        }
        Ok(())
    }
}

/// Per-sample scalar diagnostics of a run.
#[derive(Clone, Debug, Serialize)]
pub struct DiagSample {
    pub time: f64,
    pub field_energy: f64,
    pub total_energy: f64,
    pub masses: Vec<f64>,
    pub kinetic: Vec<f64>,
    pub e_mean: f64,
    pub mean_current: f64,
    /// max_x |dE/dt + j| from consecutive samples (the redundant field
    /// row, evaluated as a diagnostic).
    pub ampere_residual: f64,
    pub undershoot: f64,
}

pub struct RunHistory {
    pub diags: Vec<DiagSample>,
    pub samples: Vec<HistorySample>,
}

/// Drive `steps` steps, sampling scalar diagnostics and moment history
/// every `stride` steps for the selected species.
pub fn run(
    state: &mut PhaseSpaceState,
    dt: f64,
    steps: usize,
    stride: usize,
    moments_n: usize,
    species_idx: usize,
) -> Result<RunHistory, VlasovError> {
    if species_idx >= state.species.len() {
        return Err(VlasovError::BadConfig("species index out of range".into()));
    }
    let stride = stride.max(1);
    let mut diags = Vec::new();
    let mut samples = Vec::new();
    let mut prev_e: Option<(f64, Vec<f64>, Vec<f64>)> = None;

    let mut record = |state: &PhaseSpaceState,
                      prev_e: &mut Option<(f64, Vec<f64>, Vec<f64>)>| {
        let e_total = state.e_total();
        let j_total = state.current_total();
        let ampere = match prev_e {
            Some((t0, e0, j0)) => {
                let dt_s = state.time - *t0;
                let mut worst = 0.0f64;
                for i in 0..e_total.len() {
                    let dedt = (e_total[i] - e0[i]) / dt_s;
                    let j_mid = 0.5 * (j_total[i] + j0[i]);
                    worst = worst.max((dedt + j_mid).abs());
                }
                worst
            }
            None => 0.0,
        };
        *prev_e = Some((state.time, e_total.clone(), j_total.clone()));
        diags.push(DiagSample {
            time: state.time,
            field_energy: field_energy(state),
            total_energy: total_energy(state),
            masses: (0..state.species.len()).map(|i| species_mass(state, i)).collect(),
            kinetic: (0..state.species.len()).map(|i| kinetic_energy(state, i)).collect(),
            e_mean: state.e_mean,
            mean_current: state.mean_current(),
            ampere_residual: ampere,
            undershoot: undershoot(state),
        });
        samples.push(HistorySample {
            time: state.time,
            e_total,
            j_total,
            rho_net: state.charge_density(),
            moments: moments(state, species_idx, moments_n),
        });
    };

    // The stepper leaves e_tilde at its mid-step value; refresh it so
    // every recorded sample pairs the field with the distribution it
    // belongs to.
    solve_poisson(state)?;
    record(state, &mut prev_e);
    for step in 1..=steps {
        state.step(dt)?;
        if step % stride == 0 || step == steps {
            solve_poisson(state)?;
            record(state, &mut prev_e);
        }
    }
    Ok(RunHistory { diags, samples })
}
