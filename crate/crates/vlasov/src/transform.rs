use serde::{Deserialize, Serialize};

use crate::error::VlasovError;
use crate::exec::for_each_row_batch;
use crate::state::PhaseSpaceState;

/// Finite flows of the point-symmetry family acting on states at their
/// current time t:
/// - X2: x -> x + eps
/// - X3: x -> L x, v -> L v, E -> L E, f -> f/L with L = e^eps
/// - X4: x -> x + eps cos t, v -> v - eps sin t, E -> E + eps cos t
/// - X5: x -> x + eps sin t, v -> v + eps cos t, E -> E + eps sin t
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FlowId {
    X2,
    X3,
    X4,
    X5,
}

impl FlowId {
    pub fn parse(s: &str) -> Result<Self, VlasovError> {
        match s.to_ascii_lowercase().as_str() {
            "x2" => Ok(FlowId::X2),
            "x3" => Ok(FlowId::X3),
            "x4" => Ok(FlowId::X4),
            "x5" => Ok(FlowId::X5),
            other => Err(VlasovError::BadConfig(format!("unknown transform id `{other}`"))),
        }
    }
}

/// Fraction of the peak distribution tolerated in the outermost velocity
/// cells after a shift; anything above means the support hit the domain
/// edge.
const MARGIN_TOL: f64 = 1e-6;

/// Apply the exact finite flow, resampling fields with the same spline
/// interpolants the solver uses. eps = 0 returns the state unchanged.
pub fn apply_finite_transform(
    state: &PhaseSpaceState,
    id: FlowId,
    eps: f64,
) -> Result<PhaseSpaceState, VlasovError> {
    if eps == 0.0 {
        return Ok(state.clone());
    }
    let mut out = state.clone();
    match id {
        FlowId::X3 => {
            let lambda = eps.exp();
            out.grid.length *= lambda;
            out.grid.vmax *= lambda;
            for sp in out.species.iter_mut() {
                for v in sp.f.iter_mut() {
                    *v /= lambda;
                }
            }
            for e in out.e_tilde.iter_mut() {
                *e *= lambda;
            }
            out.e_mean *= lambda;
            // Densities are invariant under this flow (f/L integrated
            // over L dv), so the neutralizing background stays put.
            return Ok(out);
        }
        FlowId::X2 => {
            shift_x(&mut out, eps);
        }
        FlowId::X4 => {
            let t = state.time;
            shift_x(&mut out, eps * t.cos());
            shift_v(&mut out, -eps * t.sin())?;
            out.e_mean += eps * t.cos();
        }
        FlowId::X5 => {
            let t = state.time;
            shift_x(&mut out, eps * t.sin());
            shift_v(&mut out, eps * t.cos())?;
            out.e_mean += eps * t.sin();
        }
    }
    Ok(out)
}

fn shift_x(state: &mut PhaseSpaceState, sx: f64) {
    if sx == 0.0 {
        return;
    }
    let g = state.grid;
    let delta = sx / g.dx();
    let spline = state.spline_x.clone();
    for sp in state.species.iter_mut() {
        for_each_row_batch(&mut sp.f, g.nx, |_, batch| {
            let mut out = vec![0.0; g.nx];
            for row in batch.chunks_mut(g.nx) {
                spline.shift(row, delta, &mut out);
                row.copy_from_slice(&out);
            }
        });
    }
    let mut e_new = vec![0.0; g.nx];
    spline.shift(&state.e_tilde, delta, &mut e_new);
    state.e_tilde = e_new;
}

fn shift_v(state: &mut PhaseSpaceState, sv: f64) -> Result<(), VlasovError> {
    if sv == 0.0 {
        return Ok(());
    }
    let g = state.grid;
    let delta = sv / g.dv();
    let spline = state.spline_v.clone();
    for sp in state.species.iter_mut() {
        let mut t = transpose(&sp.f, g.nv, g.nx);
        for_each_row_batch(&mut t, g.nv, |_, batch| {
            let mut out = vec![0.0; g.nv];
            for col in batch.chunks_mut(g.nv) {
                spline.shift(col, delta, &mut out);
                col.copy_from_slice(&out);
            }
        });
        sp.f = transpose(&t, g.nx, g.nv);
    }
    // The periodic wrap is only inert while the boundary cells stay
    // empty; occupation there means the support left the domain.
    for sp in &state.species {
        let peak = sp.f.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let mut worst = 0.0f64;
        for j in [0usize, 1, g.nv - 2, g.nv - 1] {
            for &v in &sp.f[j * g.nx..(j + 1) * g.nx] {
                worst = worst.max(v.abs());
            }
        }
        if peak > 0.0 && worst > MARGIN_TOL * peak {
            return Err(VlasovError::TransformOutOfDomain { mass_change: worst / peak });
        }
    }
    Ok(())
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
