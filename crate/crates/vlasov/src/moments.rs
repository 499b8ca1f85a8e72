use serde::Serialize;

use crate::error::VlasovError;
use crate::field::ddx;
use crate::state::PhaseSpaceState;

/// Velocity moments M_k(x) = Int v^k f dv for k = 0..=n, trapezoid rule
/// on the v-grid.
#[allow(clippy::needless_range_loop)]
pub fn moments(state: &PhaseSpaceState, species_idx: usize, n: usize) -> Vec<Vec<f64>> {
    let g = &state.grid;
    let f = &state.species[species_idx].f;
    let mut out = vec![vec![0.0; g.nx]; n + 1];
    for j in 0..g.nv {
        let v = g.v(j);
        let base_w = g.v_weight(j) * g.dv();
        let row = &f[j * g.nx..(j + 1) * g.nx];
        let mut vk = 1.0;
        for k in 0..=n {
            let w = base_w * vk;
            let mk = &mut out[k];
            for (i, &val) in row.iter().enumerate() {
                mk[i] += w * val;
            }
            vk *= v;
        }
    }
    out
}

/// One sampled instant of a run: the full field, totals needed for the
/// field rows, and the selected species' moments.
#[derive(Clone, Debug, Serialize)]
pub struct HistorySample {
    pub time: f64,
    pub e_total: Vec<f64>,
    pub j_total: Vec<f64>,
    pub rho_net: Vec<f64>,
    pub moments: Vec<Vec<f64>>,
}

/// Max-norm residuals of the moment chain and the two field rows,
/// evaluated on sampled history with centered time differences and
/// spectral x-derivatives.
#[derive(Clone, Debug, Serialize)]
pub struct MomentResidual {
    /// One entry per chain row k = 0..n-1:
    /// d_t M_k + d_x M_{k+1} - qm E k M_{k-1}.
    pub rows: Vec<f64>,
    /// max |d_x E - rho_net|.
    pub poisson: f64,
    /// max |d_t E + j|.
    pub ampere: f64,
}

impl MomentResidual {
    pub fn worst_row(&self) -> f64 {
        self.rows.iter().fold(0.0f64, |m, v| m.max(*v))
    }
}

/// Evaluate the chain rows k = 0..n-1 (each row needs M_{k+1}) plus both
/// field rows on a sampled history for a species with charge-to-mass
/// ratio `qm`.
#[allow(clippy::needless_range_loop)]
pub fn moment_residual(
    state: &PhaseSpaceState,
    history: &[HistorySample],
    qm: f64,
    n: usize,
) -> Result<MomentResidual, VlasovError> {
    if history.len() < 3 {
        return Err(VlasovError::InsufficientHistory { samples: history.len() });
    }
    let stored = history[0].moments.len();
    if n + 1 > stored {
        return Err(VlasovError::BadConfig(format!(
            "need moments up to order {} but history stores {}",
            n + 1,
            stored - 1
        )));
    }
    let nx = state.grid.nx;
    let mut rows = vec![0.0f64; n];
    let mut poisson = 0.0f64;
    let mut ampere = 0.0f64;

    for s in 1..history.len() - 1 {
        let (prev, here, next) = (&history[s - 1], &history[s], &history[s + 1]);
        let dt2 = next.time - prev.time;

        // Field rows at the interior sample.
        let dedx = ddx(state, &here.e_total);
        for i in 0..nx {
            poisson = poisson.max((dedx[i] - here.rho_net[i]).abs());
            let dedt = (next.e_total[i] - prev.e_total[i]) / dt2;
            ampere = ampere.max((dedt + here.j_total[i]).abs());
        }

        for k in 0..n {
            let dmdx = ddx(state, &here.moments[k + 1]);
            for i in 0..nx {
                let dmdt = (next.moments[k][i] - prev.moments[k][i]) / dt2;
                let force = if k >= 1 {
                    qm * here.e_total[i] * k as f64 * here.moments[k - 1][i]
                } else {
                    0.0
                };
                rows[k] = rows[k].max((dmdt + dmdx[i] - force).abs());
            }
        }
    }
    Ok(MomentResidual { rows, poisson, ampere })
}
