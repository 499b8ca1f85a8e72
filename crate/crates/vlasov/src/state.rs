use std::sync::Arc;

use num_complex::Complex;
use rustfft::{Fft, FftPlanner};

use crate::error::VlasovError;
use crate::species::SpeciesSpec;
use crate::spline::PeriodicSpline;

/// Phase-space grid: periodic x over [0, L), inclusive uniform v over
/// [-V, V].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid {
    pub nx: usize,
    pub nv: usize,
    pub length: f64,
    pub vmax: f64,
}

impl Grid {
    pub fn dx(&self) -> f64 {
        self.length / self.nx as f64
    }

    pub fn dv(&self) -> f64 {
        2.0 * self.vmax / (self.nv - 1) as f64
    }

    pub fn x(&self, i: usize) -> f64 {
        i as f64 * self.dx()
    }

    pub fn v(&self, j: usize) -> f64 {
        -self.vmax + j as f64 * self.dv()
    }

    pub fn v_grid(&self) -> Vec<f64> {
        (0..self.nv).map(|j| self.v(j)).collect()
    }

    /// Trapezoid weight for velocity quadrature.
    pub fn v_weight(&self, j: usize) -> f64 {
        if j == 0 || j == self.nv - 1 {
            0.5
        } else {
            1.0
        }
    }
}

/// Distribution values of one species, row-major [iv][ix].
#[derive(Clone, Debug)]
pub struct SpeciesState {
    pub spec: SpeciesSpec,
    pub f: Vec<f64>,
}

/// Full solver state. The electric field is split into the zero-mean
/// spectral Poisson part and the spatially uniform part, which the
/// Poisson equation cannot see and which evolves by dE/dt = -<j>.
#[derive(Clone)]
pub struct PhaseSpaceState {
    pub grid: Grid,
    pub species: Vec<SpeciesState>,
    pub e_tilde: Vec<f64>,
    pub e_mean: f64,
    pub background: f64,
    pub time: f64,
    pub(crate) spline_x: PeriodicSpline,
    pub(crate) spline_v: PeriodicSpline,
    pub(crate) fft_fwd: Arc<dyn Fft<f64>>,
    pub(crate) fft_inv: Arc<dyn Fft<f64>>,
}

impl PhaseSpaceState {
    pub fn new(grid: Grid, specs: Vec<SpeciesSpec>) -> Result<Self, VlasovError> {
        if grid.nx < 8 || grid.nv < 8 {
            return Err(VlasovError::BadConfig("grid must be at least 8x8".into()));
        }
        if specs.is_empty() {
            return Err(VlasovError::BadConfig("at least one species required".into()));
        }
        if !(grid.length > 0.0 && grid.vmax > 0.0) {
            return Err(VlasovError::BadConfig("domain sizes must be positive".into()));
        }
        let v_grid = grid.v_grid();
        let mut species = Vec::with_capacity(specs.len());
        for spec in specs {
            let env = spec.profile.envelope(grid.vmax, &v_grid, grid.dv());
            let mut f = vec![0.0; grid.nx * grid.nv];
            for (j, &ev) in env.iter().enumerate() {
                for i in 0..grid.nx {
                    f[j * grid.nx + i] = ev * spec.profile.spatial_factor(grid.x(i), grid.length);
                }
            }
            species.push(SpeciesState { spec, f });
        }
        let mut planner = FftPlanner::new();
        let mut state = PhaseSpaceState {
            spline_x: PeriodicSpline::new(grid.nx),
            spline_v: PeriodicSpline::new(grid.nv),
            fft_fwd: planner.plan_fft_forward(grid.nx),
            fft_inv: planner.plan_fft_inverse(grid.nx),
            grid,
            species,
            e_tilde: vec![0.0; grid.nx],
            e_mean: 0.0,
            background: 0.0,
            time: 0.0,
        };
        state.background = -mean(&state.raw_charge_density());
        crate::field::solve_poisson(&mut state)?;
        Ok(state)
    }

    /// Number density of one species on the x-grid (trapezoid in v).
    pub fn density(&self, idx: usize) -> Vec<f64> {
        let g = &self.grid;
        let mut n = vec![0.0; g.nx];
        let f = &self.species[idx].f;
        for j in 0..g.nv {
            let w = g.v_weight(j) * g.dv();
            let row = &f[j * g.nx..(j + 1) * g.nx];
            for (i, &val) in row.iter().enumerate() {
                n[i] += w * val;
            }
        }
        n
    }

    /// Current density of one species on the x-grid.
    pub fn current(&self, idx: usize) -> Vec<f64> {
        let g = &self.grid;
        let mut cur = vec![0.0; g.nx];
        let f = &self.species[idx].f;
        for j in 0..g.nv {
            let w = g.v_weight(j) * g.dv() * g.v(j);
            let row = &f[j * g.nx..(j + 1) * g.nx];
            for (i, &val) in row.iter().enumerate() {
                cur[i] += w * val;
            }
        }
        cur
    }

    /// Charge density without the neutralizing background.
    pub(crate) fn raw_charge_density(&self) -> Vec<f64> {
        let g = &self.grid;
        let mut rho = vec![0.0; g.nx];
        for (idx, sp) in self.species.iter().enumerate() {
            let e = sp.spec.charge_f();
            for (r, n) in rho.iter_mut().zip(self.density(idx).iter()) {
                *r += e * n;
            }
        }
        rho
    }

    /// Net charge density including the background.
    pub fn charge_density(&self) -> Vec<f64> {
        self.raw_charge_density().iter().map(|r| r + self.background).collect()
    }

    /// Total current density on the x-grid.
    pub fn current_total(&self) -> Vec<f64> {
        let mut j = vec![0.0; self.grid.nx];
        for (idx, sp) in self.species.iter().enumerate() {
            let e = sp.spec.charge_f();
            for (t, c) in j.iter_mut().zip(self.current(idx).iter()) {
                *t += e * c;
            }
        }
        j
    }

    /// Spatial mean of the total current.
    pub fn mean_current(&self) -> f64 {
        mean(&self.current_total())
    }

    /// Full electric field on the x-grid.
    pub fn e_total(&self) -> Vec<f64> {
        self.e_tilde.iter().map(|e| e + self.e_mean).collect()
    }

    pub(crate) fn spectrum(&self, real: &[f64]) -> Vec<Complex<f64>> {
        let mut buf: Vec<Complex<f64>> = real.iter().map(|&v| Complex::new(v, 0.0)).collect();
        self.fft_fwd.process(&mut buf);
        let scale = 1.0 / self.grid.nx as f64;
        for z in buf.iter_mut() {
            *z *= scale;
        }
        buf
    }

    pub(crate) fn signal(&self, spec: &[Complex<f64>]) -> Vec<f64> {
        let mut buf = spec.to_vec();
        self.fft_inv.process(&mut buf);
        buf.iter().map(|z| z.re).collect()
    }
}

impl std::fmt::Debug for PhaseSpaceState {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PhaseSpaceState")
            .field("grid", &self.grid)
            .field("species", &self.species.len())
            .field("e_mean", &self.e_mean)
            .field("time", &self.time)
            .finish()
    }
}

pub(crate) fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}
