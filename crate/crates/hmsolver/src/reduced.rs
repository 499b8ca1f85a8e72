use num_complex::Complex;
use serde::Serialize;

use crate::error::SolverError;
use crate::fft::{wavenumber, Fft1d};
use crate::freq::{measure_frequency, FreqMeasurement};
use crate::params::HmExactParams;

/// State of the conditionally reduced system on the 2*pi-periodic y-grid:
/// h = 1/(G+1) is the evolved conserved density, F the stream profile and
/// G = F - F_yy the vorticity profile, kept consistent after every step.
#[derive(Clone)]
pub struct ReducedHmState {
    pub ny: usize,
    pub h: Vec<f64>,
    pub f: Vec<f64>,
    pub g: Vec<f64>,
    pub time: f64,
    fft: Fft1d,
}

const MIN_G1: f64 = 0.05;
const CFL: f64 = 0.5;

impl ReducedHmState {
    pub fn y_grid(&self) -> Vec<f64> {
        (0..self.ny)
            .map(|j| 2.0 * std::f64::consts::PI * j as f64 / self.ny as f64)
            .collect()
    }

    /// Seed the travelling solution at t = 0:
    /// F = alpha (1 + beta cos(q y)), G = alpha + alpha beta (1+q^2) cos(q y).
    pub fn seed_exact(params: &HmExactParams, ny: usize) -> Result<Self, SolverError> {
        Self::exact_state(params, ny, 0.0)
    }

    /// The travelling solution at an arbitrary time, used as the
    /// trajectory oracle.
    pub fn exact_state(params: &HmExactParams, ny: usize, time: f64) -> Result<Self, SolverError> {
        params.validate()?;
        if ny < 8 {
            return Err(SolverError::BadConfig("ny must be at least 8".into()));
        }
        let q = params.q as f64;
        let omega = params.omega_total();
        let mut f = Vec::with_capacity(ny);
        let mut g = Vec::with_capacity(ny);
        let mut h = Vec::with_capacity(ny);
        for j in 0..ny {
            let y = 2.0 * std::f64::consts::PI * j as f64 / ny as f64;
            let c = (omega * time + q * y).cos();
            let fj = params.alpha * (1.0 + params.beta * c);
            let gj = params.alpha + params.alpha * params.beta * (1.0 + q * q) * c;
            if gj + 1.0 <= MIN_G1 {
                return Err(SolverError::SingularVorticity { min_g1: gj + 1.0 });
            }
            f.push(fj);
            g.push(gj);
            h.push(1.0 / (gj + 1.0));
        }
        Ok(ReducedHmState { ny, h, f, g, time, fft: Fft1d::new(ny) })
    }

    fn helmholtz_invert(&self, g: &[f64]) -> Vec<f64> {
        let mut spec = self.fft.spectrum(g);
        for (i, z) in spec.iter_mut().enumerate() {
            let k = wavenumber(i, self.ny);
            *z /= 1.0 + k * k;
        }
        self.fft.signal(&spec)
    }

    fn flux_divergence(&self, h: &[f64]) -> Result<Vec<f64>, SolverError> {
        let mut g = Vec::with_capacity(self.ny);
        for &hj in h {
            if !(hj.is_finite() && hj > 0.0) || 1.0 / hj < MIN_G1 {
                return Err(SolverError::SingularVorticity { min_g1: 1.0 / hj.max(1e-300) });
            }
            g.push(1.0 / hj - 1.0);
        }
        let f = self.helmholtz_invert(&g);
        let flux: Vec<f64> = f.iter().zip(h.iter()).map(|(fj, hj)| fj * hj).collect();
        let mut spec = self.fft.spectrum(&flux);
        for (i, z) in spec.iter_mut().enumerate() {
            let k = wavenumber(i, self.ny);
            *z *= Complex::new(0.0, k);
        }
        Ok(self.fft.signal(&spec).iter().map(|v| -v).collect())
    }

    /// One RK4 step of the conservative form dh/dt + d(F h)/dy = 0,
    /// followed by the consistent reconstruction of G and F.
    pub fn step(&mut self, dt: f64) -> Result<(), SolverError> {
        let dy = 2.0 * std::f64::consts::PI / self.ny as f64;
        let max_f = self.f.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let bound = if max_f > 0.0 { CFL * dy / max_f } else { f64::INFINITY };
        if dt > bound {
            return Err(SolverError::CflViolation { dt, bound });
        }

        let k1 = self.flux_divergence(&self.h)?;
        let mid1: Vec<f64> =
            self.h.iter().zip(&k1).map(|(h, k)| h + 0.5 * dt * k).collect();
        let k2 = self.flux_divergence(&mid1)?;
        let mid2: Vec<f64> =
            self.h.iter().zip(&k2).map(|(h, k)| h + 0.5 * dt * k).collect();
        let k3 = self.flux_divergence(&mid2)?;
        let end: Vec<f64> = self.h.iter().zip(&k3).map(|(h, k)| h + dt * k).collect();
        let k4 = self.flux_divergence(&end)?;

        for j in 0..self.ny {
            self.h[j] += dt / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
            if !self.h[j].is_finite() {
                return Err(SolverError::NonFinite { time: self.time });
            }
            if self.h[j] <= 0.0 || 1.0 / self.h[j] < MIN_G1 {
                return Err(SolverError::SingularVorticity { min_g1: 1.0 / self.h[j] });
            }
        }
        for j in 0..self.ny {
            self.g[j] = 1.0 / self.h[j] - 1.0;
        }
        self.f = self.helmholtz_invert(&self.g);
        self.time += dt;
        Ok(())
    }

    /// Complex amplitude of mode q of the stream profile F.
    pub fn mode_amplitude(&self, q: i32) -> Complex<f64> {
        let mut acc = Complex::new(0.0, 0.0);
        for (j, &fj) in self.f.iter().enumerate() {
            let y = 2.0 * std::f64::consts::PI * j as f64 / self.ny as f64;
            let phase = -(q as f64) * y;
            acc += Complex::new(fj, 0.0) * Complex::from_polar(1.0, phase);
        }
        acc / self.ny as f64
    }

    /// Conserved quadrature: the y-integral of h.
    pub fn mass(&self) -> f64 {
        let dy = 2.0 * std::f64::consts::PI / self.ny as f64;
        self.h.iter().sum::<f64>() * dy
    }

    /// Max-norm of G - (F - F_yy), which the reconstruction keeps at
    /// spectral accuracy.
    pub fn consistency_g(&self) -> f64 {
        let mut spec = self.fft.spectrum(&self.f);
        for (i, z) in spec.iter_mut().enumerate() {
            let k = wavenumber(i, self.ny);
            *z *= 1.0 + k * k;
        }
        let recon = self.fft.signal(&spec);
        self.g
            .iter()
            .zip(recon.iter())
            .fold(0.0f64, |m, (g, r)| m.max((g - r).abs()))
    }

    /// Max-norm of h (G+1) - 1.
    pub fn consistency_h(&self) -> f64 {
        self.h
            .iter()
            .zip(self.g.iter())
            .fold(0.0f64, |m, (h, g)| m.max((h * (g + 1.0) - 1.0).abs()))
    }

    /// Max-norm distance between two states' h profiles.
    pub fn distance(&self, other: &ReducedHmState) -> f64 {
        self.h
            .iter()
            .zip(other.h.iter())
            .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()))
    }
}

/// Run configuration for the reduced solver.
#[derive(Clone, Debug, Serialize, serde::Deserialize)]
pub struct ReducedRunConfig {
    pub ny: usize,
    pub dt: f64,
    pub t_end: f64,
    pub alpha: f64,
    pub beta: f64,
    pub q: i32,
    #[serde(default = "default_stride")]
    pub output_stride: usize,
}

fn default_stride() -> usize {
    10
}

#[derive(Clone, Debug, Serialize)]
pub struct ReducedSample {
    pub time: f64,
    pub mode_re: f64,
    pub mode_im: f64,
    pub mass: f64,
    pub consistency_g: f64,
    pub consistency_h: f64,
}

/// Drive the reduced solver, sample the mode-q amplitude and measure its
/// phase slope.
pub fn run_reduced(
    cfg: &ReducedRunConfig,
) -> Result<(ReducedHmState, Vec<ReducedSample>, FreqMeasurement), SolverError> {
    let params = HmExactParams::new(cfg.alpha, cfg.beta, cfg.q)?;
    let mut state = ReducedHmState::seed_exact(&params, cfg.ny)?;
    if cfg.dt <= 0.0 || cfg.t_end <= 0.0 {
        return Err(SolverError::BadConfig("dt and t_end must be positive".into()));
    }
    let stride = cfg.output_stride.max(1);
    let steps = (cfg.t_end / cfg.dt).round() as usize;
    let mut samples = Vec::with_capacity(steps / stride + 2);
    let mut trace: Vec<(f64, Complex<f64>)> = Vec::with_capacity(steps / stride + 2);

    let record = |state: &ReducedHmState,
                  samples: &mut Vec<ReducedSample>,
                  trace: &mut Vec<(f64, Complex<f64>)>| {
        let amp = state.mode_amplitude(cfg.q);
        samples.push(ReducedSample {
            time: state.time,
            mode_re: amp.re,
            mode_im: amp.im,
            mass: state.mass(),
            consistency_g: state.consistency_g(),
            consistency_h: state.consistency_h(),
        });
        trace.push((state.time, amp));
    };

    record(&state, &mut samples, &mut trace);
    for step in 1..=steps {
        state.step(cfg.dt)?;
        if step % stride == 0 || step == steps {
            record(&state, &mut samples, &mut trace);
        }
    }
    let measured = measure_frequency(&trace)?;
    Ok((state, samples, measured))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn acceptance_params() -> HmExactParams {
        HmExactParams::new(0.05, 0.5, 2).unwrap()
    }

    #[test]
    fn zero_amplitude_is_flat() {
        let p = HmExactParams::new(0.0, 0.7, 3).unwrap();
        let s = ReducedHmState::seed_exact(&p, 64).unwrap();
        assert!(s.f.iter().all(|&v| v == 0.0));
        assert!(s.g.iter().all(|&v| v == 0.0));
        assert!(s.h.iter().all(|&v| v == 1.0));
    }

    #[test]
    fn zero_state_is_a_fixed_point() {
        let p = HmExactParams::new(0.0, 0.0, 1).unwrap();
        let mut s = ReducedHmState::seed_exact(&p, 64).unwrap();
        for _ in 0..10 {
            s.step(1e-2).unwrap();
        }
        assert!(s.f.iter().all(|&v| v.abs() < 1e-15));
        assert!(s.h.iter().all(|&v| (v - 1.0).abs() < 1e-15));
    }

    #[test]
    fn pure_zonal_offset_is_steady() {
        // beta = 0: F = alpha everywhere; every y-derivative vanishes.
        let p = HmExactParams::new(0.05, 0.0, 2).unwrap();
        let mut s = ReducedHmState::seed_exact(&p, 64).unwrap();
        let f0 = s.f.clone();
        for _ in 0..100 {
            s.step(1e-2).unwrap();
        }
        for (a, b) in s.f.iter().zip(f0.iter()) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn seeded_extrema_match_arithmetic() {
        // max(G+1) = 1 + alpha + alpha*beta*(1+q^2) = 1.175 at the
        // acceptance point.
        let s = ReducedHmState::seed_exact(&acceptance_params(), 128).unwrap();
        let max_g1 = s.g.iter().fold(f64::MIN, |m, g| m.max(g + 1.0));
        assert!((max_g1 - 1.175).abs() < 1e-12);
    }

    #[test]
    fn consistency_invariants_hold_after_steps() {
        let mut s = ReducedHmState::seed_exact(&acceptance_params(), 128).unwrap();
        let mass0 = s.mass();
        for _ in 0..200 {
            s.step(1e-3).unwrap();
        }
        assert!(s.consistency_g() < 1e-10);
        assert!(s.consistency_h() < 1e-10);
        assert!((s.mass() - mass0).abs() / mass0.abs() < 1e-10);
    }

    #[test]
    fn returns_to_initial_data_after_one_period() {
        let p = acceptance_params();
        let period = 2.0 * std::f64::consts::PI / p.omega_total();
        let steps = 2000usize;
        let dt = period / steps as f64;
        let mut s = ReducedHmState::seed_exact(&p, 128).unwrap();
        let init = s.clone();
        for _ in 0..steps {
            s.step(dt).unwrap();
        }
        assert!(s.distance(&init) < 1e-8, "distance {}", s.distance(&init));
    }

    #[test]
    fn fourth_order_convergence_on_exact_trajectory() {
        // Halving dt shrinks the trajectory error ~16x.
        let p = acceptance_params();
        let t_end = 1.0;
        let run = |dt: f64| {
            let mut s = ReducedHmState::seed_exact(&p, 64).unwrap();
            let steps = (t_end / dt).round() as usize;
            for _ in 0..steps {
                s.step(dt).unwrap();
            }
            let oracle = ReducedHmState::exact_state(&p, 64, s.time).unwrap();
            s.distance(&oracle)
        };
        let coarse = run(0.02);
        let fine = run(0.01);
        let ratio = coarse / fine;
        assert!(
            (10.0..25.0).contains(&ratio),
            "expected ~16x reduction, got {ratio} ({coarse} -> {fine})"
        );
    }

    #[test]
    fn cfl_violation_is_reported() {
        let p = acceptance_params();
        let mut s = ReducedHmState::seed_exact(&p, 128).unwrap();
        assert!(matches!(s.step(10.0), Err(SolverError::CflViolation { .. })));
    }
}
