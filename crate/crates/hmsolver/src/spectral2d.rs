use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::SolverError;
use crate::exec::for_each_row_batch;
use crate::fft::{wavenumber, Fft1d};

/// Pseudo-spectral state for the vorticity transport equation on the
/// 2*pi-periodic square: spectral coefficients of the generalized
/// vorticity, row-major over (kx, ky), Hermitian-symmetric, kept inside
/// the 2/3 dealiasing band.
#[derive(Clone)]
pub struct Spectral2DState {
    pub nx: usize,
    pub ny: usize,
    pub psi_hat: Vec<Complex<f64>>,
    pub time: f64,
    fft_x: Fft1d,
    fft_y: Fft1d,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct SpectralSample {
    pub time: f64,
    pub energy: f64,
    pub enstrophy: f64,
}

impl Spectral2DState {
    pub fn zeros(nx: usize, ny: usize) -> Result<Self, SolverError> {
        if nx < 8 || ny < 8 || !nx.is_multiple_of(2) || !ny.is_multiple_of(2) {
            return Err(SolverError::BadConfig(
                "grid must be even and at least 8x8 for the 2/3 rule".into(),
            ));
        }
        Ok(Spectral2DState {
            nx,
            ny,
            psi_hat: vec![Complex::new(0.0, 0.0); nx * ny],
            time: 0.0,
            fft_x: Fft1d::new(nx),
            fft_y: Fft1d::new(ny),
        })
    }

    /// Shear flow P = cos(x): steady for any x-only profile.
    pub fn seed_shear_cos(nx: usize, ny: usize, amplitude: f64) -> Result<Self, SolverError> {
        let mut state = Self::zeros(nx, ny)?;
        let phi = |x: f64, _y: f64| amplitude * x.cos();
        state.load_phi(&phi);
        Ok(state)
    }

    /// Band-limited random field with reproducible phases, scaled so the
    /// physical stream function has the requested max amplitude.
    pub fn seed_random(nx: usize, ny: usize, seed: u64, amplitude: f64) -> Result<Self, SolverError> {
        let mut state = Self::zeros(nx, ny)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let kx_cut = nx as f64 / 3.0;
        let ky_cut = ny as f64 / 3.0;
        for i in 0..nx {
            for j in 0..ny {
                let kx = wavenumber(i, nx);
                let ky = wavenumber(j, ny);
                if (kx == 0.0 && ky == 0.0) || kx.abs() > kx_cut || ky.abs() > ky_cut {
                    continue;
                }
                let k2 = kx * kx + ky * ky;
                let mag: f64 = rng.random::<f64>() * (-k2 / 18.0).exp();
                let phase: f64 = rng.random::<f64>() * 2.0 * std::f64::consts::PI;
                // Store Phi-spectrum here, convert below.
                state.psi_hat[i * ny + j] = Complex::from_polar(mag, phase) * (1.0 + k2);
            }
        }
        state.hermitize();
        // Normalize the physical stream function amplitude.
        let phi = state.phi_physical();
        let max = phi.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if max > 0.0 {
            let scale = amplitude / max;
            for z in state.psi_hat.iter_mut() {
                *z *= scale;
            }
        }
        Ok(state)
    }

    /// Load a physical stream function and store its vorticity spectrum,
    /// dealiased.
    pub fn load_phi(&mut self, phi: &dyn Fn(f64, f64) -> f64) {
        let (nx, ny) = (self.nx, self.ny);
        let mut field = vec![Complex::new(0.0, 0.0); nx * ny];
        for i in 0..nx {
            let x = 2.0 * std::f64::consts::PI * i as f64 / nx as f64;
            for j in 0..ny {
                let y = 2.0 * std::f64::consts::PI * j as f64 / ny as f64;
                field[i * ny + j] = Complex::new(phi(x, y), 0.0);
            }
        }
        self.fft2_forward(&mut field);
        for i in 0..nx {
            for j in 0..ny {
                let kx = wavenumber(i, nx);
                let ky = wavenumber(j, ny);
                field[i * ny + j] *= 1.0 + kx * kx + ky * ky;
            }
        }
        self.psi_hat = field;
        self.dealias(None);
        self.hermitize();
    }

    fn fft2_forward(&self, data: &mut [Complex<f64>]) {
        let (nx, ny) = (self.nx, self.ny);
        let fft_y = self.fft_y.clone();
        for_each_row_batch(data, ny, |_, batch| {
            let mut scratch = vec![Complex::new(0.0, 0.0); fft_y.scratch_len()];
            let scale = 1.0 / ny as f64;
            for row in batch.chunks_mut(ny) {
                fft_y.forward_with_scratch(row, &mut scratch);
                for z in row.iter_mut() {
                    *z *= scale;
                }
            }
        });
        let mut t = transpose(data, nx, ny);
        let fft_x = self.fft_x.clone();
        for_each_row_batch(&mut t, nx, |_, batch| {
            let mut scratch = vec![Complex::new(0.0, 0.0); fft_x.scratch_len()];
            let scale = 1.0 / nx as f64;
            for row in batch.chunks_mut(nx) {
                fft_x.forward_with_scratch(row, &mut scratch);
                for z in row.iter_mut() {
                    *z *= scale;
                }
            }
        });
        let back = transpose(&t, ny, nx);
        data.copy_from_slice(&back);
    }

    fn fft2_inverse(&self, data: &mut [Complex<f64>]) {
        let (nx, ny) = (self.nx, self.ny);
        let mut t = transpose(data, nx, ny);
        let fft_x = self.fft_x.clone();
        for_each_row_batch(&mut t, nx, |_, batch| {
            let mut scratch = vec![Complex::new(0.0, 0.0); fft_x.scratch_len()];
            for row in batch.chunks_mut(nx) {
                fft_x.inverse_raw_with_scratch(row, &mut scratch);
            }
        });
        let back = transpose(&t, ny, nx);
        data.copy_from_slice(&back);
        let fft_y = self.fft_y.clone();
        for_each_row_batch(data, ny, |_, batch| {
            let mut scratch = vec![Complex::new(0.0, 0.0); fft_y.scratch_len()];
            for row in batch.chunks_mut(ny) {
                fft_y.inverse_raw_with_scratch(row, &mut scratch);
            }
        });
    }

    fn dealias(&mut self, other: Option<&mut [Complex<f64>]>) {
        let (nx, ny) = (self.nx, self.ny);
        let target = match other {
            Some(t) => t,
            None => &mut self.psi_hat,
        };
        dealias_array(target, nx, ny);
    }

    /// Enforce Hermitian symmetry so the physical field stays real.
    pub fn hermitize(&mut self) {
        let (nx, ny) = (self.nx, self.ny);
        for i in 0..nx {
            for j in 0..ny {
                let (ic, jc) = ((nx - i) % nx, (ny - j) % ny);
                if (i, j) < (ic, jc) {
                    let a = self.psi_hat[i * ny + j];
                    let b = self.psi_hat[ic * ny + jc].conj();
                    let avg = 0.5 * (a + b);
                    self.psi_hat[i * ny + j] = avg;
                    self.psi_hat[ic * ny + jc] = avg.conj();
                } else if (i, j) == (ic, jc) {
                    self.psi_hat[i * ny + j] = Complex::new(self.psi_hat[i * ny + j].re, 0.0);
                }
            }
        }
    }

    pub fn phi_hat(&self) -> Vec<Complex<f64>> {
        let (nx, ny) = (self.nx, self.ny);
        let mut out = self.psi_hat.clone();
        for i in 0..nx {
            for j in 0..ny {
                let kx = wavenumber(i, nx);
                let ky = wavenumber(j, ny);
                out[i * ny + j] /= 1.0 + kx * kx + ky * ky;
            }
        }
        out
    }

    pub fn phi_physical(&self) -> Vec<f64> {
        let mut spec = self.phi_hat();
        self.fft2_inverse(&mut spec);
        spec.iter().map(|z| z.re).collect()
    }

    pub fn psi_physical(&self) -> Vec<f64> {
        let mut spec = self.psi_hat.clone();
        self.fft2_inverse(&mut spec);
        spec.iter().map(|z| z.re).collect()
    }

    /// Tendency -J(P, S) + dP/dy evaluated pseudo-spectrally with 2/3
    /// dealiasing: derivatives in spectral space, products on the grid.
    fn rhs(&self, psi_hat: &[Complex<f64>]) -> Vec<Complex<f64>> {
        let (nx, ny) = (self.nx, self.ny);
        let mut phi_x = vec![Complex::new(0.0, 0.0); nx * ny];
        let mut phi_y = phi_x.clone();
        let mut psi_x = phi_x.clone();
        let mut psi_y = phi_x.clone();
        for i in 0..nx {
            let kx = wavenumber(i, nx);
            for j in 0..ny {
                let ky = wavenumber(j, ny);
                let k2 = kx * kx + ky * ky;
                let s = psi_hat[i * ny + j];
                let p = s / (1.0 + k2);
                let ix = Complex::new(0.0, kx);
                let iy = Complex::new(0.0, ky);
                phi_x[i * ny + j] = ix * p;
                phi_y[i * ny + j] = iy * p;
                psi_x[i * ny + j] = ix * s;
                psi_y[i * ny + j] = iy * s;
            }
        }
        for arr in [&mut phi_x, &mut phi_y, &mut psi_x, &mut psi_y] {
            dealias_array(arr, nx, ny);
            self.fft2_inverse(arr);
        }
        let mut jac = vec![Complex::new(0.0, 0.0); nx * ny];
        for_each_row_batch(&mut jac, ny, |row0, batch| {
            let base = row0 * ny;
            for (off, v) in batch.iter_mut().enumerate() {
                let idx = base + off;
                let j_phys =
                    phi_x[idx].re * psi_y[idx].re - psi_x[idx].re * phi_y[idx].re;
                *v = Complex::new(j_phys, 0.0);
            }
        });
        self.fft2_forward(&mut jac);
        dealias_array(&mut jac, nx, ny);
        let mut out = vec![Complex::new(0.0, 0.0); nx * ny];
        for i in 0..nx {
            let kx = wavenumber(i, nx);
            for j in 0..ny {
                let ky = wavenumber(j, ny);
                let k2 = kx * kx + ky * ky;
                let p = psi_hat[i * ny + j] / (1.0 + k2);
                out[i * ny + j] = -jac[i * ny + j] + Complex::new(0.0, ky) * p;
            }
        }
        out
    }

    /// One RK4 step.
    pub fn step(&mut self, dt: f64) -> Result<(), SolverError> {
        if !(dt > 0.0 && dt <= 0.1) {
            return Err(SolverError::BadConfig(format!(
                "dt = {dt} outside the supported (0, 0.1] range"
            )));
        }
        let k1 = self.rhs(&self.psi_hat);
        let s2 = axpy(&self.psi_hat, 0.5 * dt, &k1);
        let k2 = self.rhs(&s2);
        let s3 = axpy(&self.psi_hat, 0.5 * dt, &k2);
        let k3 = self.rhs(&s3);
        let s4 = axpy(&self.psi_hat, dt, &k3);
        let k4 = self.rhs(&s4);
        for idx in 0..self.psi_hat.len() {
            self.psi_hat[idx] +=
                dt / 6.0 * (k1[idx] + 2.0 * k2[idx] + 2.0 * k3[idx] + k4[idx]);
            if !self.psi_hat[idx].re.is_finite() || !self.psi_hat[idx].im.is_finite() {
                return Err(SolverError::NonFinite { time: self.time });
            }
        }
        self.hermitize();
        self.time += dt;
        Ok(())
    }

    /// Quadratic invariants from the spectral quadrature:
    /// energy (1/2) Int (Phi^2 + |grad Phi|^2) and generalized enstrophy
    /// (1/2) Int (|grad Phi|^2 + (lap Phi)^2), exact for band-limited
    /// fields. Summation runs in fixed index order.
    pub fn invariants(&self) -> (f64, f64) {
        let (nx, ny) = (self.nx, self.ny);
        let area = (2.0 * std::f64::consts::PI).powi(2);
        let mut energy = 0.0;
        let mut enstrophy = 0.0;
        for i in 0..nx {
            let kx = wavenumber(i, nx);
            for j in 0..ny {
                let ky = wavenumber(j, ny);
                let k2 = kx * kx + ky * ky;
                let phi2 = (self.psi_hat[i * ny + j] / (1.0 + k2)).norm_sqr();
                energy += 0.5 * (1.0 + k2) * phi2;
                enstrophy += 0.5 * (k2 + k2 * k2) * phi2;
            }
        }
        (energy * area, enstrophy * area)
    }

    pub fn sample(&self) -> SpectralSample {
        let (energy, enstrophy) = self.invariants();
        SpectralSample { time: self.time, energy, enstrophy }
    }

    /// Max-norm distance of the vorticity spectra.
    pub fn distance(&self, other: &Spectral2DState) -> f64 {
        self.psi_hat
            .iter()
            .zip(other.psi_hat.iter())
            .fold(0.0f64, |m, (a, b)| m.max((a - b).norm()))
    }
}

fn axpy(base: &[Complex<f64>], a: f64, delta: &[Complex<f64>]) -> Vec<Complex<f64>> {
    base.iter().zip(delta.iter()).map(|(b, d)| b + a * d).collect()
}

fn transpose(data: &[Complex<f64>], rows: usize, cols: usize) -> Vec<Complex<f64>> {
    let mut out = vec![Complex::new(0.0, 0.0); data.len()];
    for r in 0..rows {
        for c in 0..cols {
            out[c * rows + r] = data[r * cols + c];
        }
    }
    out
}

fn dealias_array(data: &mut [Complex<f64>], nx: usize, ny: usize) {
    let kx_cut = nx as f64 / 3.0;
    let ky_cut = ny as f64 / 3.0;
    for i in 0..nx {
        let kx = wavenumber(i, nx);
        for j in 0..ny {
            let ky = wavenumber(j, ny);
            if kx.abs() > kx_cut || ky.abs() > ky_cut {
                data[i * ny + j] = Complex::new(0.0, 0.0);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_field_stays_zero() {
        let mut s = Spectral2DState::zeros(16, 16).unwrap();
        for _ in 0..5 {
            s.step(1e-2).unwrap();
        }
        assert!(s.psi_hat.iter().all(|z| z.norm() == 0.0));
        let (e, w) = s.invariants();
        assert_eq!((e, w), (0.0, 0.0));
    }

    #[test]
    fn single_unit_mode_has_equal_invariants() {
        // |k|^2 = 1: both quadratures reduce to (1+1)|phi|^2 terms.
        let mut s = Spectral2DState::zeros(16, 16).unwrap();
        s.load_phi(&|x: f64, _y: f64| x.cos());
        let (e, w) = s.invariants();
        assert!((e - w).abs() < 1e-12 * e.abs());
        assert!(e > 0.0);
    }

    #[test]
    fn shear_flow_is_steady() {
        let mut s = Spectral2DState::seed_shear_cos(32, 32, 1.0).unwrap();
        let init = s.clone();
        for _ in 0..100 {
            s.step(1e-2).unwrap();
        }
        assert!(s.distance(&init) < 1e-12);
    }

    #[test]
    fn physical_field_is_real_and_round_trips() {
        let s = Spectral2DState::seed_random(32, 32, 7, 0.1).unwrap();
        let phi = s.phi_physical();
        let max = phi.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        assert!((max - 0.1).abs() < 1e-12);
        // Reload the physical field; spectra must agree.
        let mut s2 = Spectral2DState::zeros(32, 32).unwrap();
        let ny = s.ny;
        let phi_clone = phi.clone();
        s2.load_phi(&move |x: f64, y: f64| {
            let i = (x / (2.0 * std::f64::consts::PI) * 32.0).round() as usize % 32;
            let j = (y / (2.0 * std::f64::consts::PI) * 32.0).round() as usize % 32;
            phi_clone[i * ny + j]
        });
        assert!(s.distance(&s2) < 1e-10);
    }

    #[test]
    fn short_conservation_run() {
        let mut s = Spectral2DState::seed_random(32, 32, 11, 0.1).unwrap();
        let (e0, w0) = s.invariants();
        for _ in 0..50 {
            s.step(1e-3).unwrap();
        }
        let (e1, w1) = s.invariants();
        assert!(((e1 - e0) / e0).abs() < 1e-9, "energy drift {}", (e1 - e0) / e0);
        assert!(((w1 - w0) / w0).abs() < 1e-9, "enstrophy drift {}", (w1 - w0) / w0);
    }
}
