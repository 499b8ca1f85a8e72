use std::sync::Arc;

use num_complex::Complex;
use rustfft::{Fft, FftPlanner};

/// Cached forward/inverse plans for one transform length. The inverse is
/// normalized by 1/n.
#[derive(Clone)]
pub(crate) struct Fft1d {
    pub n: usize,
    fwd: Arc<dyn Fft<f64>>,
    inv: Arc<dyn Fft<f64>>,
}

impl Fft1d {
    pub fn new(n: usize) -> Self {
        let mut planner = FftPlanner::new();
        Fft1d {
            n,
            fwd: planner.plan_fft_forward(n),
            inv: planner.plan_fft_inverse(n),
        }
    }

    /// Scratch length covering both directions, for batched callers.
    pub fn scratch_len(&self) -> usize {
        self.fwd
            .get_inplace_scratch_len()
            .max(self.inv.get_inplace_scratch_len())
    }

    pub fn forward_with_scratch(&self, data: &mut [Complex<f64>], scratch: &mut [Complex<f64>]) {
        self.fwd.process_with_scratch(data, scratch);
    }

    pub fn inverse_raw_with_scratch(&self, data: &mut [Complex<f64>], scratch: &mut [Complex<f64>]) {
        self.inv.process_with_scratch(data, scratch);
    }

    /// Spectrum of a real signal, forward-normalized by 1/n so that
    /// coefficient k carries the complex amplitude of e^{ikx}.
    pub fn spectrum(&self, real: &[f64]) -> Vec<Complex<f64>> {
        let mut buf: Vec<Complex<f64>> = real.iter().map(|&v| Complex::new(v, 0.0)).collect();
        self.fwd.process(&mut buf);
        let scale = 1.0 / self.n as f64;
        for z in buf.iter_mut() {
            *z *= scale;
        }
        buf
    }

    /// Real signal from a forward-normalized spectrum. The raw inverse is
    /// unnormalized, which exactly undoes the 1/n applied by `spectrum`.
    pub fn signal(&self, spectrum: &[Complex<f64>]) -> Vec<f64> {
        let mut buf = spectrum.to_vec();
        self.inv.process(&mut buf);
        buf.iter().map(|z| z.re).collect()
    }
}

/// Signed integer wavenumber for bin `i` of an n-point transform on a
/// 2*pi-periodic domain.
pub(crate) fn wavenumber(i: usize, n: usize) -> f64 {
    if i <= n / 2 {
        i as f64
    } else {
        i as f64 - n as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let n = 32;
        let fft = Fft1d::new(n);
        let sig: Vec<f64> = (0..n)
            .map(|i| {
                let x = 2.0 * std::f64::consts::PI * i as f64 / n as f64;
                1.5 + (3.0 * x).sin() - 0.25 * (5.0 * x).cos()
            })
            .collect();
        let spec = fft.spectrum(&sig);
        let back = fft.signal(&spec);
        for (a, b) in sig.iter().zip(back.iter()) {
            assert!((a - b).abs() < 1e-12);
        }
        // Mode +3 of sin(3x) has amplitude 1/(2i).
        assert!((spec[3].im + 0.5).abs() < 1e-12);
        assert!((spec[3].re).abs() < 1e-12);
    }

    #[test]
    fn wavenumbers_are_signed() {
        assert_eq!(wavenumber(0, 8), 0.0);
        assert_eq!(wavenumber(3, 8), 3.0);
        assert_eq!(wavenumber(5, 8), -3.0);
        assert_eq!(wavenumber(7, 8), -1.0);
    }
}
