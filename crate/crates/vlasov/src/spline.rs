//! Periodic cubic-spline interpolation at a constant shift on a uniform
//! grid (cyclic tridiagonal via Sherman-Morrison). Used for both sweep
//! directions: distributions keep a few exactly-zero cells at the
//! velocity boundary, so the periodic wrap only ever connects dead
//! zones, and the circulant structure preserves the grid sum to
//! roundoff, which is where the mass-conservation budget comes from.
//!
//! The second-derivative systems have constant coefficients (1, 4, 1), so
//! the Thomas sweeps are factored once per length and reused for every
//! row.

/// Thomas factorization for the constant-coefficient tridiagonal
/// (1, 4, 1) system of a given size, with optional first/last diagonal
/// modifications (used by the cyclic solver).
#[derive(Clone, Debug)]
struct Thomas {
    cprime: Vec<f64>,
}

impl Thomas {
    fn new(n: usize, first: f64, last: f64) -> Self {
        let mut cprime = vec![0.0; n];
        let mut prev = first;
        cprime[0] = 1.0 / prev;
        for i in 1..n {
            let diag = if i == n - 1 { last } else { 4.0 };
            prev = diag - cprime[i - 1];
            cprime[i] = 1.0 / prev;
        }
        Thomas { cprime }
    }

    /// Solve in place: rhs becomes the solution.
    fn solve(&self, rhs: &mut [f64]) {
        let n = rhs.len();
        rhs[0] *= self.cprime[0];
        for i in 1..n {
            rhs[i] = (rhs[i] - rhs[i - 1]) * self.cprime[i];
        }
        for i in (0..n - 1).rev() {
            rhs[i] -= self.cprime[i] * rhs[i + 1];
        }
    }
}

/// Periodic cubic spline on an n-point uniform grid.
#[derive(Clone, Debug)]
pub struct PeriodicSpline {
    n: usize,
    thomas: Thomas,
    z: Vec<f64>,
    gamma: f64,
}

impl PeriodicSpline {
    pub fn new(n: usize) -> Self {
        assert!(n >= 8, "periodic spline needs at least 8 points");
        // Sherman-Morrison: A = B + u v^T with corners alpha = beta = 1.
        let gamma = -4.0;
        let thomas = Thomas::new(n, 4.0 - gamma, 4.0 - 1.0 / gamma);
        let mut z = vec![0.0; n];
        z[0] = gamma;
        z[n - 1] = 1.0;
        thomas.solve(&mut z);
        PeriodicSpline { n, thomas, z, gamma }
    }

    /// Spline second derivatives times d^2/6, for unit grid spacing the
    /// evaluation below only needs this combination.
    fn curvature(&self, y: &[f64], out: &mut Vec<f64>) {
        let n = self.n;
        out.clear();
        out.extend((0..n).map(|i| {
            let prev = y[(i + n - 1) % n];
            let next = y[(i + 1) % n];
            prev - 2.0 * y[i] + next
        }));
        self.thomas.solve(out);
        let v0 = out[0];
        let vn = out[n - 1];
        let factor = (v0 + vn / self.gamma) / (1.0 + self.z[0] + self.z[n - 1] / self.gamma);
        for (o, zi) in out.iter_mut().zip(self.z.iter()) {
            *o -= factor * zi;
        }
    }

    /// out[j] = S(x_j - delta) with delta in grid units; periodic wrap.
    pub fn shift(&self, y: &[f64], delta: f64, out: &mut [f64]) {
        let n = self.n;
        debug_assert_eq!(y.len(), n);
        debug_assert_eq!(out.len(), n);
        let shift_cells = delta.floor();
        let frac = delta - shift_cells;
        let m = shift_cells as i64;
        if frac == 0.0 {
            for (j, o) in out.iter_mut().enumerate() {
                let src = (j as i64 - m).rem_euclid(n as i64) as usize;
                *o = y[src];
            }
            return;
        }
        let mut curv = Vec::new();
        self.curvature(y, &mut curv);
        let u = 1.0 - frac;
        let wl = 1.0 - u;
        let wr = u;
        let cl = (1.0 - u).powi(3) - (1.0 - u);
        let cr = u.powi(3) - u;
        for (j, o) in out.iter_mut().enumerate() {
            let p = (j as i64 - m - 1).rem_euclid(n as i64) as usize;
            let p1 = (p + 1) % n;
            *o = wl * y[p] + wr * y[p1] + cl * curv[p] + cr * curv[p1];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn periodic_shift_of_smooth_wave_is_accurate() {
        let n = 128;
        let spline = PeriodicSpline::new(n);
        let y: Vec<f64> = (0..n)
            .map(|i| (2.0 * std::f64::consts::PI * i as f64 / n as f64).sin())
            .collect();
        let delta = 0.37; // grid units
        let mut out = vec![0.0; n];
        spline.shift(&y, delta, &mut out);
        for (j, o) in out.iter().enumerate() {
            let x = 2.0 * std::f64::consts::PI * (j as f64 - delta) / n as f64;
            assert!((o - x.sin()).abs() < 1e-7, "node {j}: {o} vs {}", x.sin());
        }
    }

    #[test]
    fn periodic_shift_preserves_the_sum() {
        let n = 64;
        let spline = PeriodicSpline::new(n);
        let y: Vec<f64> = (0..n).map(|i| ((i * 37 + 11) % 17) as f64 * 0.3 - 1.0).collect();
        let total: f64 = y.iter().sum();
        let mut out = vec![0.0; n];
        spline.shift(&y, 2.71, &mut out);
        let total_shifted: f64 = out.iter().sum();
        assert!((total - total_shifted).abs() < 1e-11 * total.abs().max(1.0));
    }

    #[test]
    fn periodic_integer_shift_is_exact_roll() {
        let n = 32;
        let spline = PeriodicSpline::new(n);
        let y: Vec<f64> = (0..n).map(|i| i as f64 * 0.1).collect();
        let mut out = vec![0.0; n];
        spline.shift(&y, 3.0, &mut out);
        for j in 0..n {
            assert_eq!(out[j], y[(j + n - 3) % n]);
        }
    }

    #[test]
    fn zero_shift_is_identity() {
        let n = 16;
        let spline = PeriodicSpline::new(n);
        let y: Vec<f64> = (0..n).map(|i| (i as f64).sqrt()).collect();
        let mut out = vec![0.0; n];
        spline.shift(&y, 0.0, &mut out);
        assert_eq!(out, y);
    }
}
