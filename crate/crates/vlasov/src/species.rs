use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::VlasovError;

/// Initial phase-space profile of one species. Maxwellians are truncated:
/// the boundary value of the velocity envelope is subtracted so the
/// distribution vanishes exactly at the domain edge (interior support is
/// what keeps semi-Lagrangian mass conservation at roundoff), and the
/// envelope is renormalized by quadrature to the requested density.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Profile {
    Maxwellian {
        density: f64,
        vth: f64,
        #[serde(default)]
        drift: f64,
    },
    /// Maxwellian with a cosine density perturbation
    /// f = f0(v) (1 + eps cos(2 pi mode x / L)).
    Perturbed {
        density: f64,
        vth: f64,
        #[serde(default)]
        drift: f64,
        eps: f64,
        mode: u32,
    },
}

impl Profile {
    pub(crate) fn envelope(&self, vmax: f64, v_grid: &[f64], dv: f64) -> Vec<f64> {
        let (density, vth, drift) = match self {
            Profile::Maxwellian { density, vth, drift }
            | Profile::Perturbed { density, vth, drift, .. } => (*density, *vth, *drift),
        };
        let gauss = |v: f64| (-((v - drift) / vth).powi(2) / 2.0).exp();
        // Support ends a few cells inside the domain: the boundary cells
        // hold exact zeros, which is what keeps the velocity advection
        // mass-conserving at roundoff and leaves room for the finite
        // symmetry flows to shift the support.
        let upper = vmax - 4.0 * dv;
        let lower = -vmax + 4.0 * dv;
        let edge = gauss(upper).max(gauss(lower));
        let mut env: Vec<f64> = v_grid
            .iter()
            .map(|&v| {
                if v < lower || v > upper {
                    0.0
                } else {
                    (gauss(v) - edge).max(0.0)
                }
            })
            .collect();
        // Trapezoid normalization to the requested density.
        let mut total = 0.0;
        for (j, val) in env.iter().enumerate() {
            let w = if j == 0 || j == env.len() - 1 { 0.5 } else { 1.0 };
            total += w * val * dv;
        }
        if total > 0.0 {
            let scale = density / total;
            for v in env.iter_mut() {
                *v *= scale;
            }
        }
        env
    }

    pub(crate) fn spatial_factor(&self, x: f64, length: f64) -> f64 {
        match self {
            Profile::Maxwellian { .. } => 1.0,
            Profile::Perturbed { eps, mode, .. } => {
                1.0 + eps * (2.0 * std::f64::consts::PI * *mode as f64 * x / length).cos()
            }
        }
    }
}

/// One plasma component: exact rational charge and mass (so equal
/// charge-to-mass ratios are decidable exactly) plus its initial profile.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpeciesSpec {
    pub name: String,
    pub charge: Rational64,
    pub mass: Rational64,
    pub profile: Profile,
}

impl SpeciesSpec {
    pub fn new(
        name: &str,
        charge: Rational64,
        mass: Rational64,
        profile: Profile,
    ) -> Result<Self, VlasovError> {
        if mass <= Rational64::from_integer(0) {
            return Err(VlasovError::BadConfig(format!("species {name}: mass must be positive")));
        }
        Ok(SpeciesSpec { name: name.to_string(), charge, mass, profile })
    }

    /// Electron in the model normalization: charge -1, mass 1, unit
    /// thermal speed, unit density.
    pub fn electron(profile: Profile) -> Self {
        SpeciesSpec {
            name: "electron".to_string(),
            charge: Rational64::from_integer(-1),
            mass: Rational64::from_integer(1),
            profile,
        }
    }

    pub fn qm_ratio(&self) -> Rational64 {
        self.charge / self.mass
    }

    pub fn charge_f(&self) -> f64 {
        rational_to_f64(self.charge)
    }

    pub fn mass_f(&self) -> f64 {
        rational_to_f64(self.mass)
    }

    pub fn qm_f(&self) -> f64 {
        rational_to_f64(self.qm_ratio())
    }
}

pub(crate) fn rational_to_f64(r: Rational64) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qm_ratio_is_exact() {
        // Alpha-particle-like (2,4) and deuteron-like (1,2) ratios agree
        // exactly in rational arithmetic.
        let a = SpeciesSpec::new(
            "alpha",
            Rational64::from_integer(2),
            Rational64::from_integer(4),
            Profile::Maxwellian { density: 1.0, vth: 1.0, drift: 0.0 },
        )
        .unwrap();
        let d = SpeciesSpec::new(
            "deuteron",
            Rational64::from_integer(1),
            Rational64::from_integer(2),
            Profile::Maxwellian { density: 1.0, vth: 1.0, drift: 0.0 },
        )
        .unwrap();
        assert_eq!(a.qm_ratio(), d.qm_ratio());
        assert_eq!(a.qm_ratio() * a.mass, a.charge);
    }

    #[test]
    fn envelope_vanishes_at_the_edge_and_normalizes() {
        let profile = Profile::Maxwellian { density: 1.0, vth: 1.0, drift: 0.0 };
        let nv = 129;
        let vmax = 6.0;
        let dv = 2.0 * vmax / (nv - 1) as f64;
        let v_grid: Vec<f64> = (0..nv).map(|j| -vmax + j as f64 * dv).collect();
        let env = profile.envelope(vmax, &v_grid, dv);
        assert_eq!(env[0], 0.0);
        assert_eq!(env[nv - 1], 0.0);
        let mut total = 0.0;
        for (j, val) in env.iter().enumerate() {
            let w = if j == 0 || j == nv - 1 { 0.5 } else { 1.0 };
            total += w * val * dv;
        }
        assert!((total - 1.0).abs() < 1e-14);
    }
}
