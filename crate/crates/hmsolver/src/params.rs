use serde::{Deserialize, Serialize};

use crate::error::SolverError;

/// Parameters of the travelling drift-wave solution
/// F = alpha (1 + beta cos((omega + delta_omega) t + q y)).
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct HmExactParams {
    pub alpha: f64,
    pub beta: f64,
    /// Integer wavenumber on the 2*pi-periodic domain.
    pub q: i32,
}

impl HmExactParams {
    pub fn new(alpha: f64, beta: f64, q: i32) -> Result<Self, SolverError> {
        let p = HmExactParams { alpha, beta, q };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), SolverError> {
        if self.q == 0 {
            return Err(SolverError::BadConfig("wavenumber q must be nonzero".into()));
        }
        // Keeps G+1 bounded away from zero for the seeded solution.
        let margin = self.alpha.abs() * (1.0 + self.beta.abs() * (1.0 + self.qf() * self.qf()));
        if margin >= 1.0 {
            return Err(SolverError::BadConfig(format!(
                "amplitude too large: |alpha|(1+|beta|(1+q^2)) = {margin} >= 1"
            )));
        }
        Ok(())
    }

    fn qf(&self) -> f64 {
        self.q as f64
    }

    /// Linear drift-wave frequency q/(1+q^2).
    pub fn omega(&self) -> f64 {
        self.qf() / (1.0 + self.qf() * self.qf())
    }

    /// Finite-amplitude shift -alpha q^3/(1+q^2).
    pub fn delta_omega(&self) -> f64 {
        -self.alpha * self.qf().powi(3) / (1.0 + self.qf() * self.qf())
    }

    /// Total frequency of the seeded solution.
    pub fn omega_total(&self) -> f64 {
        self.omega() + self.delta_omega()
    }
}
