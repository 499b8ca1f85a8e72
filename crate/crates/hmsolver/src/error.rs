use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolverError {
    #[error("time step {dt} exceeds the advective stability bound {bound}")]
    CflViolation { dt: f64, bound: f64 },

    #[error("vorticity singularity: min(G+1) = {min_g1} fell below the 0.05 guard")]
    SingularVorticity { min_g1: f64 },

    #[error("non-finite value encountered at t = {time}")]
    NonFinite { time: f64 },

    #[error("mode amplitude {amplitude:.3e} is below the noise floor {floor:.3e}")]
    AmplitudeBelowNoiseFloor { amplitude: f64, floor: f64 },

    #[error("trace spans {periods:.2} oscillation periods, need at least 3")]
    TooFewPeriods { periods: f64 },

    #[error("invalid configuration: {0}")]
    BadConfig(String),
}
