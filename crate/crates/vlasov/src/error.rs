use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VlasovError {
    #[error("advection displacement {displacement:.3e} exceeds the configured bound {bound:.3e}")]
    CflViolation { displacement: f64, bound: f64 },

    #[error("non-finite value encountered at t = {time}")]
    NonFinite { time: f64 },

    #[error("neutrality violated: mean net charge {value:.3e} above tolerance")]
    NeutralityViolation { value: f64 },

    #[error("finite transform pushed support outside the velocity domain (boundary occupancy {mass_change:.3e} of peak)")]
    TransformOutOfDomain { mass_change: f64 },

    #[error("history too short for centered differencing ({samples} samples)")]
    InsufficientHistory { samples: usize },

    #[error("invalid configuration: {0}")]
    BadConfig(String),
}
