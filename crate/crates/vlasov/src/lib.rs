//! 1D1V multi-species electrostatic kinetic solver.
//!
//! Strang-split semi-Lagrangian advection with cubic-spline interpolation,
//! a spectral field solve for the zero-mean part of E (with a uniform
//! neutralizing background), and the exact mean-field law dE/dt = -<j>
//! for the spatially uniform mode. Velocity moments, moment-chain
//! residual diagnostics and the finite flows of the symmetry family
//! (shift, scaling, the two oscillating flows) act directly on states.
//!
//! With the `parallel` feature (default) advection sweeps run in parallel
//! over rows; every floating-point reduction runs in fixed index order,
//! so results are bit-identical across thread counts.

mod diag;
mod error;
mod exec;
mod field;
mod moments;
mod species;
mod spline;
mod state;
mod step;
mod transform;

pub use diag::{field_energy, kinetic_energy, species_mass, total_energy, undershoot};
pub use error::VlasovError;
pub use moments::{moment_residual, moments, HistorySample, MomentResidual};
pub use species::{Profile, SpeciesSpec};
pub use state::{Grid, PhaseSpaceState, SpeciesState};
pub use step::{run, DiagSample, RunHistory};
pub use transform::{apply_finite_transform, FlowId};
