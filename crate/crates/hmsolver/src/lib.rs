//! Drift-wave solvers.
//!
//! Two numerical realizations of the vorticity-transport model: the
//! conditionally reduced 1D system in conservative form (evolving
//! h = 1/(G+1)) with frequency measurement against the dispersion
//! relation, and a 2D pseudo-spectral solver (2/3-rule dealiased, RK4)
//! used for conservation and steady shear-flow tests.
//!
//! With the `parallel` feature (default) the 2D transforms and pointwise
//! products run data-parallel over rows; reductions always run in fixed
//! index order, so results are bit-identical across thread counts.

mod error;
mod exec;
mod fft;
mod freq;
mod params;
mod reduced;
mod spectral2d;

pub use error::SolverError;
pub use freq::{measure_frequency, FreqMeasurement};
pub use params::HmExactParams;
pub use reduced::{run_reduced, ReducedHmState, ReducedRunConfig, ReducedSample};
pub use spectral2d::{Spectral2DState, SpectralSample};
