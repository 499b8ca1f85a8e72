use serde::{Deserialize, Serialize};
use vlasov::SpeciesSpec;

pub use hmsolver::ReducedRunConfig;

/// Configuration of a 2D drift-wave run.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Hm2dConfig {
    pub nx: usize,
    pub ny: usize,
    pub dt: f64,
    pub t_end: f64,
    pub init: Hm2dInit,
    /// Physical amplitude of the seeded stream function.
    pub amplitude: f64,
    #[serde(default = "default_stride")]
    pub output_stride: usize,
    /// Write the final stream function as a CSV grid.
    #[serde(default)]
    pub snapshot: bool,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum Hm2dInit {
    /// Band-limited random field from the run seed.
    Random,
    /// Steady shear flow cos(x).
    Shear,
}

/// Configuration of a kinetic run.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VlasovConfig {
    pub l: f64,
    pub vmax: f64,
    pub nx: usize,
    pub nv: usize,
    pub dt: f64,
    pub t_end: f64,
    pub species: Vec<SpeciesSpec>,
    #[serde(default)]
    pub transform: Option<TransformConfig>,
    #[serde(default = "default_moments_n")]
    pub moments_n: usize,
    #[serde(default = "default_stride")]
    pub output_stride: usize,
    /// Write final distribution grids as CSV.
    #[serde(default)]
    pub snapshot: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TransformConfig {
    pub id: String,
    pub epsilon: f64,
    #[serde(default)]
    pub at_time: f64,
}

/// Configuration of a reduction comparison run.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReduceConfig {
    pub l: f64,
    pub vmax: f64,
    pub nx: usize,
    pub nv: usize,
    pub dt: f64,
    pub steps: usize,
    pub species: Vec<SpeciesSpec>,
}

fn default_stride() -> usize {
    10
}

fn default_moments_n() -> usize {
    4
}

pub fn load<T: for<'de> Deserialize<'de>>(path: &std::path::Path) -> Result<T, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("bad config {}: {e}", path.display()))
}
