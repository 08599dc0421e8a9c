//! The resolved run configuration: flags, preset defaults and the
//! environment folded into one serializable record. Every output file
//! embeds it verbatim in the header, so a result can always be traced
//! back to, and rerun from, the exact inputs that produced it.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CommandKind {
    ClassicalSagnac,
    ShellSpectrum,
    FluxSpectrum,
    CylinderSpectrum,
    Interference,
    Beat,
    Census,
    BesselTable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ParticleKind {
    Electron,
    Neutron,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum WallChoice {
    Dirichlet,
    Neumann,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum PresetKind {
    /// Flux-threaded shell sweep at the reference operating point
    /// (electron, R = 10 um, omega = -1e7 rad/s, two flux quanta,
    /// windings -10..=30).
    Fig1,
    /// Rotating-cylinder levels at the same operating point: n = 1,
    /// first five radial zeros, both wall types, zero-based labels.
    Fig2,
    /// The two n = 1, s = 1 ground levels (one per wall type) at the
    /// reference operating point.
    GroundPair,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

/// Everything `commands::run` consumes. `out` stays out of the
/// serialized form on purpose: the embedded header then reruns to the
/// same bytes no matter where the copy was written.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub command: CommandKind,
    /// Frame angular velocity, rad/s, already resolved from either
    /// --omega or --linear-velocity.
    pub omega: f64,
    /// Reference radius, m.
    pub radius: f64,
    /// Particle rest mass, kg.
    pub mass: f64,
    /// Which built-in particle the mass came from, if any.
    pub particle: Option<ParticleKind>,
    /// Axis flux in flux quanta.
    pub flux_ratio: f64,
    /// Axial wavenumber, 1/m.
    pub k: f64,
    /// Angular order (or order bound, for table/census sweeps).
    pub n: i32,
    /// Radial zero index, 1-based (or index bound for sweeps).
    pub s: u32,
    /// Winding sweep range, inclusive.
    pub p_min: i32,
    pub p_max: i32,
    pub bc: Option<WallChoice>,
    pub preset: Option<PresetKind>,
    pub format: OutputFormat,
    #[serde(skip)]
    pub out: Option<String>,
    pub with_geometric_potential: bool,
    pub normalize_modes: bool,
    /// Label radial zeros from 0 instead of 1 in output rows.
    pub zero_based_radial: bool,
    /// Root-refinement tolerance override from ROTORQM_PRECISION.
    pub precision: Option<f64>,
}
