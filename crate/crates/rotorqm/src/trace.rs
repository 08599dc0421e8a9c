//! Sampled interference records shared by the shell and cylinder
//! observables.

use serde::Serialize;

use crate::core::Sector;

/// What the samples run over.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TraceAxis {
    /// Samples indexed by angle around the loop.
    Angle { phi: Vec<f64> },
    /// Samples over a radius x time grid, row-major: index = i_r * t.len() + i_t.
    RadiusTime { r: Vec<f64>, t: Vec<f64> },
}

impl TraceAxis {
    pub fn len(&self) -> usize {
        match self {
            TraceAxis::Angle { phi } => phi.len(),
            TraceAxis::RadiusTime { r, t } => r.len() * t.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Result of superposing two states and reading off the density.
///
/// `cross_term` holds the interference part alone; `total_density` adds
/// the two single-state densities back in. For cross-sector loop states
/// the cross term at one full turn carries the rotation-induced phase;
/// `extracted_phase` is that phase reduced mod 2 pi with the whole
/// turns in `winding`.
#[derive(Debug, Clone, Serialize)]
pub struct InterferenceTrace {
    pub axis: TraceAxis,
    pub total_density: Vec<f64>,
    pub cross_term: Vec<f64>,
    pub extracted_phase: f64,
    pub winding: u64,
    pub sectors_used: (Sector, Sector),
    /// Both states live in one sector: density carries no rotation phase.
    pub no_sagnac: bool,
    /// Cross term oscillates in time instead of being a constant shift.
    pub time_dependent: bool,
    /// Oscillation period of the cross term, when time dependent.
    pub beat_period: Option<f64>,
}
