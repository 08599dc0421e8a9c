//! Error taxonomy shared across the crate.

use thiserror::Error;

/// Everything the library can refuse to do.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The rim (or the requested radius) moves at or beyond the speed of light.
    #[error("rim speed {rim_speed:.6e} m/s is not below c, frame is unphysical")]
    SuperluminalRim { rim_speed: f64 },

    #[error("radius must be positive and finite, got {0:e} m")]
    NonpositiveRadius(f64),

    #[error("mass must be positive and finite, got {0:e} kg")]
    NonpositiveMass(f64),

    #[error("signal frequency must be positive and finite, got {0:e} Hz")]
    NonpositiveFrequency(f64),

    #[error("{name} must be finite, got {value}")]
    NonfiniteInput { name: &'static str, value: f64 },

    #[error("Bessel order {0} outside the supported range |n| <= 50")]
    OrderOutOfRange(i32),

    #[error("Bessel argument {0:e} must be nonnegative")]
    NegativeArgument(f64),

    #[error("zero index {0} outside the supported range 1..=200")]
    IndexOutOfRange(i64),

    #[error("closed path required: {0}")]
    OpenPath(String),

    /// Path radius touches or crosses zero somewhere on the loop.
    #[error("path radius must stay strictly positive")]
    DegeneratePath,

    #[error("r = {0:e} m lies outside [0, R] for this mode")]
    ROutOfRange(f64),

    /// Complex-conjugate winding rates admit no closed-form spectrum here;
    /// that branch is classification-only.
    #[error("complex-pair solution class is classification-only, no solve available")]
    UnsupportedClass,

    #[error("radial index must be >= 1 when a boundary condition is set")]
    MissingRadialIndex,

    #[error("cylinder modes need a dirichlet or neumann wall")]
    WallRequired,
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Stable machine-readable code, used by the CLI error records.
    pub fn code(&self) -> &'static str {
        match self {
            Error::SuperluminalRim { .. } => "superluminal_rim",
            Error::NonpositiveRadius(_) => "nonpositive_radius",
            Error::NonpositiveMass(_) => "nonpositive_mass",
            Error::NonpositiveFrequency(_) => "nonpositive_frequency",
            Error::NonfiniteInput { .. } => "nonfinite_input",
            Error::OrderOutOfRange(_) => "order_out_of_range",
            Error::NegativeArgument(_) => "negative_argument",
            Error::IndexOutOfRange(_) => "index_out_of_range",
            Error::OpenPath(_) => "open_path",
            Error::DegeneratePath => "degenerate_path",
            Error::ROutOfRange(_) => "r_out_of_range",
            Error::UnsupportedClass => "unsupported_class",
            Error::MissingRadialIndex => "missing_radial_index",
            Error::WallRequired => "wall_required",
        }
    }
}
