//! Frames, particles and the frozen constants table.
//!
//! A rigidly rotating cylindrical laboratory is described by a signed
//! angular velocity `omega` and a reference radius (the shell or cylinder
//! wall the physics lives on). Positive `omega` means counter-clockwise
//! rotation seen from +z, and the sign is threaded unchanged through every
//! formula downstream: nothing in this crate silently takes |omega|.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// CODATA 2018 values, SI units throughout.
pub mod constants {
    /// Speed of light in vacuum, m/s (exact).
    pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
    /// Reduced Planck constant, J s.
    pub const HBAR: f64 = 1.054_571_817e-34;
    /// Elementary charge, C (exact).
    pub const ELEMENTARY_CHARGE: f64 = 1.602_176_634e-19;
    /// Electron mass, kg.
    pub const ELECTRON_MASS: f64 = 9.109_383_7015e-31;
    /// Neutron mass, kg.
    pub const NEUTRON_MASS: f64 = 1.674_927_498_04e-27;
}

/// The constants table as a JSON document, `key -> {value, unit, source}`.
///
/// This is what the CLI embeds in every output header so that a result
/// file pins down the exact numbers it was produced with.
pub fn constants_table() -> serde_json::Value {
    use constants::*;
    serde_json::json!({
        "speed_of_light": {"value": SPEED_OF_LIGHT, "unit": "m/s", "source": "CODATA 2018 (exact)"},
        "hbar": {"value": HBAR, "unit": "J s", "source": "CODATA 2018"},
        "elementary_charge": {"value": ELEMENTARY_CHARGE, "unit": "C", "source": "CODATA 2018 (exact)"},
        "electron_mass": {"value": ELECTRON_MASS, "unit": "kg", "source": "CODATA 2018"},
        "neutron_mass": {"value": NEUTRON_MASS, "unit": "kg", "source": "CODATA 2018"},
    })
}

/// A rigidly rotating frame: signed angular velocity (rad/s) and the
/// reference radius R (m).
///
/// Construction enforces a subluminal rim, |omega| R < c. The checked
/// linear rim speed is available through [`RotatingFrame::rim_speed`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "FrameParams")]
pub struct RotatingFrame {
    omega: f64,
    radius: f64,
}

#[derive(Deserialize)]
struct FrameParams {
    omega: f64,
    radius: f64,
}

impl TryFrom<FrameParams> for RotatingFrame {
    type Error = Error;
    fn try_from(p: FrameParams) -> Result<Self> {
        RotatingFrame::new(p.omega, p.radius)
    }
}

impl RotatingFrame {
    pub fn new(omega: f64, radius: f64) -> Result<Self> {
        if !radius.is_finite() || radius <= 0.0 {
            return Err(Error::NonpositiveRadius(radius));
        }
        if !omega.is_finite() {
            return Err(Error::NonfiniteInput { name: "omega", value: omega });
        }
        let rim = (omega * radius).abs();
        if rim >= constants::SPEED_OF_LIGHT {
            return Err(Error::SuperluminalRim { rim_speed: rim });
        }
        Ok(Self { omega, radius })
    }

    /// Build a frame from the signed linear rim velocity v = omega R.
    pub fn from_linear_velocity(v: f64, radius: f64) -> Result<Self> {
        if !radius.is_finite() || radius <= 0.0 {
            return Err(Error::NonpositiveRadius(radius));
        }
        Self::new(v / radius, radius)
    }

    /// Re-run the construction checks. Idempotent by design.
    pub fn validate(&self) -> Result<&Self> {
        Self::new(self.omega, self.radius)?;
        Ok(self)
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Signed linear speed of the rim, v = omega R.
    pub fn rim_speed(&self) -> f64 {
        self.omega * self.radius
    }
}

/// A point particle: rest mass (kg) and, when it matters, charge (C).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ParticleParams")]
pub struct Particle {
    mass: f64,
    charge: Option<f64>,
}

#[derive(Deserialize)]
struct ParticleParams {
    mass: f64,
    charge: Option<f64>,
}

impl TryFrom<ParticleParams> for Particle {
    type Error = Error;
    fn try_from(p: ParticleParams) -> Result<Self> {
        let q = Particle::new(p.mass)?;
        Ok(Particle { charge: p.charge, ..q })
    }
}

impl Particle {
    pub fn new(mass: f64) -> Result<Self> {
        if !mass.is_finite() || mass <= 0.0 {
            return Err(Error::NonpositiveMass(mass));
        }
        Ok(Self { mass, charge: None })
    }

    pub fn with_charge(mass: f64, charge: f64) -> Result<Self> {
        let p = Self::new(mass)?;
        Ok(Self { charge: Some(charge), ..p })
    }

    pub fn electron() -> Self {
        Self {
            mass: constants::ELECTRON_MASS,
            charge: Some(-constants::ELEMENTARY_CHARGE),
        }
    }

    pub fn neutron() -> Self {
        Self { mass: constants::NEUTRON_MASS, charge: Some(0.0) }
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn charge(&self) -> Option<f64> {
        self.charge
    }
}

/// Magnetic flux along the symmetry axis, held as the dimensionless ratio
/// flux / flux_quantum. Every formula in the crate consumes only this
/// ratio; the absolute flux is provided for reporting.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "FluxParams")]
pub struct FluxSpec {
    ratio: f64,
}

#[derive(Deserialize)]
struct FluxParams {
    ratio: f64,
}

impl TryFrom<FluxParams> for FluxSpec {
    type Error = Error;
    fn try_from(p: FluxParams) -> Result<Self> {
        FluxSpec::new(p.ratio)
    }
}

impl FluxSpec {
    pub fn new(ratio: f64) -> Result<Self> {
        if !ratio.is_finite() {
            return Err(Error::NonfiniteInput { name: "flux_ratio", value: ratio });
        }
        Ok(Self { ratio })
    }

    pub fn none() -> Self {
        Self { ratio: 0.0 }
    }

    pub fn ratio(&self) -> f64 {
        self.ratio
    }

    /// SI flux quantum 2 pi hbar / e, in Wb.
    pub fn flux_quantum() -> f64 {
        2.0 * std::f64::consts::PI * constants::HBAR / constants::ELEMENTARY_CHARGE
    }

    /// Absolute flux in Wb implied by the stored ratio.
    pub fn flux(&self) -> f64 {
        self.ratio * Self::flux_quantum()
    }
}

/// Which of the two reflection-related state-space sectors a state lives
/// in. The minus sector is governed by the phi -> -phi image of the plus
/// sector Hamiltonian; interference across the two is what produces
/// rotation-induced phase shifts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sector {
    Plus,
    Minus,
}

impl Sector {
    pub fn reflected(self) -> Self {
        match self {
            Sector::Plus => Sector::Minus,
            Sector::Minus => Sector::Plus,
        }
    }
}

/// Boundary condition on the cylinder wall, `None` for shell problems
/// that have no radial direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryCondition {
    Dirichlet,
    Neumann,
    None,
}

/// Quantum numbers of a single mode.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ModeParams")]
pub struct ModeSpec {
    pub sector: Sector,
    /// Signed angular quantum number.
    pub angular_qn: i32,
    /// Axial wavenumber, 1/m.
    pub axial_k: f64,
    /// 1-based index into the radial zero table; 0 for shell modes.
    pub radial_index: u32,
    pub bc: BoundaryCondition,
}

#[derive(Deserialize)]
struct ModeParams {
    sector: Sector,
    angular_qn: i32,
    axial_k: f64,
    radial_index: u32,
    bc: BoundaryCondition,
}

impl TryFrom<ModeParams> for ModeSpec {
    type Error = Error;
    fn try_from(p: ModeParams) -> Result<Self> {
        ModeSpec::new(p.sector, p.angular_qn, p.axial_k, p.radial_index, p.bc)
    }
}

impl ModeSpec {
    pub fn new(
        sector: Sector,
        angular_qn: i32,
        axial_k: f64,
        radial_index: u32,
        bc: BoundaryCondition,
    ) -> Result<Self> {
        if bc != BoundaryCondition::None && radial_index == 0 {
            return Err(Error::MissingRadialIndex);
        }
        if !axial_k.is_finite() {
            return Err(Error::NonfiniteInput { name: "axial_k", value: axial_k });
        }
        Ok(Self { sector, angular_qn, axial_k, radial_index, bc })
    }

    /// A shell mode: no radial structure, no wall.
    pub fn shell(sector: Sector, angular_qn: i32, axial_k: f64) -> Self {
        Self { sector, angular_qn, axial_k, radial_index: 0, bc: BoundaryCondition::None }
    }
}

/// Characteristic rotational energy scale of a shell,
/// B_R = hbar^2 / (2 m R^2) in J.
///
/// `radius` must be positive; feed it from a validated frame.
pub fn characteristic_energy(particle: &Particle, radius: f64) -> f64 {
    let hbar = constants::HBAR;
    hbar * hbar / (2.0 * particle.mass() * radius * radius)
}
