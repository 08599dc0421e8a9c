//! Quantum mechanics of a particle bound to a thin rotating cylindrical
//! shell, reduced to the angular coordinate.
//!
//! The stationary angular equation has constant coefficients, so every
//! solution is a pair of winding modes e^{i omega phi} whose rates are
//! roots of a quadratic. The discriminant of that quadratic splits the
//! problem into three regimes; the periodicity requirement on top of it
//! can be imposed in more than one place, and each choice yields its
//! own spectrum family. All energies are reported together with their
//! split into a rotation-free part and the rotation coupling.

use std::f64::consts::TAU;
use std::ops::RangeInclusive;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::core::constants::HBAR;
use crate::core::{characteristic_energy, FluxSpec, ModeSpec, Particle, RotatingFrame, Sector};
use crate::error::{Error, Result};
use crate::trace::{InterferenceTrace, TraceAxis};

/// |D| at or below this counts as a repeated root. D is dimensionless.
pub const DISCRIMINANT_DEGENERACY_TOL: f64 = 1e-9;

/// Root structure of the winding-rate quadratic, per sector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolutionClass {
    /// Two distinct real winding rates.
    RealDistinct,
    /// One doubly degenerate real rate; the second solution grows
    /// linearly in angle.
    RealRepeated,
    /// Complex-conjugate rates with exponential envelopes. Classified
    /// but never solved here.
    ComplexPair,
}

/// Classify a discriminant value.
pub fn classify(d: f64) -> SolutionClass {
    if d.abs() <= DISCRIMINANT_DEGENERACY_TOL {
        SolutionClass::RealRepeated
    } else if d > 0.0 {
        SolutionClass::RealDistinct
    } else {
        SolutionClass::ComplexPair
    }
}

/// Dimensionless coefficients of the reduced angular eigenproblem.
///
/// The first-order coefficient A carries the rotation; the zeroth-order
/// B carries energy and axial momentum, one value per sector. D is the
/// discriminant A^2 + 4B of the winding-rate quadratic.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ShellCoefficients {
    a_coeff: f64,
    b_plus: f64,
    b_minus: f64,
    d_plus: f64,
    d_minus: f64,
    class_plus: SolutionClass,
    class_minus: SolutionClass,
}

/// Coefficients for given per-sector axial wavenumbers and energies.
pub fn shell_coefficients(
    frame: &RotatingFrame,
    particle: &Particle,
    k_plus: f64,
    k_minus: f64,
    e_plus: f64,
    e_minus: f64,
) -> ShellCoefficients {
    let r2 = frame.radius() * frame.radius();
    let m = particle.mass();
    let a_coeff = -2.0 * m * r2 * frame.omega() / HBAR;
    let b_of = |k: f64, e: f64| -r2 * (k * k - 2.0 * m * e / (HBAR * HBAR));
    let b_plus = b_of(k_plus, e_plus);
    let b_minus = b_of(k_minus, e_minus);
    let d_plus = a_coeff * a_coeff + 4.0 * b_plus;
    let d_minus = a_coeff * a_coeff + 4.0 * b_minus;
    ShellCoefficients {
        a_coeff,
        b_plus,
        b_minus,
        d_plus,
        d_minus,
        class_plus: classify(d_plus),
        class_minus: classify(d_minus),
    }
}

impl ShellCoefficients {
    pub fn a(&self) -> f64 {
        self.a_coeff
    }

    pub fn b(&self, sector: Sector) -> f64 {
        match sector {
            Sector::Plus => self.b_plus,
            Sector::Minus => self.b_minus,
        }
    }

    pub fn d(&self, sector: Sector) -> f64 {
        match sector {
            Sector::Plus => self.d_plus,
            Sector::Minus => self.d_minus,
        }
    }

    pub fn class(&self, sector: Sector) -> SolutionClass {
        match sector {
            Sector::Plus => self.class_plus,
            Sector::Minus => self.class_minus,
        }
    }

    /// The two real winding rates for the sector, ascending. The minus
    /// sector sees the first-order term with the opposite sign, so its
    /// rates are the mirror image of the plus sector's.
    pub fn winding_rates(&self, sector: Sector) -> Result<(f64, f64)> {
        let d = self.d(sector);
        if self.class(sector) == SolutionClass::ComplexPair {
            return Err(Error::UnsupportedClass);
        }
        Ok(match sector {
            Sector::Plus => quadratic_roots(self.a_coeff, self.b(sector), d.max(0.0)),
            Sector::Minus => quadratic_roots(-self.a_coeff, self.b(sector), d.max(0.0)),
        })
    }

    /// Relative phase 2 pi |A| picked up between the sectors over one
    /// full turn; this is the rotation signature in any cross-sector
    /// interference pattern.
    pub fn roundtrip_phase(&self) -> f64 {
        TAU * self.a_coeff.abs()
    }
}

/// Both roots of x^2 + a x - b, ascending, with d = a^2 + 4 b already
/// clamped nonnegative. The magnitude-large root is safe to form
/// directly; the other comes from the root product, which dodges the
/// cancellation the textbook formula hits when |b| << a^2.
fn quadratic_roots(a: f64, b: f64, d: f64) -> (f64, f64) {
    let root = d.sqrt();
    if a > 0.0 {
        let lo = -0.5 * (a + root);
        (lo, -b / lo)
    } else if a < 0.0 {
        let hi = 0.5 * (-a + root);
        (-b / hi, hi)
    } else {
        (-0.5 * root, 0.5 * root)
    }
}

/// Families of closed-form spectra exposed by this crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectrumFamily {
    /// Repeated-root branch of the shell problem.
    RepeatedRoot,
    /// Shell with single-valuedness imposed on the reduced factor left
    /// after splitting off the rotation phase.
    PeriodicReduced,
    /// Shell with single-valuedness imposed on the full wavefunction.
    PeriodicFull,
    /// Shell threaded by a magnetic flux line, single-valued full
    /// wavefunction.
    FluxCoupled,
    /// Solid cylinder with a hard wall.
    CylinderDirichlet,
    /// Solid cylinder with a reflecting wall.
    CylinderNeumann,
}

/// One eigenvalue with its provenance and its rotation split.
///
/// `energy` is always stored as `nonrotating_energy + rotation_correction`
/// evaluated in that order, so the decomposition holds bit-exactly.
#[derive(Debug, Clone, Serialize)]
pub struct SpectrumPoint {
    pub energy: f64,
    pub mode: ModeSpec,
    pub family: SpectrumFamily,
    pub nonrotating_energy: f64,
    pub rotation_correction: f64,
}

impl SpectrumPoint {
    pub(crate) fn assemble(
        mode: ModeSpec,
        family: SpectrumFamily,
        nonrotating_energy: f64,
        rotation_correction: f64,
    ) -> Self {
        Self {
            energy: nonrotating_energy + rotation_correction,
            mode,
            family,
            nonrotating_energy,
            rotation_correction,
        }
    }

    pub fn is_negative(&self) -> bool {
        self.energy < 0.0
    }

    /// The same point with a constant potential added to the
    /// rotation-free part (used for the opt-in confinement shift).
    pub fn shifted_by(&self, shift: f64) -> Self {
        Self::assemble(
            self.mode,
            self.family,
            self.nonrotating_energy + shift,
            self.rotation_correction,
        )
    }
}

fn axial_kinetic(particle: &Particle, k: f64) -> f64 {
    HBAR * HBAR * k * k / (2.0 * particle.mass())
}

/// -(1/2) m R^2 Omega^2, the rigid-rotation energy offset.
fn rigid_rotation_correction(frame: &RotatingFrame, particle: &Particle) -> f64 {
    let r = frame.radius();
    -0.5 * particle.mass() * r * r * frame.omega() * frame.omega()
}

/// Spectrum of the repeated-root branch: free axial motion shifted down
/// by the rigid-rotation term. Identical in both sectors.
pub fn repeated_root_energy(frame: &RotatingFrame, particle: &Particle, k: f64) -> SpectrumPoint {
    SpectrumPoint::assemble(
        ModeSpec::shell(Sector::Plus, 0, k),
        SpectrumFamily::RepeatedRoot,
        axial_kinetic(particle, k),
        rigid_rotation_correction(frame, particle),
    )
}

/// Spectrum with integer winding m imposed on the reduced factor:
/// adds m^2 times the shell energy scale, keeps the rigid-rotation
/// offset, and is degenerate in the sign of m.
pub fn periodic_reduced_energy(
    frame: &RotatingFrame,
    particle: &Particle,
    m: i32,
    k: f64,
) -> SpectrumPoint {
    let u = m as f64;
    let e0 = axial_kinetic(particle, k) + u * u * characteristic_energy(particle, frame.radius());
    SpectrumPoint::assemble(
        ModeSpec::shell(Sector::Plus, m, k),
        SpectrumFamily::PeriodicReduced,
        e0,
        rigid_rotation_correction(frame, particle),
    )
}

/// Which of the two winding solutions a state uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    Positive,
    Negative,
}

/// Angular momentum split into the frame-dragging part, which carries
/// no hbar, and the wave part, which does.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct AngularMomentumSplit {
    pub frame_term: f64,
    pub wave_term: f64,
}

impl AngularMomentumSplit {
    pub fn total(&self) -> f64 {
        self.frame_term + self.wave_term
    }
}

/// Azimuthal momentum eigenvalue of the reduced-factor states:
/// m R Omega (+ or -) hbar m / R, split into its two parts.
pub fn periodic_reduced_momentum(
    frame: &RotatingFrame,
    particle: &Particle,
    m: i32,
    branch: Branch,
) -> AngularMomentumSplit {
    let r = frame.radius();
    let wave = HBAR * m as f64 / r;
    AngularMomentumSplit {
        frame_term: particle.mass() * r * frame.omega(),
        wave_term: match branch {
            Branch::Positive => wave,
            Branch::Negative => -wave,
        },
    }
}

/// Rotation rates at which the two periodicity choices coincide:
/// Omega_s = hbar s / (2 m R^2), one per integer s.
pub fn omega_quantization(particle: &Particle, radius: f64, s: i32) -> f64 {
    s as f64 * HBAR / (2.0 * particle.mass() * radius * radius)
}

fn coupling_split(
    frame: &RotatingFrame,
    particle: &Particle,
    u: f64,
    k: f64,
) -> (f64, f64) {
    let e0 = axial_kinetic(particle, k)
        + u * u * characteristic_energy(particle, frame.radius());
    (e0, HBAR * frame.omega() * u)
}

/// Spectrum with integer winding p imposed on the full wavefunction:
/// p^2 times the shell scale plus the linear rotation coupling
/// hbar p Omega, which splits +p from -p.
pub fn periodic_full_energy(
    frame: &RotatingFrame,
    particle: &Particle,
    p: i32,
    k: f64,
) -> SpectrumPoint {
    let (e0, corr) = coupling_split(frame, particle, p as f64, k);
    SpectrumPoint::assemble(
        ModeSpec::shell(Sector::Plus, p, k),
        SpectrumFamily::PeriodicFull,
        e0,
        corr,
    )
}

/// Azimuthal momentum eigenvalue of the full-wavefunction states.
pub fn periodic_full_momentum(particle: &Particle, radius: f64, p: i32) -> f64 {
    let _ = particle;
    -HBAR * p as f64 / radius
}

/// Spectrum with a magnetic flux line through the shell axis. The flux
/// enters only through p - flux_ratio; at zero flux this reduces
/// bit-for-bit to `periodic_full_energy`.
pub fn flux_spectrum(
    frame: &RotatingFrame,
    particle: &Particle,
    flux: &FluxSpec,
    p: i32,
    k: f64,
) -> SpectrumPoint {
    let (e0, corr) = coupling_split(frame, particle, p as f64 - flux.ratio(), k);
    SpectrumPoint::assemble(
        ModeSpec::shell(Sector::Plus, p, k),
        SpectrumFamily::FluxCoupled,
        e0,
        corr,
    )
}

/// Rotation rate whose spectrum shift mimics the given flux detuning:
/// Omega = b_r_prime (p - flux_ratio) / hbar. With b_r_prime set to the
/// shell energy scale at the actual radius, the combined spectrum equals
/// the flux-only spectrum of a shell smaller by sqrt(2).
pub fn flux_equivalent_omega(
    particle: &Particle,
    flux_ratio: f64,
    p: i32,
    b_r_prime: f64,
) -> f64 {
    let _ = particle;
    b_r_prime * (p as f64 - flux_ratio) / HBAR
}

/// Constant negative energy shift from confining the particle to the
/// shell surface. Off by default everywhere; callers add it explicitly.
pub fn geometric_potential(particle: &Particle, radius: f64) -> f64 {
    -characteristic_energy(particle, radius)
}

/// A stationary state restricted to one sector, with its amplitude.
#[derive(Debug, Clone, Copy)]
pub struct SectorAmplitude {
    pub sector: Sector,
    pub amplitude: Complex64,
}

impl SectorAmplitude {
    pub fn new(sector: Sector, amplitude: Complex64) -> Self {
        Self { sector, amplitude }
    }
}

/// Density of a two-state superposition around the loop.
///
/// Across sectors the relative phase grows linearly in angle at rate A,
/// reaching 2 pi A after a full turn; that constant is reported reduced
/// mod 2 pi. Two states in the same sector produce an angle-independent
/// density with no trace of A, and the trace says so.
pub fn sector_interference(
    state_a: &SectorAmplitude,
    state_b: &SectorAmplitude,
    a_coeff: f64,
    phi_grid: &[f64],
) -> InterferenceTrace {
    let same_sector = state_a.sector == state_b.sector;
    let axis = TraceAxis::Angle { phi: phi_grid.to_vec() };

    if same_sector {
        let cross = 2.0 * (state_a.amplitude.conj() * state_b.amplitude).re;
        let density = (state_a.amplitude + state_b.amplitude).norm_sqr();
        return InterferenceTrace {
            axis,
            total_density: vec![density; phi_grid.len()],
            cross_term: vec![cross; phi_grid.len()],
            extracted_phase: 0.0,
            winding: 0,
            sectors_used: (state_a.sector, state_b.sector),
            no_sagnac: true,
            time_dependent: false,
            beat_period: None,
        };
    }

    // order the pair as (plus, minus) so the phase sign is well defined
    let (plus, minus) = if state_a.sector == Sector::Plus {
        (state_a.amplitude, state_b.amplitude)
    } else {
        (state_b.amplitude, state_a.amplitude)
    };
    let background = plus.norm_sqr() + minus.norm_sqr();
    let pair = plus.conj() * minus;
    let cross_term: Vec<f64> = phi_grid
        .iter()
        .map(|&phi| 2.0 * (pair * Complex64::from_polar(1.0, a_coeff * phi)).re)
        .collect();
    let total_density = cross_term.iter().map(|c| background + c).collect();

    InterferenceTrace {
        axis,
        total_density,
        cross_term,
        extracted_phase: TAU * a_coeff.abs().fract(),
        winding: a_coeff.abs().floor() as u64,
        sectors_used: (state_a.sector, state_b.sector),
        no_sagnac: false,
        time_dependent: false,
        beat_period: None,
    }
}

/// All flux-spectrum states with negative energy in the given winding
/// range, in ascending p order.
pub fn negative_energy_census_shell(
    frame: &RotatingFrame,
    particle: &Particle,
    flux: &FluxSpec,
    p_range: RangeInclusive<i32>,
) -> Vec<SpectrumPoint> {
    p_range
        .filter_map(|p| {
            let point = flux_spectrum(frame, particle, flux, p, 0.0);
            point.is_negative().then_some(point)
        })
        .collect()
}
