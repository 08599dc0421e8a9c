//! Exact eigenmodes of a particle inside a rotating solid cylinder.
//!
//! The radial factor is a Bessel function pinned to the wall by either
//! a hard (Dirichlet) or reflecting (Neumann) condition, so the radial
//! wavenumber is a Bessel root divided by the wall radius. Rotation
//! adds the same winding-linear coupling n hbar Omega that the shell
//! spectra carry, which is what pushes low-lying counter-wound modes
//! below zero energy and turns their interference into a beat.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::core::constants::HBAR;
use crate::core::{BoundaryCondition, ModeSpec, Particle, RotatingFrame, Sector};
use crate::error::{Error, Result};
use crate::shell::{SpectrumFamily, SpectrumPoint};
use crate::specfun::{self, ZeroCache, ZeroKind};
use crate::trace::{InterferenceTrace, TraceAxis};

fn wall_kind(bc: BoundaryCondition) -> Result<ZeroKind> {
    match bc {
        BoundaryCondition::Dirichlet => Ok(ZeroKind::Function),
        BoundaryCondition::Neumann => Ok(ZeroKind::Derivative),
        BoundaryCondition::None => Err(Error::WallRequired),
    }
}

fn family_of(bc: BoundaryCondition) -> SpectrumFamily {
    match bc {
        BoundaryCondition::Neumann => SpectrumFamily::CylinderNeumann,
        _ => SpectrumFamily::CylinderDirichlet,
    }
}

/// Counter-wound modes live in mirrored sectors; tag them by the sign
/// of the winding number.
fn sector_of(n: i32) -> Sector {
    if n >= 0 {
        Sector::Plus
    } else {
        Sector::Minus
    }
}

fn spectrum_point(
    frame: &RotatingFrame,
    particle: &Particle,
    bc: BoundaryCondition,
    n: i32,
    s: u32,
    k: f64,
    root: f64,
) -> Result<SpectrumPoint> {
    let kappa = root / frame.radius();
    let half_inv_mass = HBAR * HBAR / (2.0 * particle.mass());
    let e0 = half_inv_mass * kappa * kappa + half_inv_mass * k * k;
    let corr = HBAR * frame.omega() * n as f64;
    let mode = ModeSpec::new(sector_of(n), n, k, s, bc)?;
    Ok(SpectrumPoint::assemble(mode, family_of(bc), e0, corr))
}

fn energy_with(
    frame: &RotatingFrame,
    particle: &Particle,
    bc: BoundaryCondition,
    n: i32,
    s: u32,
    k: f64,
) -> Result<SpectrumPoint> {
    let kind = wall_kind(bc)?;
    let root = match kind {
        ZeroKind::Function => specfun::bessel_zero(n, s)?,
        ZeroKind::Derivative => specfun::bessel_prime_zero(n, s)?,
    };
    spectrum_point(frame, particle, bc, n, s, k, root)
}

/// Energy of the hard-wall mode (n, s) at axial wavenumber k.
pub fn dirichlet_energy(
    frame: &RotatingFrame,
    particle: &Particle,
    n: i32,
    s: u32,
    k: f64,
) -> Result<SpectrumPoint> {
    energy_with(frame, particle, BoundaryCondition::Dirichlet, n, s, k)
}

/// Energy of the reflecting-wall mode (n, s) at axial wavenumber k.
pub fn neumann_energy(
    frame: &RotatingFrame,
    particle: &Particle,
    n: i32,
    s: u32,
    k: f64,
) -> Result<SpectrumPoint> {
    energy_with(frame, particle, BoundaryCondition::Neumann, n, s, k)
}

/// A fully specified cylinder eigenmode, ready for evaluation.
#[derive(Debug, Clone, Serialize)]
pub struct CylinderMode {
    point: SpectrumPoint,
    radius: f64,
    kappa: f64,
}

impl CylinderMode {
    pub fn new(
        frame: &RotatingFrame,
        particle: &Particle,
        bc: BoundaryCondition,
        n: i32,
        s: u32,
        k: f64,
    ) -> Result<Self> {
        let point = energy_with(frame, particle, bc, n, s, k)?;
        let kind = wall_kind(bc)?;
        let root = match kind {
            ZeroKind::Function => specfun::bessel_zero(n, s)?,
            ZeroKind::Derivative => specfun::bessel_prime_zero(n, s)?,
        };
        Ok(Self {
            point,
            radius: frame.radius(),
            kappa: root / frame.radius(),
        })
    }

    pub fn n(&self) -> i32 {
        self.point.mode.angular_qn
    }

    pub fn s(&self) -> u32 {
        self.point.mode.radial_index
    }

    pub fn k(&self) -> f64 {
        self.point.mode.axial_k
    }

    pub fn bc(&self) -> BoundaryCondition {
        self.point.mode.bc
    }

    pub fn sector(&self) -> Sector {
        self.point.mode.sector
    }

    pub fn energy(&self) -> f64 {
        self.point.energy
    }

    pub fn radial_wavenumber(&self) -> f64 {
        self.kappa
    }

    pub fn spectrum_point(&self) -> &SpectrumPoint {
        &self.point
    }

    pub fn wall_radius(&self) -> f64 {
        self.radius
    }

    /// Unnormalized amplitude e^{-iEt/hbar} e^{i n phi} e^{i k z} J_n(kappa r).
    pub fn wavefunction(&self, r: f64, phi: f64, z: f64, t: f64) -> Result<Complex64> {
        if !(0.0..=self.radius).contains(&r) {
            return Err(Error::ROutOfRange(r));
        }
        let radial = specfun::bessel_j(self.n(), self.kappa * r)?;
        let phase = -self.energy() * t / HBAR + self.n() as f64 * phi + self.k() * z;
        Ok(Complex64::from_polar(radial, phase))
    }

    /// Closed form of integral_0^R J_n(kappa r)^2 r dr for this mode's
    /// boundary condition.
    pub fn l2_radial_norm(&self) -> Result<f64> {
        let half_r2 = 0.5 * self.radius * self.radius;
        let u = self.kappa * self.radius;
        Ok(match self.bc() {
            BoundaryCondition::Neumann => {
                let nn = (self.n() as f64) * (self.n() as f64);
                half_r2 * (1.0 - nn / (u * u)) * specfun::bessel_j(self.n(), u)?.powi(2)
            }
            _ => half_r2 * specfun::bessel_j_prime(self.n(), u)?.powi(2),
        })
    }
}

/// All cylinder states with negative energy for |n| <= n_max and
/// 1 <= s <= s_max at k = 0, ordered by winding then radial index.
pub fn negative_energy_census_3d(
    frame: &RotatingFrame,
    particle: &Particle,
    bc: BoundaryCondition,
    n_max: u32,
    s_max: u32,
) -> Result<Vec<SpectrumPoint>> {
    let kind = wall_kind(bc)?;
    if n_max > specfun::MAX_ORDER as u32 {
        return Err(Error::OrderOutOfRange(n_max as i32));
    }
    if s_max == 0 || s_max > specfun::MAX_ZERO_INDEX {
        return Err(Error::IndexOutOfRange(s_max as i64));
    }
    let cache = ZeroCache::new();
    let mut found = Vec::new();
    for n in -(n_max as i32)..=(n_max as i32) {
        for s in 1..=s_max {
            let root = cache.zero(n, kind, s)?;
            let point = spectrum_point(frame, particle, bc, n, s, 0.0, root)?;
            if point.is_negative() {
                found.push(point);
            }
        }
    }
    Ok(found)
}

/// Interference of the (+n, plus-sector) and (-n, minus-sector) modes
/// with equal s and wall type, read along the phi = 0 ray.
///
/// The two energies differ by the winding coupling alone, so the cross
/// term oscillates instead of holding a fixed phase: it equals
/// 2 J_n(kappa r)^2 cos(dE t / hbar) with dE the stored energy
/// difference, and the radial profile pins it to zero wherever J_n does.
pub fn anomalous_interference(
    frame: &RotatingFrame,
    particle: &Particle,
    n: i32,
    s: u32,
    bc: BoundaryCondition,
    r_grid: &[f64],
    t_grid: &[f64],
) -> Result<InterferenceTrace> {
    let n_abs = n.abs();
    let co = CylinderMode::new(frame, particle, bc, n_abs, s, 0.0)?;
    let counter = CylinderMode::new(frame, particle, bc, -n_abs, s, 0.0)?;
    for &r in r_grid {
        if !(0.0..=frame.radius()).contains(&r) {
            return Err(Error::ROutOfRange(r));
        }
    }
    let delta_e = co.energy() - counter.energy();
    let time_dependent = delta_e != 0.0;

    let mut cross_term = Vec::with_capacity(r_grid.len() * t_grid.len());
    let mut total_density = Vec::with_capacity(r_grid.len() * t_grid.len());
    for &r in r_grid {
        let radial = specfun::bessel_j(n_abs, co.radial_wavenumber() * r)?;
        let envelope = 2.0 * radial * radial;
        for &t in t_grid {
            let cross = envelope * (delta_e * t / HBAR).cos();
            cross_term.push(cross);
            total_density.push(envelope + cross);
        }
    }

    Ok(InterferenceTrace {
        axis: TraceAxis::RadiusTime { r: r_grid.to_vec(), t: t_grid.to_vec() },
        total_density,
        cross_term,
        extracted_phase: 0.0,
        winding: 0,
        sectors_used: (co.sector(), counter.sector()),
        no_sagnac: false,
        time_dependent,
        beat_period: time_dependent.then(|| PI / (n_abs as f64 * frame.omega().abs())),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad;
    use crate::shell::periodic_full_energy;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn fig_frame() -> RotatingFrame {
        RotatingFrame::new(-1e7, 1e-5).unwrap()
    }

    #[test]
    fn hard_wall_ground_pair_energies() {
        let p = Particle::electron();
        let d = dirichlet_energy(&fig_frame(), &p, 1, 1, 0.0).unwrap();
        assert_relative_eq!(d.nonrotating_energy, 8.962_262_946_431e-28, max_relative = 1e-10);
        assert_relative_eq!(d.energy, -1.583_455_223_568_8e-28, max_relative = 1e-9);
        let nm = neumann_energy(&fig_frame(), &p, 1, 1, 0.0).unwrap();
        assert_relative_eq!(nm.nonrotating_energy, 2.069_319_791_917e-28, max_relative = 1e-10);
        assert_relative_eq!(nm.energy, -8.476_398_378_082_6e-28, max_relative = 1e-9);
        assert!(nm.energy < d.energy);
    }

    #[test]
    fn counter_wound_partner_is_lifted() {
        let p = Particle::electron();
        let lifted = dirichlet_energy(&fig_frame(), &p, -1, 1, 0.0).unwrap();
        assert_relative_eq!(lifted.energy, 1.950_798_111_6e-27, max_relative = 1e-9);
        assert_eq!(lifted.mode.sector, Sector::Minus);
    }

    #[test]
    fn axially_symmetric_modes_ignore_rotation() {
        let p = Particle::electron();
        let spinning = dirichlet_energy(&fig_frame(), &p, 0, 2, 0.0).unwrap();
        let still_frame = RotatingFrame::new(0.0, 1e-5).unwrap();
        let still = dirichlet_energy(&still_frame, &p, 0, 2, 0.0).unwrap();
        assert_eq!(spinning.energy.to_bits(), still.energy.to_bits());
        assert_eq!(spinning.rotation_correction, 0.0);
    }

    #[test]
    fn static_reflecting_wall_spectrum_is_positive() {
        let p = Particle::electron();
        let still = RotatingFrame::new(0.0, 1e-5).unwrap();
        for n in 1..=4 {
            for s in 1..=3 {
                assert!(neumann_energy(&still, &p, n, s, 0.0).unwrap().energy > 0.0);
            }
        }
    }

    #[test]
    fn winding_splitting_is_the_linear_coupling() {
        let p = Particle::electron();
        let f = fig_frame();
        for (n, s) in [(1, 1), (2, 3), (5, 2)] {
            let up = dirichlet_energy(&f, &p, n, s, 0.0).unwrap();
            let down = dirichlet_energy(&f, &p, -n, s, 0.0).unwrap();
            // the rotation-free parts share one Bessel root
            assert_eq!(
                up.nonrotating_energy.to_bits(),
                down.nonrotating_energy.to_bits()
            );
            let split = 2.0 * n as f64 * HBAR * f.omega();
            assert_eq!(
                (up.rotation_correction - down.rotation_correction).to_bits(),
                split.to_bits()
            );
            assert_relative_eq!(up.energy - down.energy, split, max_relative = 1e-12);
        }
    }

    #[test]
    fn winding_coupling_matches_the_shell_family() {
        let p = Particle::electron();
        let f = fig_frame();
        for n in [-3, 1, 7] {
            let cyl = dirichlet_energy(&f, &p, n, 1, 0.0).unwrap();
            let shell = periodic_full_energy(&f, &p, n, 0.0);
            assert_eq!(
                cyl.rotation_correction.to_bits(),
                shell.rotation_correction.to_bits()
            );
        }
    }

    #[test]
    fn mode_construction_and_accessors() {
        let p = Particle::electron();
        let mode = CylinderMode::new(&fig_frame(), &p, BoundaryCondition::Dirichlet, 1, 1, 0.0)
            .unwrap();
        assert_eq!(mode.n(), 1);
        assert_eq!(mode.s(), 1);
        assert_eq!(mode.bc(), BoundaryCondition::Dirichlet);
        assert_eq!(mode.sector(), Sector::Plus);
        assert_relative_eq!(
            mode.radial_wavenumber() * mode.wall_radius(),
            3.831_705_970_207_512,
            max_relative = 1e-10
        );
        assert!(matches!(
            CylinderMode::new(&fig_frame(), &p, BoundaryCondition::None, 1, 1, 0.0),
            Err(Error::WallRequired)
        ));
        assert!(matches!(
            CylinderMode::new(&fig_frame(), &p, BoundaryCondition::Dirichlet, 1, 0, 0.0),
            Err(Error::IndexOutOfRange(0))
        ));
    }

    #[test]
    fn wavefunction_respects_the_wall() {
        let p = Particle::electron();
        let f = fig_frame();
        let hard = CylinderMode::new(&f, &p, BoundaryCondition::Dirichlet, 1, 2, 0.0).unwrap();
        assert!(hard.wavefunction(1e-5, 0.3, 0.0, 1e-9).unwrap().norm() <= 1e-10);
        assert_eq!(hard.wavefunction(0.0, 0.0, 0.0, 0.0).unwrap().norm(), 0.0);
        assert!(matches!(
            hard.wavefunction(1.1e-5, 0.0, 0.0, 0.0),
            Err(Error::ROutOfRange(_))
        ));

        // reflecting wall: radial slope vanishes, checked by a central
        // difference in the scaled radial variable
        let soft = CylinderMode::new(&f, &p, BoundaryCondition::Neumann, 2, 1, 0.0).unwrap();
        let u = soft.radial_wavenumber() * soft.wall_radius();
        let du = 1e-4;
        let fd = (specfun::bessel_j(2, u + du).unwrap() - specfun::bessel_j(2, u - du).unwrap())
            / (2.0 * du);
        assert!(fd.abs() <= 1e-8, "wall slope {fd}");
    }

    #[test]
    fn wavefunction_value_at_the_radial_peak() {
        let p = Particle::electron();
        let f = fig_frame();
        let mode = CylinderMode::new(&f, &p, BoundaryCondition::Dirichlet, 1, 1, 0.0).unwrap();
        // first interior maximum of the radial factor
        let r_peak = specfun::bessel_prime_zero(1, 1).unwrap() / mode.radial_wavenumber();
        let value = mode.wavefunction(r_peak, 0.0, 0.0, 0.0).unwrap();
        assert_relative_eq!(value.re, 0.581_865_224_3, max_relative = 1e-6);
        assert_abs_diff_eq!(value.im, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn wavefunction_phase_factors() {
        let p = Particle::electron();
        let f = fig_frame();
        let mode = CylinderMode::new(&f, &p, BoundaryCondition::Dirichlet, 2, 1, 1e4).unwrap();
        let r = 0.4e-5;
        let base = mode.wavefunction(r, 0.0, 0.0, 0.0).unwrap();
        let turned = mode.wavefunction(r, 0.7, 0.0, 0.0).unwrap();
        assert_relative_eq!(
            (turned / base).arg(),
            2.0 * 0.7,
            max_relative = 1e-10
        );
        let shifted = mode.wavefunction(r, 0.0, 3e-5, 0.0).unwrap();
        assert_relative_eq!((shifted / base).arg(), 1e4 * 3e-5, max_relative = 1e-10);
        let later = mode.wavefunction(r, 0.0, 0.0, 1e-10).unwrap();
        assert_relative_eq!(
            (later / base).arg(),
            -mode.energy() * 1e-10 / HBAR,
            max_relative = 1e-8
        );
    }

    #[test]
    fn radial_norm_matches_quadrature() {
        let p = Particle::electron();
        let f = fig_frame();
        for bc in [BoundaryCondition::Dirichlet, BoundaryCondition::Neumann] {
            for (n, s) in [(0, 1), (1, 1), (2, 2)] {
                let mode = CylinderMode::new(&f, &p, bc, n, s, 0.0).unwrap();
                let kappa = mode.radial_wavenumber();
                let numeric = quad::integrate(
                    |r| specfun::bessel_j(n, kappa * r).unwrap().powi(2) * r,
                    0.0,
                    mode.wall_radius(),
                    1e-13,
                )
                .value;
                assert_relative_eq!(mode.l2_radial_norm().unwrap(), numeric, max_relative = 1e-9);
            }
        }
    }

    #[test]
    fn census_finds_the_two_ground_negatives() {
        let p = Particle::electron();
        let f = fig_frame();
        let hard = negative_energy_census_3d(&f, &p, BoundaryCondition::Dirichlet, 1, 5).unwrap();
        assert_eq!(hard.len(), 1);
        assert_eq!((hard[0].mode.angular_qn, hard[0].mode.radial_index), (1, 1));
        let soft = negative_energy_census_3d(&f, &p, BoundaryCondition::Neumann, 1, 5).unwrap();
        assert_eq!(soft.len(), 1);
        assert_eq!((soft[0].mode.angular_qn, soft[0].mode.radial_index), (1, 1));
    }

    #[test]
    fn census_empty_without_rotation_and_grows_with_it() {
        let p = Particle::electron();
        let still = RotatingFrame::new(0.0, 1e-5).unwrap();
        assert!(negative_energy_census_3d(&still, &p, BoundaryCondition::Dirichlet, 3, 5)
            .unwrap()
            .is_empty());
        let mut last = 0;
        for omega in [-1e7, -2e7, -4e7] {
            let f = RotatingFrame::new(omega, 1e-5).unwrap();
            let count = negative_energy_census_3d(&f, &p, BoundaryCondition::Dirichlet, 5, 8)
                .unwrap()
                .len();
            assert!(count >= last, "census shrank: {count} < {last}");
            last = count;
        }
        assert!(last > 1);
    }

    #[test]
    fn census_validates_its_bounds() {
        let p = Particle::electron();
        let f = fig_frame();
        assert!(matches!(
            negative_energy_census_3d(&f, &p, BoundaryCondition::Dirichlet, 51, 5),
            Err(Error::OrderOutOfRange(51))
        ));
        assert!(matches!(
            negative_energy_census_3d(&f, &p, BoundaryCondition::Dirichlet, 5, 0),
            Err(Error::IndexOutOfRange(0))
        ));
        assert!(matches!(
            negative_energy_census_3d(&f, &p, BoundaryCondition::None, 5, 5),
            Err(Error::WallRequired)
        ));
    }

    #[test]
    fn beat_amplitude_at_the_radial_peak() {
        let p = Particle::electron();
        let f = fig_frame();
        let kappa = specfun::bessel_zero(1, 1).unwrap() / 1e-5;
        let r_peak = specfun::bessel_prime_zero(1, 1).unwrap() / kappa;
        let trace = anomalous_interference(
            &f,
            &p,
            1,
            1,
            BoundaryCondition::Dirichlet,
            &[r_peak],
            &[0.0],
        )
        .unwrap();
        assert_relative_eq!(trace.cross_term[0], 0.677_134_278_5, max_relative = 1e-6);
        assert!(trace.time_dependent);
        assert_relative_eq!(
            trace.beat_period.unwrap(),
            3.141_592_653_589_793e-7,
            max_relative = 1e-12
        );
        assert_eq!(trace.sectors_used, (Sector::Plus, Sector::Minus));
    }

    #[test]
    fn beat_vanishes_at_the_hard_wall_and_oscillates_in_time() {
        let p = Particle::electron();
        let f = fig_frame();
        let period = PI / 1e7;
        let trace = anomalous_interference(
            &f,
            &p,
            1,
            1,
            BoundaryCondition::Dirichlet,
            &[1e-5, 0.5e-5],
            &[0.0, period / 2.0, period],
        )
        .unwrap();
        // first row: wall radius, everything pinned to zero
        for j in 0..3 {
            assert_abs_diff_eq!(trace.cross_term[j], 0.0, epsilon = 1e-20);
        }
        // second row: half a period flips the sign, a full one restores it
        let row = &trace.cross_term[3..6];
        assert_relative_eq!(row[1], -row[0], max_relative = 1e-9);
        assert_relative_eq!(row[2], row[0], max_relative = 1e-9);
        assert!(trace.total_density.iter().all(|d| *d >= -1e-16));
    }

    #[test]
    fn beat_freezes_without_rotation() {
        let p = Particle::electron();
        let still = RotatingFrame::new(0.0, 1e-5).unwrap();
        let trace = anomalous_interference(
            &still,
            &p,
            1,
            1,
            BoundaryCondition::Dirichlet,
            &[0.4e-5],
            &[0.0, 1e-8, 5e-7],
        )
        .unwrap();
        assert!(!trace.time_dependent);
        assert!(trace.beat_period.is_none());
        assert_eq!(trace.cross_term[0].to_bits(), trace.cross_term[1].to_bits());
        assert_eq!(trace.cross_term[0].to_bits(), trace.cross_term[2].to_bits());
    }

    #[test]
    fn beat_time_average_is_zero() {
        let p = Particle::electron();
        let f = fig_frame();
        let kappa = specfun::bessel_zero(1, 1).unwrap() / 1e-5;
        let r = specfun::bessel_prime_zero(1, 1).unwrap() / kappa;
        let period = PI / 1e7;
        let steps = 64;
        let t_grid: Vec<f64> = (0..=steps)
            .map(|i| period * i as f64 / steps as f64)
            .collect();
        let trace =
            anomalous_interference(&f, &p, 1, 1, BoundaryCondition::Dirichlet, &[r], &t_grid)
                .unwrap();
        // trapezoid over exactly one period
        let mut sum = 0.5 * (trace.cross_term[0] + trace.cross_term[steps]);
        sum += trace.cross_term[1..steps].iter().sum::<f64>();
        let mean = sum / steps as f64;
        assert_abs_diff_eq!(mean, 0.0, epsilon = 1e-12);
    }
}
