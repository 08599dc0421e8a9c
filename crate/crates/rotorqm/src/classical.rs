//! Classical signal timing in the rotating frame, plus the canonical
//! momentum and its circulation phase for matter beams.
//!
//! A uniformly rotating observer sees counter-propagating signals on a
//! closed loop arrive at different global times. The time-orientation
//! part of the metric contributes `2 Omega r^2 / (c^2 gamma^2)` per
//! radian with opposite signs for the two directions; everything here
//! is bookkeeping around that one integrand.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::core::constants::SPEED_OF_LIGHT;
use crate::core::{Particle, RotatingFrame};
use crate::error::{Error, Result};
use crate::quad;

/// Lorentz factor of a point riding the frame at radius `r`.
pub fn gamma_factor(frame: &RotatingFrame, r: f64) -> Result<f64> {
    let g2 = gamma_sq(frame, r)?;
    Ok(g2.sqrt())
}

fn gamma_sq(frame: &RotatingFrame, r: f64) -> Result<f64> {
    if !r.is_finite() || r < 0.0 {
        return Err(Error::NonpositiveRadius(r));
    }
    let beta = frame.omega() * r / SPEED_OF_LIGHT;
    let g2 = 1.0 - beta * beta;
    if g2 <= 0.0 {
        return Err(Error::SuperluminalRim {
            rim_speed: frame.omega().abs() * r,
        });
    }
    Ok(g2)
}

/// Proper time in seconds accumulated over global-time and angle
/// intervals at fixed radius. The angle term carries the sign of Omega,
/// which is the whole Sagnac story.
pub fn proper_time(frame: &RotatingFrame, r: f64, delta_t_global: f64, delta_phi: f64) -> Result<f64> {
    for (name, value) in [("delta_t_global", delta_t_global), ("delta_phi", delta_phi)] {
        if !value.is_finite() {
            return Err(Error::NonfiniteInput { name, value });
        }
    }
    let gamma = gamma_factor(frame, r)?;
    let c2 = SPEED_OF_LIGHT * SPEED_OF_LIGHT;
    Ok(gamma * delta_t_global + frame.omega() * r * r * delta_phi / (c2 * gamma))
}

/// Arrival times of the two counter-propagating signals on one loop.
///
/// `delta_t` is computed in closed form (or by quadrature) at full
/// precision and is the authoritative field; `t_cw` and `t_ccw` are the
/// mean transit time offset by half of it, so reconstructing their
/// difference in f64 agrees with `delta_t` only up to rounding in the
/// mean. Consumers wanting the timing asymmetry must read `delta_t`.
#[derive(Debug, Clone, Serialize)]
pub struct TimingResult {
    pub t_cw: f64,
    pub t_ccw: f64,
    pub delta_t: f64,
    pub gamma_profile: Vec<f64>,
}

impl TimingResult {
    fn from_base(t_base: f64, delta_t: f64, gamma_profile: Vec<f64>) -> Self {
        Self {
            t_cw: t_base - 0.5 * delta_t,
            t_ccw: t_base + 0.5 * delta_t,
            delta_t,
            gamma_profile,
        }
    }
}

/// A classical wave signal, characterized by its frequency.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ClassicalSignal {
    frequency: f64,
}

impl ClassicalSignal {
    pub fn new(frequency: f64) -> Result<Self> {
        if !frequency.is_finite() || frequency <= 0.0 {
            return Err(Error::NonpositiveFrequency(frequency));
        }
        Ok(Self { frequency })
    }

    pub fn frequency(&self) -> f64 {
        self.frequency
    }
}

/// Circular-loop arrival-time difference, exact to all orders in
/// `Omega r / c`: delta_t = 4 pi Omega r^2 / (c^2 gamma^2).
pub fn roundtrip_delta_t(frame: &RotatingFrame, r: f64) -> Result<TimingResult> {
    let g2 = gamma_sq(frame, r)?;
    let c2 = SPEED_OF_LIGHT * SPEED_OF_LIGHT;
    let delta_t = 4.0 * PI * frame.omega() * r * r / (c2 * g2);
    let t_base = TAU * r / (SPEED_OF_LIGHT * g2);
    Ok(TimingResult::from_base(t_base, delta_t, vec![g2.sqrt()]))
}

/// Leading-order timing difference for any loop of the given enclosed
/// area: 4 Omega A / c^2. No gamma correction; see `roundtrip_delta_t`
/// for the exact circular value.
pub fn leading_order_delta_t(frame: &RotatingFrame, area: f64) -> f64 {
    4.0 * frame.omega() * area / (SPEED_OF_LIGHT * SPEED_OF_LIGHT)
}

/// Phase delay a wave of the given frequency accumulates over `delta_t`.
pub fn classical_sagnac_phase(signal: &ClassicalSignal, delta_t: f64) -> f64 {
    TAU * signal.frequency() * delta_t
}

enum PathShape {
    Circle(f64),
    Sampled(SampledLoop),
    Analytic(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

/// A closed loop around the rotation axis, given as r(phi) over one
/// full turn. Only star-shaped loops (single-valued r) are expressible.
pub struct ClosedPath {
    shape: PathShape,
    phi_start: f64,
    r_min: f64,
    r_max: f64,
}

impl fmt::Debug for ClosedPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match &self.shape {
            PathShape::Circle(_) => "circle",
            PathShape::Sampled(_) => "sampled",
            PathShape::Analytic(_) => "analytic",
        };
        f.debug_struct("ClosedPath")
            .field("shape", &tag)
            .field("r_min", &self.r_min)
            .field("r_max", &self.r_max)
            .finish()
    }
}

/// Knots plus slopes for a periodic cubic Hermite interpolant.
struct SampledLoop {
    phi: Vec<f64>,
    r: Vec<f64>,
    slope: Vec<f64>,
}

impl SampledLoop {
    /// Interval index i with phi[i] <= t < phi[i+1]; t already wrapped.
    fn interval(&self, t: f64) -> usize {
        match self.phi.binary_search_by(|p| p.partial_cmp(&t).unwrap()) {
            Ok(i) => i.min(self.phi.len() - 2),
            Err(i) => i.saturating_sub(1).min(self.phi.len() - 2),
        }
    }

    fn value(&self, t: f64) -> f64 {
        let i = self.interval(t);
        let h = self.phi[i + 1] - self.phi[i];
        let s = (t - self.phi[i]) / h;
        let (s2, s3) = (s * s, s * s * s);
        (2.0 * s3 - 3.0 * s2 + 1.0) * self.r[i]
            + (s3 - 2.0 * s2 + s) * h * self.slope[i]
            + (-2.0 * s3 + 3.0 * s2) * self.r[i + 1]
            + (s3 - s2) * h * self.slope[i + 1]
    }

    fn derivative(&self, t: f64) -> f64 {
        let i = self.interval(t);
        let h = self.phi[i + 1] - self.phi[i];
        let s = (t - self.phi[i]) / h;
        let s2 = s * s;
        (6.0 * s2 - 6.0 * s) * (self.r[i] - self.r[i + 1]) / h
            + (3.0 * s2 - 4.0 * s + 1.0) * self.slope[i]
            + (3.0 * s2 - 2.0 * s) * self.slope[i + 1]
    }
}

/// Tolerance for the "phi spans exactly one turn" and "endpoints meet"
/// closure checks on sampled paths.
const CLOSURE_TOL: f64 = 1e-12;

impl ClosedPath {
    pub fn circle(radius: f64) -> Result<Self> {
        if !radius.is_finite() || radius <= 0.0 {
            return Err(Error::NonpositiveRadius(radius));
        }
        Ok(Self {
            shape: PathShape::Circle(radius),
            phi_start: 0.0,
            r_min: radius,
            r_max: radius,
        })
    }

    /// Build from ordered (phi, r) samples spanning exactly one turn,
    /// with matching endpoint radii. Between samples the radius follows
    /// a periodic cubic Hermite curve with centered-difference slopes.
    pub fn from_samples(samples: &[(f64, f64)]) -> Result<Self> {
        if samples.len() < 4 {
            return Err(Error::OpenPath(format!(
                "need at least 4 samples to close a loop, got {}",
                samples.len()
            )));
        }
        let n = samples.len();
        let phi: Vec<f64> = samples.iter().map(|s| s.0).collect();
        let r: Vec<f64> = samples.iter().map(|s| s.1).collect();
        for value in phi.iter().chain(r.iter()) {
            if !value.is_finite() {
                return Err(Error::NonfiniteInput {
                    name: "path sample",
                    value: *value,
                });
            }
        }
        for w in phi.windows(2) {
            if w[1] <= w[0] {
                return Err(Error::OpenPath(format!(
                    "phi must increase strictly, got {} after {}",
                    w[1], w[0]
                )));
            }
        }
        let span = phi[n - 1] - phi[0];
        if (span - TAU).abs() > CLOSURE_TOL {
            return Err(Error::OpenPath(format!(
                "phi span must be 2*pi, got {span}"
            )));
        }
        let r_scale = r.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(1.0);
        if (r[n - 1] - r[0]).abs() > CLOSURE_TOL * r_scale {
            return Err(Error::OpenPath(format!(
                "endpoint radii differ: {} vs {}",
                r[0],
                r[n - 1]
            )));
        }
        if r.iter().any(|&v| v <= 0.0) {
            return Err(Error::DegeneratePath);
        }

        // centered differences with periodic wraparound; the shared
        // endpoint gets one slope so the interpolant closes smoothly
        let mut slope = vec![0.0; n];
        for i in 0..n {
            let (phi_prev, r_prev) = if i == 0 {
                (phi[n - 2] - TAU, r[n - 2])
            } else {
                (phi[i - 1], r[i - 1])
            };
            let (phi_next, r_next) = if i == n - 1 {
                (phi[1] + TAU, r[1])
            } else {
                (phi[i + 1], r[i + 1])
            };
            slope[i] = (r_next - r_prev) / (phi_next - phi_prev);
        }

        let loop_ = SampledLoop { phi, r, slope };
        let (r_min, r_max) = scan_extrema(|t| loop_.value(t), loop_.phi[0], 16 * n);
        if r_min <= 0.0 {
            return Err(Error::DegeneratePath);
        }
        let phi_start = loop_.phi[0];
        Ok(Self {
            shape: PathShape::Sampled(loop_),
            phi_start,
            r_min,
            r_max,
        })
    }

    /// Wrap an analytic radius profile r(phi); evaluated over one turn
    /// starting at phi = 0. The profile must be positive and finite.
    pub fn from_fn<F>(f: F) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        let (r_min, r_max) = scan_extrema(&f, 0.0, 4096);
        if !r_min.is_finite() || !r_max.is_finite() {
            return Err(Error::NonfiniteInput {
                name: "path radius profile",
                value: f64::NAN,
            });
        }
        if r_min <= 0.0 {
            return Err(Error::DegeneratePath);
        }
        Ok(Self {
            shape: PathShape::Analytic(Arc::new(f)),
            phi_start: 0.0,
            r_min,
            r_max,
        })
    }

    /// Radius at any angle; the profile repeats with period 2*pi.
    pub fn radius_at(&self, phi: f64) -> f64 {
        match &self.shape {
            PathShape::Circle(r) => *r,
            PathShape::Sampled(s) => s.value(self.wrap(phi)),
            PathShape::Analytic(f) => f(phi),
        }
    }

    /// dr/dphi at any angle.
    pub fn radius_deriv_at(&self, phi: f64) -> f64 {
        match &self.shape {
            PathShape::Circle(_) => 0.0,
            PathShape::Sampled(s) => s.derivative(self.wrap(phi)),
            PathShape::Analytic(f) => {
                let h = 1e-6;
                (f(phi + h) - f(phi - h)) / (2.0 * h)
            }
        }
    }

    pub fn min_radius(&self) -> f64 {
        self.r_min
    }

    pub fn max_radius(&self) -> f64 {
        self.r_max
    }

    fn wrap(&self, phi: f64) -> f64 {
        let mut t = (phi - self.phi_start).rem_euclid(TAU) + self.phi_start;
        // rem_euclid can land exactly on the far edge after rounding
        if t >= self.phi_start + TAU {
            t = self.phi_start;
        }
        t
    }

    fn domain(&self) -> (f64, f64) {
        (self.phi_start, self.phi_start + TAU)
    }
}

fn scan_extrema<F: Fn(f64) -> f64>(f: F, start: f64, steps: usize) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..=steps {
        let v = f(start + TAU * i as f64 / steps as f64);
        lo = lo.min(v);
        hi = hi.max(v);
    }
    (lo, hi)
}

/// Geometric area enclosed by the loop, (1/2) closed-integral r^2 dphi.
pub fn enclosed_area(path: &ClosedPath) -> f64 {
    let (a, b) = path.domain();
    0.5 * quad::integrate(|phi| path.radius_at(phi).powi(2), a, b, quad::DEFAULT_REL_TOL).value
}

/// Arrival-time asymmetry for counter-propagating signals on an
/// arbitrary loop, by quadrature of the direction-odd metric term.
pub fn path_delta_t(frame: &RotatingFrame, path: &ClosedPath) -> Result<TimingResult> {
    path_delta_t_with_tolerance(frame, path, quad::DEFAULT_REL_TOL)
}

pub fn path_delta_t_with_tolerance(
    frame: &RotatingFrame,
    path: &ClosedPath,
    rel_tol: f64,
) -> Result<TimingResult> {
    let rim = frame.omega().abs() * path.max_radius();
    if rim >= SPEED_OF_LIGHT {
        return Err(Error::SuperluminalRim { rim_speed: rim });
    }
    let c2 = SPEED_OF_LIGHT * SPEED_OF_LIGHT;
    let omega = frame.omega();
    let (a, b) = path.domain();

    // odd part: 2 Omega r^2 / (c^2 gamma^2) per radian
    let delta_t = quad::integrate(
        |phi| {
            let r = path.radius_at(phi);
            let beta = omega * r / SPEED_OF_LIGHT;
            2.0 * omega * r * r / (c2 * (1.0 - beta * beta))
        },
        a,
        b,
        rel_tol,
    )
    .value;

    // even part: mean transit time, with the arc-length contribution of
    // radial motion included
    let t_base = quad::integrate(
        |phi| {
            let r = path.radius_at(phi);
            let dr = path.radius_deriv_at(phi);
            let g2 = 1.0 - (omega * r / SPEED_OF_LIGHT).powi(2);
            (omega * omega * r.powi(4) + c2 * g2 * (dr * dr + r * r)).sqrt() / (c2 * g2)
        },
        a,
        b,
        rel_tol,
    )
    .value;

    let profile = (0..64)
        .map(|i| {
            let r = path.radius_at(a + TAU * i as f64 / 64.0);
            (1.0 - (omega * r / SPEED_OF_LIGHT).powi(2)).sqrt()
        })
        .collect();
    Ok(TimingResult::from_base(t_base, delta_t, profile))
}

/// One row of the audit trace for a timed path: angle, radius, and the
/// per-radian contribution to the arrival-time difference.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct PathTracePoint {
    pub phi: f64,
    pub r: f64,
    pub dt_contribution: f64,
}

/// Uniform-angle dump of the timing integrand, for CSV audits.
pub fn timing_trace(frame: &RotatingFrame, path: &ClosedPath, rows: usize) -> Result<Vec<PathTracePoint>> {
    let rim = frame.omega().abs() * path.max_radius();
    if rim >= SPEED_OF_LIGHT {
        return Err(Error::SuperluminalRim { rim_speed: rim });
    }
    let c2 = SPEED_OF_LIGHT * SPEED_OF_LIGHT;
    let omega = frame.omega();
    let (a, _) = path.domain();
    Ok((0..rows)
        .map(|i| {
            let phi = a + TAU * i as f64 / rows as f64;
            let r = path.radius_at(phi);
            let beta = omega * r / SPEED_OF_LIGHT;
            PathTracePoint {
                phi,
                r,
                dt_contribution: 2.0 * omega * r * r / (c2 * (1.0 - beta * beta)),
            }
        })
        .collect())
}

/// Velocity of a test particle as seen in the rotating frame:
/// (dr/dt, dphi/dt, dz/dt).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Velocity {
    pub r_dot: f64,
    pub phi_dot: f64,
    pub z_dot: f64,
}

impl Velocity {
    pub fn new(r_dot: f64, phi_dot: f64, z_dot: f64) -> Self {
        Self { r_dot, phi_dot, z_dot }
    }

    /// At rest relative to the rotating frame.
    pub fn rest() -> Self {
        Self::new(0.0, 0.0, 0.0)
    }
}

/// Canonical momentum in the orthonormal cylindrical basis, kg m/s.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct MomentumComponents {
    pub p_r: f64,
    pub p_phi: f64,
    pub p_z: f64,
}

/// Canonical momentum at the frame's reference radius. The azimuthal
/// component keeps the frame-dragging term: p_phi = m r (phi_dot + Omega),
/// nonzero even for a particle at rest in the rotating frame.
pub fn canonical_momentum(
    frame: &RotatingFrame,
    particle: &Particle,
    velocity: &Velocity,
) -> MomentumComponents {
    canonical_momentum_at(frame, particle, velocity, frame.radius())
}

/// Same, evaluated at an explicit radius.
pub fn canonical_momentum_at(
    frame: &RotatingFrame,
    particle: &Particle,
    velocity: &Velocity,
    r: f64,
) -> MomentumComponents {
    let m = particle.mass();
    MomentumComponents {
        p_r: m * velocity.r_dot,
        p_phi: m * r * (velocity.phi_dot + frame.omega()),
        p_z: m * velocity.z_dot,
    }
}

/// Phase difference between counter-propagating matter beams on a
/// circle at the frame radius, from the circulation of the canonical
/// momentum: 4 m Omega pi R^2 / hbar, signed by Omega.
pub fn circulation_phase(frame: &RotatingFrame, particle: &Particle) -> f64 {
    use crate::core::constants::HBAR;
    let r = frame.radius();
    4.0 * particle.mass() * frame.omega() * PI * r * r / HBAR
}
