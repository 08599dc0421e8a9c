//! Shared helpers for the integration suites: a tiny deterministic RNG,
//! an arbitrary-precision Bessel oracle that shares no code with the
//! library evaluator, a finite-difference eigenvalue check, and random
//! closed-loop generators with exactly known enclosed areas.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rotorqm::classical::ClosedPath;
use rotorqm::core::constants::HBAR;
use rotorqm::specfun::{bessel_j, ZeroKind};
use std::f64::consts::{PI, TAU};

/// CODATA 2018 proton mass, kg. Kept test-side: the library models only
/// the particles its presets need, but the acceptance run has to show
/// that heavier masses are rejected by the data.
pub const PROTON_MASS: f64 = 1.672_621_923_69e-27;

/// SplitMix64. Deterministic, seedable from one u64, and free of any
/// external crate so the test inputs can never drift with a dependency.
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1).
    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.unit()
    }

    /// Log-uniform over [lo, hi], both strictly positive.
    pub fn log_uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.uniform(lo.ln(), hi.ln()).exp()
    }

    pub fn sign(&mut self) -> f64 {
        if self.next_u64() & 1 == 0 {
            1.0
        } else {
            -1.0
        }
    }

    pub fn index(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }
}

/// |a - b| relative to the larger magnitude (0 when both are 0).
pub fn rel_err(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

// ---------------------------------------------------------------------
// Fixed-point Bessel oracle
// ---------------------------------------------------------------------

/// Binary scale of the fixed-point series. The ascending series loses
/// about 34 decimal digits to cancellation near x = 80 (the deepest zero
/// the acceptance grid reaches); 192 bits keep ~24 digits of headroom
/// past the 1e-10 comparison target.
const ORACLE_SCALE: i64 = 192;

/// Exact conversion: every finite f64 is mant * 2^e for integers.
fn fixed_from(x: f64) -> BigInt {
    let bits = x.to_bits();
    let negative = bits >> 63 == 1;
    let biased = ((bits >> 52) & 0x7ff) as i64;
    let frac = bits & ((1u64 << 52) - 1);
    let (mant, e) = if biased == 0 {
        (frac, -1074)
    } else {
        (frac | (1u64 << 52), biased - 1075)
    };
    let mut v = BigInt::from(mant);
    if negative {
        v = -v;
    }
    let shift = ORACLE_SCALE + e;
    if shift >= 0 {
        v << shift
    } else {
        v >> -shift
    }
}

fn fixed_to_f64(v: &BigInt) -> f64 {
    v.to_f64().expect("fixed-point value fits in f64 range") * (2f64).powi(-(ORACLE_SCALE as i32))
}

fn fixed_mul(a: &BigInt, b: &BigInt) -> BigInt {
    (a * b) >> ORACLE_SCALE
}

/// J_n(x) by the plain ascending series in fixed point, summed until the
/// terms vanish at this precision. Slow and simple on purpose.
pub fn oracle_j(n: u32, x: f64) -> f64 {
    assert!(x >= 0.0, "oracle only evaluates on the nonnegative axis");
    let half_x = fixed_from(0.5 * x);
    let z = fixed_mul(&half_x, &half_x);
    let mut term = BigInt::from(1u32) << ORACLE_SCALE;
    for i in 1..=n as u64 {
        term = fixed_mul(&term, &half_x) / BigInt::from(i);
    }
    let mut sum = term.clone();
    let mut m = 1u64;
    while !term.is_zero() {
        term = fixed_mul(&term, &z) / BigInt::from(m * (m + n as u64));
        if m % 2 == 1 {
            sum -= &term;
        } else {
            sum += &term;
        }
        m += 1;
        assert!(m < 2000, "series failed to terminate at x = {x}");
    }
    fixed_to_f64(&sum)
}

pub fn oracle_j_prime(n: u32, x: f64) -> f64 {
    if n == 0 {
        -oracle_j(1, x)
    } else {
        0.5 * (oracle_j(n - 1, x) - oracle_j(n + 1, x))
    }
}

fn oracle_target(n: u32, kind: ZeroKind, x: f64) -> f64 {
    match kind {
        ZeroKind::Function => oracle_j(n, x),
        ZeroKind::Derivative => oracle_j_prime(n, x),
    }
}

/// The root of J_n (or J_n') nearest `near`, by pure bisection on the
/// fixed-point series. `near` only seeds the bracket: consecutive roots
/// of either target sit more than 2.9 apart, so a +-0.35 window isolates
/// at most one, and the sign-change assertion rejects a bogus seed.
pub fn oracle_zero(n: u32, kind: ZeroKind, near: f64) -> f64 {
    let mut lo = near - 0.35;
    let mut hi = near + 0.35;
    let mut f_lo = oracle_target(n, kind, lo);
    let f_hi = oracle_target(n, kind, hi);
    assert!(
        f_lo * f_hi < 0.0,
        "no sign change around claimed root {near} (order {n}, {kind:?})"
    );
    for _ in 0..52 {
        let mid = 0.5 * (lo + hi);
        let f_mid = oracle_target(n, kind, mid);
        if f_mid == 0.0 {
            return mid;
        }
        if f_lo * f_mid < 0.0 {
            hi = mid;
        } else {
            lo = mid;
            f_lo = f_mid;
        }
    }
    0.5 * (lo + hi)
}

// ---------------------------------------------------------------------
// Finite-difference eigenvalue check
// ---------------------------------------------------------------------

/// L2-relative residual of (H - E) applied to a sampled cylinder mode.
///
/// The radial profile J_n(kappa r) is sampled on `points` uniform nodes
/// over (0, R]; the radial Laplacian uses sixth-order central stencils,
/// the angular term is the analytic n hbar Omega of the mode's sector,
/// and the residual is ||H f - E f|| / ||E f|| over interior nodes.
pub fn fd_mode_residual(
    n: i32,
    kappa: f64,
    radius: f64,
    mass: f64,
    omega: f64,
    energy: f64,
    points: usize,
) -> f64 {
    assert!(points >= 16);
    let h = radius / points as f64;
    let f: Vec<f64> = (1..=points)
        .map(|i| bessel_j(n, kappa * i as f64 * h).expect("in-range evaluation"))
        .collect();
    let half_inv_mass = HBAR * HBAR / (2.0 * mass);
    let nn = n as f64;
    let mut res_sq = 0.0;
    let mut ref_sq = 0.0;
    for i in 3..points - 3 {
        let r = (i as f64 + 1.0) * h;
        let d2 = (2.0 * (f[i - 3] + f[i + 3]) - 27.0 * (f[i - 2] + f[i + 2])
            + 270.0 * (f[i - 1] + f[i + 1])
            - 490.0 * f[i])
            / (180.0 * h * h);
        let d1 = ((f[i + 3] - f[i - 3]) - 9.0 * (f[i + 2] - f[i - 2])
            + 45.0 * (f[i + 1] - f[i - 1]))
            / (60.0 * h);
        let h_f = -half_inv_mass * (d2 + d1 / r - nn * nn * f[i] / (r * r))
            + nn * HBAR * omega * f[i];
        let res = h_f - energy * f[i];
        res_sq += res * res;
        ref_sq += energy * f[i] * (energy * f[i]);
    }
    (res_sq / ref_sq).sqrt()
}

// ---------------------------------------------------------------------
// Random closed loops with exact areas
// ---------------------------------------------------------------------

pub struct StarLoop {
    pub path: ClosedPath,
    /// Exact enclosed area of the profile below.
    pub area: f64,
    /// Upper bound on the loop radius (base plus total ripple).
    pub r_max_bound: f64,
}

/// Smooth loop r(phi) = a + sum_k b_k cos(k phi + theta_k) over the six
/// lowest harmonics with small random amplitudes. Distinct harmonics
/// integrate against each other to zero, so the enclosed area is exactly
/// pi a^2 + (pi/2) sum b_k^2.
pub fn star_loop(rng: &mut SplitMix64, base_radius: f64) -> StarLoop {
    let a = base_radius;
    let harmonics: Vec<(f64, f64, f64)> = (1..=6)
        .map(|k| {
            (
                k as f64,
                a * rng.uniform(-0.06, 0.06),
                rng.uniform(0.0, TAU),
            )
        })
        .collect();
    let terms = harmonics.clone();
    let path = ClosedPath::from_fn(move |phi| {
        a + terms
            .iter()
            .map(|(k, b, th)| b * (k * phi + th).cos())
            .sum::<f64>()
    })
    .expect("ripple budget keeps the loop closed and positive");
    let ripple_sq: f64 = harmonics.iter().map(|(_, b, _)| b * b).sum();
    let ripple_abs: f64 = harmonics.iter().map(|(_, b, _)| b.abs()).sum();
    StarLoop {
        path,
        area: PI * a * a + 0.5 * PI * ripple_sq,
        r_max_bound: a + ripple_abs,
    }
}
