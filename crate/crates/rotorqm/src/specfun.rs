//! Bessel functions of the first kind and their zero tables.
//!
//! Cylinder modes need J_n, J_n' and the positive roots j_{n,s} of either
//! one. Evaluation uses the ascending power series for x <= 12, where the
//! largest series term stays small enough that f64 cancellation is
//! harmless, and Miller's backward recurrence with the even-order
//! normalization sum everywhere else. Roots come from a unit-step scan
//! for a sign change (consecutive roots of J_n or J_n' are separated by
//! more than 2.9, so a step of 1 cannot jump over one), narrowed by
//! bisection and polished by Newton. Everything is plain f64 and
//! deterministic: the same inputs always give bit-identical outputs.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported |n| for the public entry points.
pub const MAX_ORDER: i32 = 50;
/// Largest supported root index s.
pub const MAX_ZERO_INDEX: u32 = 200;

/// Default root tolerance (relative, on the abscissa).
pub const DEFAULT_ROOT_TOL: f64 = 1e-13;

const SERIES_CUTOFF: f64 = 12.0;

/// J_n(x) for |n| <= 50 and x >= 0.
///
/// Absolute error stays below 1e-12 for x <= 100; larger arguments are
/// evaluated with the same recurrence and degrade gracefully.
pub fn bessel_j(n: i32, x: f64) -> Result<f64> {
    check_order(n)?;
    check_argument(x)?;
    let v = eval_j(n.unsigned_abs(), x);
    Ok(reflect(n, v))
}

/// dJ_n/dx for |n| <= 50 and x >= 0, from the neighbor identity
/// J_n' = (J_{n-1} - J_{n+1}) / 2.
pub fn bessel_j_prime(n: i32, x: f64) -> Result<f64> {
    check_order(n)?;
    check_argument(x)?;
    let v = eval_j_prime(n.unsigned_abs(), x);
    Ok(reflect(n, v))
}

/// s-th positive root of J_n, 1-based.
pub fn bessel_zero(n: i32, s: u32) -> Result<f64> {
    bessel_zero_with_tol(n, s, DEFAULT_ROOT_TOL)
}

/// s-th positive root of J_n', 1-based; x = 0 is never counted as a root.
pub fn bessel_prime_zero(n: i32, s: u32) -> Result<f64> {
    bessel_prime_zero_with_tol(n, s, DEFAULT_ROOT_TOL)
}

pub fn bessel_zero_with_tol(n: i32, s: u32, tol: f64) -> Result<f64> {
    let t = BesselZeroTable::build_with_tol(n, ZeroKind::Function, s, tol)?;
    Ok(t.root(s).expect("table holds s roots"))
}

pub fn bessel_prime_zero_with_tol(n: i32, s: u32, tol: f64) -> Result<f64> {
    let t = BesselZeroTable::build_with_tol(n, ZeroKind::Derivative, s, tol)?;
    Ok(t.root(s).expect("table holds s roots"))
}

/// Which function the roots belong to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ZeroKind {
    Function,
    Derivative,
}

/// Roots 1..=s_max of J_n or J_n' for one order, found in a single scan.
///
/// Construction verifies that every polished root still brackets a sign
/// change of the target, so a table can be trusted blindly afterwards.
#[derive(Debug, Clone, Serialize)]
pub struct BesselZeroTable {
    n: i32,
    kind: ZeroKind,
    roots: Vec<f64>,
}

impl BesselZeroTable {
    pub fn build(n: i32, kind: ZeroKind, s_max: u32) -> Result<Self> {
        Self::build_with_tol(n, kind, s_max, DEFAULT_ROOT_TOL)
    }

    pub fn build_with_tol(n: i32, kind: ZeroKind, s_max: u32, tol: f64) -> Result<Self> {
        check_order(n)?;
        if s_max == 0 || s_max > MAX_ZERO_INDEX {
            return Err(Error::IndexOutOfRange(s_max as i64));
        }
        // roots are even in n, so work with |n|
        let m = n.unsigned_abs();
        let roots = collect_roots(m, kind, s_max, tol);
        for &r in &roots {
            let h = 1e-6 * r.max(1.0);
            let lo = target(m, kind, r - h);
            let hi = target(m, kind, r + h);
            assert!(
                lo * hi < 0.0,
                "root {r} of order {m} lost its sign change during polish"
            );
        }
        Ok(Self { n, kind, roots })
    }

    pub fn order(&self) -> i32 {
        self.n
    }

    pub fn kind(&self) -> ZeroKind {
        self.kind
    }

    /// Root number s (1-based), if the table extends that far.
    pub fn root(&self, s: u32) -> Option<f64> {
        if s == 0 {
            return None;
        }
        self.roots.get(s as usize - 1).copied()
    }

    pub fn roots(&self) -> &[f64] {
        &self.roots
    }
}

/// Read-mostly memoization of zero tables keyed by (|n|, kind).
///
/// Behavior is identical to building tables directly; the cache only
/// saves the repeated scans when spectra sweep many (n, s) pairs.
#[derive(Debug, Default)]
pub struct ZeroCache {
    tables: RwLock<HashMap<(u32, ZeroKind), Arc<BesselZeroTable>>>,
}

impl ZeroCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// Table for (n, kind) holding at least `s_max` roots.
    pub fn table(&self, n: i32, kind: ZeroKind, s_max: u32) -> Result<Arc<BesselZeroTable>> {
        check_order(n)?;
        let key = (n.unsigned_abs(), kind);
        if let Some(t) = self.tables.read().unwrap().get(&key) {
            if t.roots.len() >= s_max as usize {
                return Ok(Arc::clone(t));
            }
        }
        let fresh = Arc::new(BesselZeroTable::build(key.0 as i32, kind, s_max)?);
        self.tables.write().unwrap().insert(key, Arc::clone(&fresh));
        Ok(fresh)
    }

    pub fn zero(&self, n: i32, kind: ZeroKind, s: u32) -> Result<f64> {
        if s == 0 || s > MAX_ZERO_INDEX {
            return Err(Error::IndexOutOfRange(s as i64));
        }
        let t = self.table(n, kind, s)?;
        Ok(t.root(s).expect("cache table holds s roots"))
    }
}

fn check_order(n: i32) -> Result<()> {
    if n.abs() > MAX_ORDER {
        return Err(Error::OrderOutOfRange(n));
    }
    Ok(())
}

fn check_argument(x: f64) -> Result<()> {
    if !(x >= 0.0) {
        return Err(Error::NegativeArgument(x));
    }
    Ok(())
}

/// J_{-n} = (-1)^n J_n, and the same parity rule for the derivative.
fn reflect(n: i32, v: f64) -> f64 {
    if n < 0 && n % 2 != 0 {
        -v
    } else {
        v
    }
}

/// J_n(x) for n >= 0, x >= 0; internal, no order cap.
fn eval_j(n: u32, x: f64) -> f64 {
    if x == 0.0 {
        return if n == 0 { 1.0 } else { 0.0 };
    }
    if x <= SERIES_CUTOFF {
        series_j(n, x)
    } else {
        miller_j(n, x)
    }
}

fn eval_j_prime(n: u32, x: f64) -> f64 {
    if n == 0 {
        return -eval_j(1, x);
    }
    if x == 0.0 {
        // from the series: only n = 1 has a nonzero slope at the origin
        return if n == 1 { 0.5 } else { 0.0 };
    }
    0.5 * (eval_j(n - 1, x) - eval_j(n + 1, x))
}

/// Ascending power series, summed until the terms drop 18 orders below
/// the largest one seen. Below x = 12 the peak term is at most a few
/// thousand, so the f64 cancellation loss stays under the 1e-12 budget.
fn series_j(n: u32, x: f64) -> f64 {
    let half = 0.5 * x;
    let mut term = 1.0f64;
    for k in 1..=n {
        term *= half / k as f64;
    }
    let z = half * half;
    let mut sum = term;
    let mut peak = term.abs();
    for m in 1..500u32 {
        term *= -z / (m as f64 * (m + n) as f64);
        sum += term;
        let mag = term.abs();
        if mag > peak {
            peak = mag;
        }
        if mag < peak * 1e-18 && m as f64 > half {
            break;
        }
    }
    sum
}

/// Miller backward recurrence, normalized with J_0 + 2 J_2 + 2 J_4 + ... = 1.
///
/// The start order sits 60 above max(n, x); every downward step above the
/// turning point multiplies the minimal solution by at least 2, so the
/// seeding error is damped by ~2^60 before it reaches the orders we read.
fn miller_j(n: u32, x: f64) -> f64 {
    let top = {
        let base = x.max(n as f64).ceil() as usize + 60;
        base + base % 2
    };
    let mut above = 0.0f64; // J_{k+1}, unnormalized
    let mut here = 1e-30f64; // J_k
    let mut norm = 2.0 * here; // top is even and > 0
    let mut wanted = 0.0f64;
    for k in (1..=top).rev() {
        let below = (2.0 * k as f64 / x) * here - above;
        above = here;
        here = below;
        let idx = k - 1;
        if idx == n as usize {
            wanted = here;
        }
        if idx > 0 && idx % 2 == 0 {
            norm += 2.0 * here;
        }
        if here.abs() > 1e250 {
            here *= 1e-250;
            above *= 1e-250;
            norm *= 1e-250;
            wanted *= 1e-250;
        }
    }
    norm += here; // here is now J_0
    wanted / norm
}

/// Target function whose roots we hunt.
fn target(n: u32, kind: ZeroKind, x: f64) -> f64 {
    match kind {
        ZeroKind::Function => eval_j(n, x),
        ZeroKind::Derivative => eval_j_prime(n, x),
    }
}

/// Slope of the target, for the Newton polish. J'' comes from the
/// defining equation J'' = -J'/x + (n^2/x^2 - 1) J.
fn target_slope(n: u32, kind: ZeroKind, x: f64) -> f64 {
    match kind {
        ZeroKind::Function => eval_j_prime(n, x),
        ZeroKind::Derivative => {
            let nn = n as f64 * n as f64;
            -eval_j_prime(n, x) / x + (nn / (x * x) - 1.0) * eval_j(n, x)
        }
    }
}

/// Walk x upward in unit steps, refining every sign change until s_max
/// roots are in hand. J_n and J_n' are strictly positive on (0, first
/// root) for n >= 1, and J_0 and J_0' are nonzero just right of 0, so
/// starting barely above the origin misses nothing and never counts x = 0.
fn collect_roots(n: u32, kind: ZeroKind, s_max: u32, tol: f64) -> Vec<f64> {
    let mut roots = Vec::with_capacity(s_max as usize);
    let mut x = 1e-3;
    let mut fx = target(n, kind, x);
    // an exact zero at the probe point would confuse the sign test
    while fx == 0.0 {
        x += 1e-3;
        fx = target(n, kind, x);
    }
    while roots.len() < s_max as usize {
        let x_next = x + 1.0;
        let f_next = target(n, kind, x_next);
        if f_next == 0.0 {
            // landed on a root up to f64: bracket it symmetrically
            roots.push(refine(n, kind, x_next - 1e-9, x_next + 1e-9, tol));
            x = x_next + 1e-6;
            fx = target(n, kind, x);
            continue;
        }
        if fx * f_next < 0.0 {
            roots.push(refine(n, kind, x, x_next, tol));
        }
        x = x_next;
        fx = f_next;
    }
    roots
}

/// Bisection to a loose bracket, then Newton with a bracket guard.
fn refine(n: u32, kind: ZeroKind, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let mut f_lo = target(n, kind, lo);
    for _ in 0..20 {
        let mid = 0.5 * (lo + hi);
        let f_mid = target(n, kind, mid);
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
    let mut x = 0.5 * (lo + hi);
    for _ in 0..12 {
        let f = target(n, kind, x);
        let d = target_slope(n, kind, x);
        if d == 0.0 {
            break;
        }
        let step = f / d;
        let next = x - step;
        if !(lo..=hi).contains(&next) {
            break;
        }
        x = next;
        if step.abs() <= tol * x.abs() {
            break;
        }
    }
    x
}
