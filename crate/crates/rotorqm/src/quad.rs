//! Composite Gauss-Legendre quadrature with panel doubling.
//!
//! One fixed 32-point rule per panel; the panel count doubles until the
//! integral stops moving at the requested relative tolerance. Nodes are
//! generated once by Newton iteration on the Legendre polynomial, so the
//! whole thing is deterministic and dependency-free.

use std::sync::OnceLock;

/// Default relative tolerance for the doubling loop.
pub const DEFAULT_REL_TOL: f64 = 1e-12;

const N: usize = 32;
const MAX_DOUBLINGS: u32 = 12;

/// Outcome of an adaptive integration.
#[derive(Debug, Clone, Copy)]
pub struct Quadrature {
    pub value: f64,
    /// Panels used by the last pass.
    pub panels: u32,
    /// Whether the doubling loop met the tolerance before hitting its cap.
    pub converged: bool,
}

fn nodes() -> &'static [(f64, f64); N] {
    static NODES: OnceLock<[(f64, f64); N]> = OnceLock::new();
    NODES.get_or_init(|| {
        let mut out = [(0.0, 0.0); N];
        let n = N as f64;
        for i in 0..N / 2 {
            // Chebyshev-flavored starting guess, then Newton on P_N.
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(x);
                dp = d;
                let step = p / d;
                x -= step;
                if step.abs() < 1e-16 {
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            out[i] = (-x, w);
            out[N - 1 - i] = (x, w);
        }
        out
    })
}

/// P_N(x) and its derivative by the three-term recurrence.
fn legendre(x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=N {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = (N as f64) * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Single fixed-panel pass over [a, b] split into `panels` pieces.
fn pass<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, panels: u32) -> f64 {
    let h = (b - a) / panels as f64;
    let mut total = 0.0;
    for p in 0..panels {
        let lo = a + h * p as f64;
        let mid = lo + 0.5 * h;
        let half = 0.5 * h;
        let mut acc = 0.0;
        for &(x, w) in nodes() {
            acc += w * f(mid + half * x);
        }
        total += acc * half;
    }
    total
}

/// Integrate `f` over [a, b], doubling panels until the relative change
/// drops below `rel_tol` (or the doubling cap is hit).
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, rel_tol: f64) -> Quadrature {
    let mut panels = 1u32;
    let mut prev = pass(&f, a, b, panels);
    for _ in 0..MAX_DOUBLINGS {
        panels *= 2;
        let next = pass(&f, a, b, panels);
        let scale = next.abs().max(prev.abs()).max(f64::MIN_POSITIVE);
        if (next - prev).abs() <= rel_tol * scale {
            return Quadrature { value: next, panels, converged: true };
        }
        prev = next;
    }
    Quadrature { value: prev, panels, converged: false }
}
