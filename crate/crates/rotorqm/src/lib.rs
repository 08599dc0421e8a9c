//! Numerics for wave and matter signals in a uniformly rotating frame:
//! classical arrival-time asymmetries on closed loops, quantized shell
//! and cylinder spectra with their rotation couplings, magnetic-flux
//! coupling on the shell, and the interference observables built from
//! them.

pub mod classical;
pub mod core;
pub mod cylinder;
pub mod error;
pub mod quad;
pub mod shell;
pub mod specfun;
pub mod trace;

pub use error::{Error, Result};
