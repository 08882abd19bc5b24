//! Shifts, line offsets and widths for the oracle.
//!
//! For `N ≥ 1` the weight `(2N+1)²y^{4N}` varies on the same scale as the
//! potential, so the shift and the line through the well are found
//! self-consistently: with `t > 0` on the ray `y = -it`,
//!
//! ```text
//! U(t)  = V(-it) - λW(-it) = -L(L+1)/t² - c·t^{10N+3} - λc·t^{4N}
//! U''   = 6L(L+1)/t⁴ + c(10N+3)(10N+2)t^{10N+1} + 4N(4N-1)λc·t^{4N-2}
//! ```
//!
//! (`c = (2N+1)²`, `U''` the second `y`-derivative), `t*` is the stationary
//! point of `U` and `λ` solves `U(t*) + √(U''/2)(2n+1) = 0`. At `N = 0` this is
//! exactly the closed-form harmonic estimate.

use crate::error::{Error, Result};
use crate::rectify::RectifiedProblem;
use crate::spectra::energy_toboggan;

/// Shift for one level together with the local well it was derived from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevelSeed {
    pub energy: f64,
    /// `t*`: the well sits at `y = -it*`.
    pub center: f64,
    /// Harmonic length `(U''/2)^{-1/4}`.
    pub sigma: f64,
}

struct Well {
    t: f64,
    u: f64,
    u2: f64,
}

fn well(problem: &RectifiedProblem, lambda: f64) -> Result<Well> {
    let n = problem.winding_number as i32;
    let ll = problem.centrifugal_strength;
    let c = problem.weight_coefficient;
    let p = (10 * n + 3) as f64;
    let h = |t: f64| {
        2.0 * ll - c * p * t.powi(10 * n + 5) - 4.0 * n as f64 * lambda * c * t.powi(4 * n + 2)
    };
    // one sign change in the coefficients of h: exactly one positive root
    let mut hi = 1.0;
    let mut guard = 0;
    while h(hi) > 0.0 {
        hi *= 2.0;
        guard += 1;
        if guard > 200 {
            return Err(Error::RootSearch("no stationary point of U on the ray".into()));
        }
    }
    let mut lo = 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if h(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let t = 0.5 * (lo + hi);
    let nf = n as f64;
    let u = -ll / (t * t) - c * t.powi(10 * n + 3) - lambda * c * t.powi(4 * n);
    let u2 = 6.0 * ll / t.powi(4)
        + c * p * (p - 1.0) * t.powi(10 * n + 1)
        + 4.0 * nf * (4.0 * nf - 1.0) * lambda * c * t.powi(4 * n - 2);
    Ok(Well { t, u, u2 })
}

fn mismatch(problem: &RectifiedProblem, lambda: f64, level: u32) -> Result<f64> {
    let w = well(problem, lambda)?;
    Ok(w.u + (w.u2.max(0.0) / 2.0).sqrt() * (2 * level + 1) as f64)
}

/// Self-consistent harmonic seed for level `n` of a rectified problem.
pub fn weighted_seed(problem: &RectifiedProblem, ell: f64, level: u32) -> Result<LevelSeed> {
    let guess = energy_toboggan(problem.winding_number, ell, level)?;
    let step = guess.abs().max(1.0);
    let (mut lo, mut hi) = (guess - step, guess + step);
    let mut f_lo = mismatch(problem, lo, level)?;
    let mut f_hi = mismatch(problem, hi, level)?;
    let mut widen = 0;
    while f_lo.signum() == f_hi.signum() {
        widen += 1;
        if widen > 60 {
            return Err(Error::RootSearch(format!(
                "could not bracket the seed for level {level}"
            )));
        }
        let span = hi - lo;
        lo -= span;
        hi += span;
        f_lo = mismatch(problem, lo, level)?;
        f_hi = mismatch(problem, hi, level)?;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = mismatch(problem, mid, level)?;
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    let energy = 0.5 * (lo + hi);
    let w = well(problem, energy)?;
    Ok(LevelSeed {
        energy,
        center: w.t,
        sigma: (w.u2 / 2.0).powf(-0.25),
    })
}
