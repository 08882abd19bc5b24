//! Effective potentials of the `(M, α, ℓ)` family, its imaginary cubic member,
//! and the harmonic oscillator used as an exactly solvable benchmark.

use crate::error::{domain, Error, Result};
use crate::{ipow, mul_i, Complex64};
use serde::{Deserialize, Serialize};

/// Parameters of `V(q) = q²(iq)^{2M-2} - α(iq)^{M-1} + ℓ(ℓ+1)/q²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelSpec {
    exponent: f64,
    coupling: f64,
    angular: f64,
}

impl ModelSpec {
    pub fn new(exponent: f64, coupling: f64, angular: f64) -> Result<Self> {
        if !(exponent.is_finite() && exponent > 1.0) {
            return Err(domain(format!("exponent M must exceed 1, got {exponent}")));
        }
        if !(coupling.is_finite() && angular.is_finite() && angular >= 0.0) {
            return Err(domain(format!(
                "need finite α and ℓ ≥ 0, got α = {coupling}, ℓ = {angular}"
            )));
        }
        Ok(Self {
            exponent,
            coupling,
            angular,
        })
    }

    /// `M = 3/2`, `α = 0`: the imaginary cubic oscillator `ℓ(ℓ+1)/q² + iq³`.
    pub fn imaginary_cubic(angular: f64) -> Result<Self> {
        Self::new(1.5, 0.0, angular)
    }

    pub fn exponent(&self) -> f64 {
        self.exponent
    }

    pub fn coupling(&self) -> f64 {
        self.coupling
    }

    pub fn angular(&self) -> f64 {
        self.angular
    }
}

/// Harmonic oscillator `ℓ(ℓ+1)/q² + ω²q²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HoSpec {
    angular: f64,
    frequency: f64,
}

impl HoSpec {
    pub fn new(angular: f64, frequency: f64) -> Result<Self> {
        if !(frequency.is_finite() && frequency > 0.0) {
            return Err(domain(format!("ω must be positive, got {frequency}")));
        }
        if !(angular.is_finite() && angular >= 0.0) {
            return Err(domain(format!("ℓ must be non-negative, got {angular}")));
        }
        Ok(Self { angular, frequency })
    }

    pub fn angular(&self) -> f64 {
        self.angular
    }

    pub fn frequency(&self) -> f64 {
        self.frequency
    }
}

pub(crate) fn centrifugal(ell: f64) -> f64 {
    ell * (ell + 1.0)
}

fn check_nonzero(q: Complex64) -> Result<()> {
    if q == Complex64::new(0.0, 0.0) {
        Err(Error::Singularity(q))
    } else {
        Ok(())
    }
}

fn as_integer(p: f64) -> Option<i32> {
    (p.fract() == 0.0 && p.abs() <= i32::MAX as f64).then_some(p as i32)
}

/// `(iq)^p` on the principal branch of `log(iq)`; the cut is `q = it, t ≥ 0`.
/// Integer `p` is evaluated exactly and never raises a branch error.
fn power_of_iq(q: Complex64, p: f64) -> Result<Complex64> {
    let iq = mul_i(q);
    if let Some(k) = as_integer(p) {
        return Ok(ipow(iq, k));
    }
    if q.re == 0.0 && q.im >= 0.0 {
        return Err(Error::BranchCut(q));
    }
    Ok(iq.powf(p))
}

/// `q²(iq)^{2M-2} - α(iq)^{M-1} + ℓ(ℓ+1)/q²`.
pub fn v_eff(q: Complex64, spec: &ModelSpec) -> Result<Complex64> {
    check_nonzero(q)?;
    let m = spec.exponent;
    let mut v = q * q * power_of_iq(q, 2.0 * m - 2.0)?;
    // a vanishing coupling contributes nothing, even on the cut
    if spec.coupling != 0.0 {
        v -= spec.coupling * power_of_iq(q, m - 1.0)?;
    }
    Ok(v + centrifugal(spec.angular) / (q * q))
}

/// `ℓ(ℓ+1)/z² + i z³`.
pub fn v_eff_cubic(z: Complex64, ell: f64) -> Result<Complex64> {
    check_nonzero(z)?;
    Ok(centrifugal(ell) / (z * z) + mul_i(z * z * z))
}

/// `ℓ(ℓ+1)/q² + ω²q²`.
pub fn v_eff_ho(q: Complex64, spec: &HoSpec) -> Result<Complex64> {
    check_nonzero(q)?;
    let q2 = q * q;
    Ok(centrifugal(spec.angular) / q2 + spec.frequency * spec.frequency * q2)
}

/// Sufficient condition `M + 1 + |2ℓ+1| > α` for a real spectrum.
/// Equality does not qualify.
pub fn reality_condition(spec: &ModelSpec) -> bool {
    spec.exponent + 1.0 + (2.0 * spec.angular + 1.0).abs() > spec.coupling
}
