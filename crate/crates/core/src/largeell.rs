//! Stationary points, local Taylor expansions and rescaling of the
//! effective potentials in the large-ℓ regime.
//!
//! The potentials here are all finite sums of power laws `c·yᵖ` with integer
//! `p`, so every derivative is taken analytically term by term.

use crate::error::{domain, Error, Result};
use crate::potentials::{centrifugal, HoSpec};
use crate::rectify::{build_rectified, RectifiedProblem};
use crate::{ipow, Complex64};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// `(2ℓ(ℓ+1)/3)^{1/5}`, the radius of the stationary pentagon of
/// `ℓ(ℓ+1)/q² + iq³`.
pub fn tau_cubic(ell: f64) -> Result<f64> {
    let ll = centrifugal(ell);
    if !(ll.is_finite() && ll > 0.0) {
        return Err(domain(format!("need ℓ(ℓ+1) > 0, got ℓ = {ell}")));
    }
    Ok((2.0 * ll / 3.0).powf(1.0 / 5.0))
}

/// `(2L(L+1) / ((2N+1)²(10N+3)))^{1/(10N+5)}` with `L = (2N+1)(ℓ+1/2) - 1/2`.
pub fn tau_general(winding_number: u32, ell: f64) -> Result<f64> {
    let n = winding_number;
    let big_l = crate::rectify::angular_map(n, ell);
    let ll = centrifugal(big_l);
    if !(ll.is_finite() && ll > 0.0) {
        return Err(domain(format!(
            "need L(L+1) > 0, got L = {big_l} (N = {n}, ℓ = {ell})"
        )));
    }
    let odd_sq = ((2 * n + 1) * (2 * n + 1)) as f64;
    let denom = odd_sq * (10 * n + 3) as f64;
    Ok((2.0 * ll / denom).powf(1.0 / (10 * n + 5) as f64))
}

/// `c·yᵖ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerTerm {
    pub coefficient: Complex64,
    pub exponent: i32,
}

impl PowerTerm {
    pub fn new(coefficient: Complex64, exponent: i32) -> Self {
        Self {
            coefficient,
            exponent,
        }
    }

    /// k-th derivative `c·p(p-1)…(p-k+1)·y^{p-k}`.
    pub fn derivative(&self, y: Complex64, k: u32) -> Complex64 {
        let falling: f64 = (0..k as i32).map(|j| (self.exponent - j) as f64).product();
        if falling == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        self.coefficient * falling * ipow(y, self.exponent - k as i32)
    }
}

/// A finite sum of [`PowerTerm`]s.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerLawPotential {
    pub terms: Vec<PowerTerm>,
}

impl PowerLawPotential {
    pub fn new(terms: Vec<PowerTerm>) -> Self {
        Self { terms }
    }

    /// `ℓ(ℓ+1)/q² + ω²q²`.
    pub fn harmonic_oscillator(spec: &HoSpec) -> Self {
        let w2 = spec.frequency() * spec.frequency();
        Self::new(vec![
            PowerTerm::new(Complex64::new(centrifugal(spec.angular()), 0.0), -2),
            PowerTerm::new(Complex64::new(w2, 0.0), 2),
        ])
    }

    pub fn derivative(&self, y: Complex64, k: u32) -> Complex64 {
        self.terms.iter().map(|t| t.derivative(y, k)).sum()
    }

    pub fn value(&self, y: Complex64) -> Complex64 {
        self.derivative(y, 0)
    }

    fn max_exponent(&self) -> i32 {
        self.terms.iter().map(|t| t.exponent).max().unwrap_or(0)
    }
}

/// Stationary points of an effective potential. `roots[0]` is the selected
/// point `-iτ`; the rest follow counter-clockwise.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StationaryFamily {
    pub roots: Vec<Complex64>,
    pub tau: f64,
    /// 1-based index of the root used for spectra. Always 1.
    pub selected_index: usize,
}

impl StationaryFamily {
    pub fn selected(&self) -> Complex64 {
        self.roots[self.selected_index - 1]
    }
}

/// All `10N+5` roots of `∂_y V = 0` for the rectified potential,
/// `T_j = -iτ·exp(2πi(j-1)/(10N+5))`.
pub fn stationary_points(problem: &RectifiedProblem) -> Result<StationaryFamily> {
    let n = problem.winding_number;
    let ll = problem.centrifugal_strength;
    if !(ll.is_finite() && ll > 0.0) {
        return Err(domain(format!(
            "degenerate rectified problem: L(L+1) = {ll} must be positive"
        )));
    }
    let odd_sq = problem.weight_coefficient;
    let tau = (2.0 * ll / (odd_sq * (10 * n + 3) as f64)).powf(1.0 / (10 * n + 5) as f64);
    let count = (10 * n + 5) as usize;
    let roots = (0..count)
        .map(|j| Complex64::from_polar(tau, -PI / 2.0 + 2.0 * PI * j as f64 / count as f64))
        .map(|t| if t.re.abs() < 1e-15 * tau { Complex64::new(0.0, t.im) } else { t })
        .collect();
    Ok(StationaryFamily {
        roots,
        tau,
        selected_index: 1,
    })
}

/// The four roots `Q_j = (-i)^j τ` of `ℓ(ℓ+1) = ω²Q⁴`, `τ = (ℓ(ℓ+1))^{1/4}/ω^{1/2}`.
pub fn stationary_points_ho(spec: &HoSpec) -> Result<StationaryFamily> {
    let ll = centrifugal(spec.angular());
    if ll.is_nan() || ll <= 0.0 {
        return Err(domain(format!(
            "need ℓ(ℓ+1) > 0 for the oscillator, got ℓ = {}",
            spec.angular()
        )));
    }
    let tau = ll.powf(0.25) / spec.frequency().sqrt();
    let minus_i = Complex64::new(0.0, -1.0);
    let roots = (1..=4).map(|j| ipow(minus_i, j) * tau).collect();
    Ok(StationaryFamily {
        roots,
        tau,
        selected_index: 1,
    })
}

/// `V(T + ξ) ≈ value + harmonic·ξ² + cubic·ξ³` about a stationary point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TaylorExpansion {
    pub base_point: Complex64,
    pub value: Complex64,
    /// `V''(T)/2`
    pub harmonic: Complex64,
    /// `V'''(T)/6`
    pub cubic: Complex64,
    /// Power of `τ` carried by the first neglected (quartic) term when the
    /// power laws balance at `T`.
    pub error_order: i32,
}

pub fn taylor_at(potential: &PowerLawPotential, base_point: Complex64) -> Result<TaylorExpansion> {
    if base_point == Complex64::new(0.0, 0.0) {
        return Err(Error::Singularity(base_point));
    }
    Ok(TaylorExpansion {
        base_point,
        value: potential.value(base_point),
        harmonic: potential.derivative(base_point, 2) / 2.0,
        cubic: potential.derivative(base_point, 3) / 6.0,
        error_order: potential.max_exponent() - 4,
    })
}

/// Rectified problem, its stationary family and the expansion about `-iτ`.
pub fn expand_rectified(
    winding_number: u32,
    ell: f64,
) -> Result<(RectifiedProblem, StationaryFamily, TaylorExpansion)> {
    let problem = build_rectified(winding_number, ell);
    let family = stationary_points(&problem)?;
    let expansion = taylor_at(&problem.potential_terms(), family.selected())?;
    Ok((problem, family, expansion))
}

/// Oscillator expansion about `-iτ`.
pub fn expand_ho(spec: &HoSpec) -> Result<(StationaryFamily, TaylorExpansion)> {
    let family = stationary_points_ho(spec)?;
    let expansion = taylor_at(&PowerLawPotential::harmonic_oscillator(spec), family.selected())?;
    Ok((family, expansion))
}

/// `ω_(N) = (2N+1)·√((10N+3)(10N+5)/2)`.
pub fn omega_n(winding_number: u32) -> f64 {
    let n = winding_number as f64;
    (2.0 * n + 1.0) * ((10.0 * n + 3.0) * (10.0 * n + 5.0) / 2.0).sqrt()
}

/// Cubic Taylor coefficient at `-iτ` divided by `τ^{10N}`.
pub fn mu_coefficient(winding_number: u32, ell: f64) -> Result<Complex64> {
    let (_, family, expansion) = expand_rectified(winding_number, ell)?;
    Ok(expansion.cubic / family.tau.powi(10 * winding_number as i32))
}

/// The expansion after `ξ → σξ` and multiplication by `σ²`,
/// `σ = τ^{-(10N+1)/4}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RescaledForm {
    pub sigma: f64,
    /// `σ⁴·V''/2`; equals `ω²_(N)` on the exact root condition.
    pub harmonic_rescaled: f64,
    /// `σ⁵·V'''/6`
    pub cubic_rescaled: Complex64,
    /// `σ²·V(T)`
    pub constant_rescaled: f64,
    /// `false` when `τ ≤ 1`: the expansion is formally valid but `σ` is not small.
    pub in_asymptotic_regime: bool,
}

pub fn rescale(expansion: &TaylorExpansion, winding_number: u32, tau: f64) -> Result<RescaledForm> {
    if !(tau.is_finite() && tau > 0.0) {
        return Err(domain(format!("τ must be positive, got {tau}")));
    }
    let sigma = tau.powf(-((10 * winding_number + 1) as f64) / 4.0);
    let real_part = |z: Complex64| -> Result<f64> {
        let relative = z.im.abs() / z.norm().max(f64::MIN_POSITIVE);
        if relative > 1e-12 {
            Err(Error::NonReal { value: z, relative })
        } else {
            Ok(z.re)
        }
    };
    let s2 = sigma * sigma;
    Ok(RescaledForm {
        sigma,
        harmonic_rescaled: real_part(expansion.harmonic)? * s2 * s2,
        cubic_rescaled: expansion.cubic * s2 * s2 * sigma,
        constant_rescaled: real_part(expansion.value)? * s2,
        in_asymptotic_regime: tau > 1.0,
    })
}

/// `p` in the `τ^{-p}` decay of the rescaled cubic term, `(10N+5)/4`.
pub fn anharmonic_correction_exponent(winding_number: u32) -> f64 {
    (10 * winding_number + 5) as f64 / 4.0
}

/// `p` in the `τ^{-p}` decay estimated for the first non-constant weight
/// correction, `(14N+7)/4`.
pub fn weight_correction_exponent(winding_number: u32) -> f64 {
    (14 * winding_number + 7) as f64 / 4.0
}
