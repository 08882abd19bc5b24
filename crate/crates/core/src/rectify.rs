//! Rectification of a winding contour.
//!
//! Substituting `z = -i(iy)^{2N+1}` and `φ(z) = y^N ψ(y)` turns the tobogganic
//! equation into a Sturm–Schrödinger problem on the straight line `y = s - iε`:
//!
//! ```text
//! -ψ'' + [L(L+1)/y² + i(-1)^N (2N+1)² y^{10N+3}] ψ = E (2N+1)² y^{4N} ψ
//! ```
//!
//! with `L = (2N+1)(ℓ + 1/2) - 1/2`. Every power is an integer, so nothing in
//! this module needs a branch cut.

use crate::error::{Error, Result};
use crate::largeell::{PowerLawPotential, PowerTerm};
use crate::potentials::centrifugal;
use crate::{ipow, Complex64};
use serde::{Deserialize, Serialize};

/// `(2N+1)(ℓ + 1/2) - 1/2`, computed as `(2N+1)ℓ + N` so that `N = 0` is the identity.
pub fn angular_map(winding_number: u32, ell: f64) -> f64 {
    (2 * winding_number + 1) as f64 * ell + winding_number as f64
}

/// Coefficients of the rectified Sturm–Schrödinger equation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RectifiedProblem {
    pub winding_number: u32,
    pub angular_rectified: f64,
    pub centrifugal_strength: f64,
    pub potential_coefficient: Complex64,
    pub potential_exponent: u32,
    pub weight_coefficient: f64,
    pub weight_exponent: u32,
}

pub fn build_rectified(winding_number: u32, ell: f64) -> RectifiedProblem {
    let n = winding_number;
    let big_l = angular_map(n, ell);
    let odd_sq = ((2 * n + 1) * (2 * n + 1)) as f64;
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    RectifiedProblem {
        winding_number: n,
        angular_rectified: big_l,
        centrifugal_strength: centrifugal(big_l),
        potential_coefficient: Complex64::new(0.0, sign * odd_sq),
        potential_exponent: 10 * n + 3,
        weight_coefficient: odd_sq,
        weight_exponent: 4 * n,
    }
}

impl RectifiedProblem {
    /// `(2N+1)² y^{4N}`.
    pub fn weight(&self, y: Complex64) -> Complex64 {
        self.weight_coefficient * ipow(y, self.weight_exponent as i32)
    }

    /// `L(L+1)/y² + i(-1)^N (2N+1)² y^{10N+3}`.
    pub fn potential(&self, y: Complex64) -> Result<Complex64> {
        if y == Complex64::new(0.0, 0.0) {
            return Err(Error::Singularity(y));
        }
        let tail = self.potential_coefficient * ipow(y, self.potential_exponent as i32);
        Ok(self.centrifugal_strength / (y * y) + tail)
    }

    pub fn potential_terms(&self) -> PowerLawPotential {
        PowerLawPotential::new(vec![
            PowerTerm::new(Complex64::new(self.centrifugal_strength, 0.0), -2),
            PowerTerm::new(self.potential_coefficient, self.potential_exponent as i32),
        ])
    }

    pub fn weight_terms(&self) -> PowerLawPotential {
        PowerLawPotential::new(vec![PowerTerm::new(
            Complex64::new(self.weight_coefficient, 0.0),
            self.weight_exponent as i32,
        )])
    }
}

/// Free-function form of [`RectifiedProblem::weight`].
pub fn weight(problem: &RectifiedProblem, y: Complex64) -> Complex64 {
    problem.weight(y)
}

/// Free-function form of [`RectifiedProblem::potential`].
pub fn rectified_potential(problem: &RectifiedProblem, y: Complex64) -> Result<Complex64> {
    problem.potential(y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potentials::v_eff_cubic;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn angular_map_examples() {
        for ell in [0.0, 0.1, 4.0, 17.3, 1e6] {
            assert_eq!(angular_map(0, ell), ell);
        }
        assert_eq!(angular_map(1, 1.0), 4.0);
        assert_eq!(angular_map(2, 0.0), 2.0);
    }

    #[test]
    fn build_examples() {
        let p = build_rectified(0, 2.0);
        assert_eq!(p.angular_rectified, 2.0);
        assert_eq!(p.potential_coefficient, c(0.0, 1.0));
        assert_eq!((p.potential_exponent, p.weight_exponent), (3, 0));
        assert_eq!(p.weight_coefficient, 1.0);

        let p = build_rectified(1, 1.0);
        assert_eq!(p.angular_rectified, 4.0);
        assert_eq!(p.centrifugal_strength, 20.0);
        assert_eq!(p.potential_coefficient, c(0.0, -9.0));
        assert_eq!((p.potential_exponent, p.weight_exponent), (13, 4));
        assert_eq!(p.weight_coefficient, 9.0);

        let p = build_rectified(2, 0.0);
        assert_eq!(p.angular_rectified, 2.0);
        assert_eq!(p.potential_coefficient, c(0.0, 25.0));
        assert_eq!((p.potential_exponent, p.weight_exponent), (23, 8));
        assert_eq!(p.weight_coefficient, 25.0);
    }

    #[test]
    fn weight_examples() {
        let p0 = build_rectified(0, 3.0);
        assert_eq!(weight(&p0, c(0.3, -7.0)), c(1.0, 0.0));
        let p1 = build_rectified(1, 1.0);
        assert_eq!(weight(&p1, c(0.0, -1.0)), c(9.0, 0.0));
        assert!((weight(&p1, c(1.0, -1.0)) - c(-36.0, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn potential_examples() {
        let p = build_rectified(0, 0.0);
        assert!((rectified_potential(&p, c(0.0, -1.0)).unwrap() - c(-1.0, 0.0)).norm() < 1e-15);
        let p = build_rectified(1, 1.0);
        assert!((rectified_potential(&p, c(1.0, 0.0)).unwrap() - c(20.0, -9.0)).norm() < 1e-13);
        assert_eq!(rectified_potential(&p, c(0.0, 0.0)), Err(Error::Singularity(c(0.0, 0.0))));
        for &(y, ell) in &[(c(0.4, -1.2), 3.0), (c(-2.0, -0.1), 0.5)] {
            assert_eq!(
                rectified_potential(&build_rectified(0, ell), y).unwrap(),
                v_eff_cubic(y, ell).unwrap()
            );
        }
    }

    #[test]
    fn exponent_ladder() {
        for n in 0..6 {
            let (a, b) = (build_rectified(n, 2.5), build_rectified(n + 1, 2.5));
            assert_eq!(b.potential_exponent - a.potential_exponent, 10);
            assert_eq!(b.weight_exponent - a.weight_exponent, 4);
        }
    }
}
