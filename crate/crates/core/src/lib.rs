//! Large-ℓ bound-state spectra of the imaginary cubic oscillator
//! `-ψ'' + [ℓ(ℓ+1)/z² + i z³] ψ = E ψ` integrated along complex contours that
//! wind `N` times around the singularity at the origin.
//!
//! The crate is organised bottom-up:
//!
//! * [`contours`] samples the straight line `s - iε` and its winding descendants.
//! * [`potentials`] evaluates the effective potentials and the reality condition.
//! * [`rectify`] maps a winding contour onto a straight line, producing a
//!   Sturm–Schrödinger problem with a polynomial weight.
//! * [`largeell`] locates stationary points and Taylor-expands the potentials there.
//! * [`spectra`] holds the closed-form large-ℓ energies, rescaled levels and gaps.
//! * [`oracle`] is an independent finite-difference eigensolver used to check them.
//! * [`cli`] drives everything from the command line.
//!
//! ```
//! use toboggan::spectra::{energy_toboggan, gap};
//!
//! let e0 = energy_toboggan(1, 50.0, 0).unwrap();
//! let g = gap(1, 50.0, 0).unwrap();
//! assert!(e0 < 0.0 && g > 0.0);
//! ```
#![allow(clippy::needless_range_loop)]

pub mod cli;
pub mod contours;
mod error;
pub mod largeell;
pub mod oracle;
pub mod output;
pub mod potentials;
pub mod rectify;
pub mod spectra;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// Imaginary unit.
pub const I: Complex64 = Complex64::new(0.0, 1.0);

/// Multiplication by `i`, done as an exact component swap.
#[inline]
pub(crate) fn mul_i(z: Complex64) -> Complex64 {
    Complex64::new(-z.im, z.re)
}

/// Multiplication by `-i`, done as an exact component swap.
#[inline]
pub(crate) fn mul_neg_i(z: Complex64) -> Complex64 {
    Complex64::new(z.im, -z.re)
}

/// Integer power by repeated squaring. No logarithms, so no branch choice.
pub(crate) fn ipow(z: Complex64, exp: i32) -> Complex64 {
    if exp < 0 {
        return ipow(z, -exp).inv();
    }
    let mut base = z;
    let mut e = exp as u32;
    let mut acc = Complex64::new(1.0, 0.0);
    let mut first = true;
    while e > 0 {
        if e & 1 == 1 {
            acc = if first { base } else { acc * base };
            first = false;
        }
        e >>= 1;
        if e > 0 {
            base = base * base;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ipow_matches_repeated_product() {
        let z = Complex64::new(0.3, -1.7);
        let mut p = Complex64::new(1.0, 0.0);
        for k in 0..=23 {
            let q = ipow(z, k);
            assert!((q - p).norm() <= 1e-13 * p.norm().max(1.0), "k = {k}");
            p *= z;
        }
        assert_eq!(ipow(z, 1), z);
        assert!((ipow(z, -2) * z * z - 1.0).norm() < 1e-14);
    }

    #[test]
    fn i_multiplications_are_exact() {
        let z = Complex64::new(1.25, -3.5);
        assert_eq!(mul_i(z), I * z);
        assert_eq!(mul_neg_i(mul_i(z)), z);
    }
}
