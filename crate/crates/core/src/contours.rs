//! Straight and winding integration contours.
//!
//! The straight line is `q⁽⁰⁾(s) = s - iε`. Its winding descendants are
//! `q⁽ᴺ⁾(s) = -i [i (s - iε)]^{2N+1}`, which encircle the origin `N` times
//! and pass through `N + 1` sheets of the wavefunction's Riemann surface.

use crate::error::{domain, Result};
use crate::output::{Cell, Table};
use crate::{ipow, largeell, mul_i, mul_neg_i, Complex64};
use serde::{Deserialize, Serialize};

/// A contour `q⁽ᴺ⁾(s)` with winding number `N` and downward shift `ε > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WindingContour {
    winding_number: u32,
    shift: f64,
}

impl WindingContour {
    pub fn new(winding_number: u32, shift: f64) -> Result<Self> {
        check_shift(shift)?;
        Ok(Self {
            winding_number,
            shift,
        })
    }

    /// Contour whose rectified line passes through the selected stationary
    /// point `-iτ`, i.e. `ε = τ(N, ℓ)`.
    pub fn through_stationary_point(winding_number: u32, ell: f64) -> Result<Self> {
        let tau = largeell::tau_general(winding_number, ell)?;
        Self::new(winding_number, tau)
    }

    pub fn winding_number(&self) -> u32 {
        self.winding_number
    }

    pub fn shift(&self) -> f64 {
        self.shift
    }

    pub fn point(&self, s: f64) -> Complex64 {
        winding_unchecked(self.winding_number, self.shift, s)
    }
}

fn check_shift(shift: f64) -> Result<()> {
    if shift.is_finite() && shift > 0.0 {
        Ok(())
    } else {
        Err(domain(format!("contour shift must be positive, got {shift}")))
    }
}

/// `s - iε`.
pub fn straight_path(shift: f64, s: f64) -> Result<Complex64> {
    check_shift(shift)?;
    Ok(Complex64::new(s, -shift))
}

/// `-i [i (s - iε)]^{2N+1}`, evaluated as an exact odd integer power.
pub fn winding_path(winding_number: u32, shift: f64, s: f64) -> Result<Complex64> {
    check_shift(shift)?;
    Ok(winding_unchecked(winding_number, shift, s))
}

fn winding_unchecked(winding_number: u32, shift: f64, s: f64) -> Complex64 {
    let w = mul_i(Complex64::new(s, -shift));
    mul_neg_i(ipow(w, 2 * winding_number as i32 + 1))
}

/// One sample of a contour.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PathPoint {
    pub s: f64,
    pub q: Complex64,
}

/// `count` equally spaced samples over `[s_min, s_max]`, endpoints included.
pub fn sample_path(
    contour: &WindingContour,
    s_min: f64,
    s_max: f64,
    count: usize,
) -> Result<Vec<PathPoint>> {
    if count < 2 {
        return Err(domain(format!("need at least 2 samples, got {count}")));
    }
    if !(s_min.is_finite() && s_max.is_finite() && s_min < s_max) {
        return Err(domain(format!(
            "sample range must satisfy s_min < s_max, got [{s_min}, {s_max}]"
        )));
    }
    let step = (s_max - s_min) / (count - 1) as f64;
    Ok((0..count)
        .map(|k| {
            let s = if k + 1 == count {
                s_max
            } else {
                s_min + k as f64 * step
            };
            PathPoint {
                s,
                q: contour.point(s),
            }
        })
        .collect())
}

/// CSV table with columns `s, re, im`.
pub fn path_table(points: &[PathPoint]) -> Table {
    let mut t = Table::new(vec!["s", "re", "im"]);
    for p in points {
        t.push(vec![Cell::Num(p.s), Cell::Num(p.q.re), Cell::Num(p.q.im)]);
    }
    t
}
