//! Complex tridiagonal LU with partial pivoting and shifted inverse iteration
//! for `A v = λ B v`, `A` tridiagonal with constant off-diagonal, `B` diagonal.

use crate::error::{Error, Result};
use crate::Complex64;
use serde::{Deserialize, Serialize};

/// `A = tridiag(off, main, off)` and diagonal `B = diag(weight)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalSystem {
    pub main: Vec<Complex64>,
    pub off: Complex64,
    pub weight: Vec<Complex64>,
}

impl TridiagonalSystem {
    pub fn len(&self) -> usize {
        self.main.len()
    }

    pub fn is_empty(&self) -> bool {
        self.main.is_empty()
    }

    /// `A x`.
    pub fn apply(&self, x: &[Complex64]) -> Vec<Complex64> {
        let n = self.len();
        (0..n)
            .map(|k| {
                let mut acc = self.main[k] * x[k];
                if k > 0 {
                    acc += self.off * x[k - 1];
                }
                if k + 1 < n {
                    acc += self.off * x[k + 1];
                }
                acc
            })
            .collect()
    }

    /// `B x`.
    pub fn apply_weight(&self, x: &[Complex64]) -> Vec<Complex64> {
        self.weight.iter().zip(x).map(|(w, v)| w * v).collect()
    }

    /// Max-row-sum norm of `A`.
    pub fn norm_a(&self) -> f64 {
        let off = if self.len() > 1 { 2.0 * self.off.norm() } else { 0.0 };
        self.main.iter().map(|d| d.norm()).fold(0.0, f64::max) + off
    }

    /// Max-row-sum norm of `B`.
    pub fn norm_b(&self) -> f64 {
        self.weight.iter().map(|w| w.norm()).fold(0.0, f64::max)
    }

    /// Factorizes `A - shift·B`.
    pub fn factor_shifted(&self, shift: Complex64) -> Result<TridiagonalLu> {
        let d: Vec<Complex64> = self
            .main
            .iter()
            .zip(&self.weight)
            .map(|(a, w)| a - shift * w)
            .collect();
        let n = d.len();
        let m = n.saturating_sub(1);
        let scale = d.iter().map(|x| x.norm()).fold(0.0, f64::max)
            + if n > 1 { 2.0 * self.off.norm() } else { 0.0 };
        TridiagonalLu::factor(vec![self.off; m], d, vec![self.off; m], scale)
            .map_err(|_| Error::ShiftCollision(shift))
    }

    /// Relative backward error `‖Av − λBv‖ / ((‖A‖ + |λ|‖B‖)‖v‖)`, max norms.
    pub fn backward_error(&self, v: &[Complex64], lambda: Complex64) -> f64 {
        let av = self.apply(v);
        let bv = self.apply_weight(v);
        let r = av
            .iter()
            .zip(&bv)
            .map(|(a, b)| (a - lambda * b).norm())
            .fold(0.0, f64::max);
        let denom = (self.norm_a() + lambda.norm() * self.norm_b()) * max_norm(v);
        if denom > 0.0 {
            r / denom
        } else {
            r
        }
    }

    /// `(v* A v) / (v* B v)`.
    pub fn rayleigh(&self, v: &[Complex64]) -> Complex64 {
        let av = self.apply(v);
        let bv = self.apply_weight(v);
        let num: Complex64 = v.iter().zip(&av).map(|(x, y)| x.conj() * y).sum();
        let den: Complex64 = v.iter().zip(&bv).map(|(x, y)| x.conj() * y).sum();
        num / den
    }
}

/// LU factors in the layout of LAPACK's `gttrf`.
#[derive(Debug, Clone)]
pub struct TridiagonalLu {
    dl: Vec<Complex64>,
    d: Vec<Complex64>,
    du: Vec<Complex64>,
    du2: Vec<Complex64>,
    swapped: Vec<bool>,
}

impl TridiagonalLu {
    /// Fails with the index of the first pivot below `n·ε_mach·scale`.
    pub fn factor(
        mut dl: Vec<Complex64>,
        mut d: Vec<Complex64>,
        mut du: Vec<Complex64>,
        scale: f64,
    ) -> std::result::Result<Self, usize> {
        let n = d.len();
        let mut du2 = vec![Complex64::new(0.0, 0.0); n.saturating_sub(2)];
        let mut swapped = vec![false; n.saturating_sub(1)];
        for i in 0..n.saturating_sub(1) {
            if d[i].l1_norm() >= dl[i].l1_norm() {
                if d[i].l1_norm() != 0.0 {
                    let fact = dl[i] / d[i];
                    dl[i] = fact;
                    d[i + 1] -= fact * du[i];
                }
            } else {
                let fact = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = fact;
                let temp = du[i];
                du[i] = d[i + 1];
                d[i + 1] = temp - fact * d[i + 1];
                if i + 2 < n {
                    du2[i] = du[i + 1];
                    du[i + 1] = -fact * du[i + 1];
                }
                swapped[i] = true;
            }
        }
        let tiny = n as f64 * f64::EPSILON * scale;
        if let Some(k) = d.iter().position(|p| p.norm() <= tiny) {
            return Err(k);
        }
        Ok(Self {
            dl,
            d,
            du,
            du2,
            swapped,
        })
    }

    /// Solves in place.
    pub fn solve(&self, b: &mut [Complex64]) {
        let n = self.d.len();
        for i in 0..n.saturating_sub(1) {
            if self.swapped[i] {
                let temp = b[i];
                b[i] = b[i + 1];
                b[i + 1] = temp - self.dl[i] * b[i];
            } else {
                b[i + 1] -= self.dl[i] * b[i];
            }
        }
        if n == 0 {
            return;
        }
        b[n - 1] /= self.d[n - 1];
        if n > 1 {
            b[n - 2] = (b[n - 2] - self.du[n - 2] * b[n - 1]) / self.d[n - 2];
        }
        for i in (0..n.saturating_sub(2)).rev() {
            b[i] = (b[i] - self.du[i] * b[i + 1] - self.du2[i] * b[i + 2]) / self.d[i];
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenResult {
    pub eigenvalue: Complex64,
    pub residual: f64,
    pub iterations: usize,
    pub converged: bool,
    /// Final iterate, normalized to unit max-modulus.
    #[serde(skip)]
    pub vector: Vec<Complex64>,
}

/// Inverse iteration from a flat start vector.
pub fn inverse_iteration(
    system: &TridiagonalSystem,
    shift: Complex64,
    tol: f64,
    max_iter: usize,
) -> Result<EigenResult> {
    let start = vec![Complex64::new(1.0, 0.0); system.len()];
    inverse_iteration_from(system, shift, &start, tol, max_iter)
}

/// `v ← (A − shift·B)⁻¹ B v`, normalized so the largest entry is 1, until the
/// Rayleigh estimate moves by less than `tol` (relative) and the backward
/// error is at most `tol`.
pub fn inverse_iteration_from(
    system: &TridiagonalSystem,
    shift: Complex64,
    start: &[Complex64],
    tol: f64,
    max_iter: usize,
) -> Result<EigenResult> {
    if start.len() != system.len() {
        return Err(Error::Build(format!(
            "start vector has {} entries, system has {}",
            start.len(),
            system.len()
        )));
    }
    let lu = system.factor_shifted(shift)?;
    let mut v = start.to_vec();
    normalize(&mut v);
    let mut lambda = system.rayleigh(&v);
    let mut residual = f64::INFINITY;
    for it in 1..=max_iter {
        let mut next = system.apply_weight(&v);
        lu.solve(&mut next);
        if !normalize(&mut next) {
            return Err(Error::ShiftCollision(shift));
        }
        v = next;
        let updated = system.rayleigh(&v);
        let change = (updated - lambda).norm() / updated.norm().max(f64::MIN_POSITIVE);
        lambda = updated;
        residual = system.backward_error(&v, lambda);
        if change < tol && residual <= tol {
            return Ok(EigenResult {
                eigenvalue: lambda,
                residual,
                iterations: it,
                converged: true,
                vector: v,
            });
        }
    }
    Ok(EigenResult {
        eigenvalue: lambda,
        residual,
        iterations: max_iter,
        converged: false,
        vector: v,
    })
}

/// Retries once with the shift moved by `1e-6·|shift|` if it collides with
/// an eigenvalue.
pub fn inverse_iteration_perturbed(
    system: &TridiagonalSystem,
    shift: Complex64,
    start: &[Complex64],
    tol: f64,
    max_iter: usize,
) -> Result<EigenResult> {
    match inverse_iteration_from(system, shift, start, tol, max_iter) {
        Err(Error::ShiftCollision(_)) => {
            let bump = 1e-6 * shift.norm().max(1.0);
            inverse_iteration_from(system, shift + bump, start, tol, max_iter)
        }
        other => other,
    }
}

fn max_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|x| x.norm()).fold(0.0, f64::max)
}

fn normalize(v: &mut [Complex64]) -> bool {
    let Some(big) = v
        .iter()
        .copied()
        .max_by(|a, b| a.norm().total_cmp(&b.norm()))
    else {
        return false;
    };
    if !(big.norm() > 0.0 && big.norm().is_finite()) {
        return false;
    }
    let inv = big.inv();
    v.iter_mut().for_each(|x| *x *= inv);
    true
}
