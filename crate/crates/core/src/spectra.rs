//! Closed-form large-ℓ spectra: energies, rescaled levels `F = ρ^{3/5}E`,
//! level spacings, their `ℓ → ∞` constants, and the oscillator benchmark.
//!
//! Levels are counted from `n = 0`.

use crate::error::{domain, Error, Result};
use crate::largeell::expand_rectified;
use crate::output::{Cell, Table};
use crate::Complex64;
use serde::{Deserialize, Serialize};

use crate::largeell::{tau_cubic, tau_general};

/// `-(5/2)τ³ + √(15τ/2)(2n+1)`.
pub fn energy_cubic_n0(ell: f64, n: u32) -> Result<f64> {
    let tau = tau_cubic(ell)?;
    // same operation order as energy_toboggan at N = 0
    Ok(-2.5 * tau.powi(3) + (2 * n + 1) as f64 / 1.0 * (7.5 * tau.powi(1)).sqrt())
}

/// `-((10N+5)/2)τ^{6N+3} + ((2n+1)/(2N+1))·√((10N+3)(10N+5)/2)·τ^{N+1/2}`.
pub fn energy_toboggan(winding_number: u32, ell: f64, n: u32) -> Result<f64> {
    let tau = tau_general(winding_number, ell)?;
    let w = winding_number as i32;
    let well = -((10 * w + 5) as f64) / 2.0 * tau.powi(6 * w + 3);
    let quantum = (2 * n + 1) as f64 / (2 * w + 1) as f64;
    let stiffness = ((10 * w + 3) * (10 * w + 5)) as f64 / 2.0;
    Ok(well + quantum * (stiffness * tau.powi(2 * w + 1)).sqrt())
}

/// `ρ = 1/(ℓ+1/2)²`.
pub fn rho(ell: f64) -> f64 {
    1.0 / ((ell + 0.5) * (ell + 0.5))
}

/// `F_n = ρ^{3/5}·E_n`.
pub fn rescaled_level(winding_number: u32, ell: f64, n: u32) -> Result<f64> {
    Ok(rho(ell).powf(0.6) * energy_toboggan(winding_number, ell, n)?)
}

/// Spacing `E_{n+1} - E_n = (2/(2N+1))·√((10N+3)(10N+5)/2)·τ^{N+1/2}`.
/// The closed form does not depend on `n`.
pub fn gap(winding_number: u32, ell: f64, _n: u32) -> Result<f64> {
    let tau = tau_general(winding_number, ell)?;
    let w = winding_number as i32;
    let stiffness = ((10 * w + 3) * (10 * w + 5)) as f64 / 2.0;
    Ok(2.0 / (2 * w + 1) as f64 * (stiffness * tau.powi(2 * w + 1)).sqrt())
}

/// `lim G/ℓ^{1/5} = (2/(2N+1))·√((10N+3)(10N+5)/2)·(2/(10N+3))^{1/10}`,
/// continued to real `N ≥ 0`.
pub fn gap_constant(winding_number: f64) -> f64 {
    let n = winding_number;
    2.0 / (2.0 * n + 1.0)
        * ((10.0 * n + 3.0) * (10.0 * n + 5.0) / 2.0).sqrt()
        * (2.0 / (10.0 * n + 3.0)).powf(0.1)
}

/// `lim ρ^{3/5}E_n = -((10N+5)/2)·(2/(10N+3))^{3/5}` (any `n`).
pub fn rescaled_limit(winding_number: f64) -> f64 {
    let n = winding_number;
    -(10.0 * n + 5.0) / 2.0 * (2.0 / (10.0 * n + 3.0)).powf(0.6)
}

/// Power of `τ` in the error term of [`energy_toboggan`], `-(6N+3)/4`.
pub fn closed_form_error_exponent(winding_number: u32) -> f64 {
    -((6 * winding_number + 3) as f64) / 4.0
}

/// Exact oscillator levels `ω(4n + 1 - 2ℓ)` for `n < ℓ + 1/2`.
pub fn energy_ho_exact(ell: f64, omega: f64, n: u32) -> Result<f64> {
    check_omega(omega)?;
    if n as f64 >= ell + 0.5 {
        return Err(Error::Range(format!(
            "level n = {n} violates n_max < ℓ+1/2 = {}",
            ell + 0.5
        )));
    }
    Ok(omega * (4.0 * n as f64 + 1.0 - 2.0 * ell))
}

/// Large-ℓ oscillator levels `-ω√((2ℓ+1)² - 1) + 2ω(2n+1)`.
pub fn energy_ho_approx(ell: f64, omega: f64, n: u32) -> Result<f64> {
    check_omega(omega)?;
    let x = 2.0 * ell + 1.0;
    let disc = x * x - 1.0;
    if disc.is_nan() || disc < 0.0 {
        return Err(domain(format!("need (2ℓ+1)² ≥ 1, got ℓ = {ell}")));
    }
    Ok(-omega * disc.sqrt() + 2.0 * omega * (2 * n + 1) as f64)
}

fn check_omega(omega: f64) -> Result<()> {
    if omega.is_finite() && omega > 0.0 {
        Ok(())
    } else {
        Err(domain(format!("ω must be positive, got {omega}")))
    }
}

/// Harmonic estimate built from the Taylor engine instead of the closed form:
/// `E = [V(T) + √(V''(T)/2)(2n+1)] / W(T)` at `T = -iτ`.
///
/// The result must be real to 1e-12 relative; otherwise [`Error::NonReal`].
pub fn harmonic_estimate(winding_number: u32, ell: f64, n: u32) -> Result<f64> {
    let (problem, family, expansion) = expand_rectified(winding_number, ell)?;
    let w = problem.weight(family.selected());
    let e = (expansion.value + expansion.harmonic.sqrt() * (2 * n + 1) as f64) / w;
    real_or_err(e)
}

fn real_or_err(z: Complex64) -> Result<f64> {
    let relative = z.im.abs() / z.norm().max(f64::MIN_POSITIVE);
    if relative < 1e-12 {
        Ok(z.re)
    } else {
        Err(Error::NonReal { value: z, relative })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    ClosedForm,
    Oracle,
}

impl Source {
    pub fn as_str(&self) -> &'static str {
        match self {
            Source::ClosedForm => "closed_form",
            Source::Oracle => "oracle",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumEntry {
    #[serde(rename = "N")]
    pub winding_number: u32,
    pub ell: f64,
    pub rho: f64,
    pub n: u32,
    pub energy: f64,
    #[serde(rename = "rescaled_F")]
    pub rescaled_f: f64,
    #[serde(rename = "gap_G")]
    pub gap_g: f64,
    pub source: Source,
    /// `τ^{-(6N+3)/4}`, the size of the neglected terms, for closed-form rows.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error_scale: Option<f64>,
}

/// Rows sorted by `(N, ℓ, n)`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SpectrumTable {
    pub entries: Vec<SpectrumEntry>,
}

impl SpectrumTable {
    /// Closed-form rows `n = 0..levels` for one `(N, ℓ)`.
    pub fn closed_form(winding_number: u32, ell: f64, levels: u32) -> Result<Self> {
        let mut table = Self::default();
        table.extend_closed_form(winding_number, ell, levels)?;
        Ok(table)
    }

    pub fn extend_closed_form(&mut self, winding_number: u32, ell: f64, levels: u32) -> Result<()> {
        if levels == 0 {
            return Err(domain("need at least one level"));
        }
        let tau = tau_general(winding_number, ell)?;
        let g = gap(winding_number, ell, 0)?;
        let r = rho(ell);
        let error_scale = tau.powf(closed_form_error_exponent(winding_number));
        for n in 0..levels {
            let energy = energy_toboggan(winding_number, ell, n)?;
            self.entries.push(SpectrumEntry {
                winding_number,
                ell,
                rho: r,
                n,
                energy,
                rescaled_f: r.powf(0.6) * energy,
                gap_g: g,
                source: Source::ClosedForm,
                error_scale: Some(error_scale),
            });
        }
        self.sort();
        Ok(())
    }

    /// Adds oracle rows; `gap_g` is the spacing to the next oracle level
    /// (the last row repeats the previous spacing).
    pub fn extend_oracle(&mut self, winding_number: u32, ell: f64, energies: &[f64]) {
        let r = rho(ell);
        for (n, &energy) in energies.iter().enumerate() {
            let g = match (energies.get(n + 1), n.checked_sub(1).map(|m| energies[m])) {
                (Some(next), _) => next - energy,
                (None, Some(prev)) => energy - prev,
                (None, None) => f64::NAN,
            };
            self.entries.push(SpectrumEntry {
                winding_number,
                ell,
                rho: r,
                n: n as u32,
                energy,
                rescaled_f: r.powf(0.6) * energy,
                gap_g: g,
                source: Source::Oracle,
                error_scale: None,
            });
        }
        self.sort();
    }

    fn sort(&mut self) {
        self.entries.sort_by(|a, b| {
            a.winding_number
                .cmp(&b.winding_number)
                .then(a.ell.total_cmp(&b.ell))
                .then(a.n.cmp(&b.n))
                .then(a.source.cmp(&b.source))
        });
    }

    /// CSV columns `N, ell, rho, n, E, F, G, source`.
    pub fn to_table(&self) -> Table {
        let mut t = Table::new(vec!["N", "ell", "rho", "n", "E", "F", "G", "source"]);
        for e in &self.entries {
            t.push(vec![
                Cell::Int(e.winding_number as i64),
                Cell::Num(e.ell),
                Cell::Num(e.rho),
                Cell::Int(e.n as i64),
                Cell::Num(e.energy),
                Cell::Num(e.rescaled_f),
                Cell::Num(e.gap_g),
                Cell::Text(e.source.as_str().to_string()),
            ]);
        }
        t
    }
}
