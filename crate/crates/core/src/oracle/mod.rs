//! Finite-difference eigensolver used to check the closed forms.
//!
//! The (rectified) equation is discretized with the 3-point Laplacian on
//! `y = s - iε`, `s ∈ [-S, S]`, with the wavefunction set to zero outside the
//! grid. Eigenvalues of `A v = λ B v` near a seed are found by shifted inverse
//! iteration; each shifted solve is a tridiagonal LU, so a sweep costs `O(K)`.

pub mod seed;
mod tridiag;

pub use tridiag::{
    inverse_iteration, inverse_iteration_from, inverse_iteration_perturbed, EigenResult,
    TridiagonalLu, TridiagonalSystem,
};

use crate::error::{domain, Error, Result};
use crate::largeell::{expand_ho, expand_rectified};
use crate::potentials::{v_eff_ho, HoSpec};
use crate::rectify::{build_rectified, RectifiedProblem};
use crate::spectra::{energy_ho_approx, energy_ho_exact, energy_toboggan};
use crate::Complex64;
use seed::{weighted_seed, LevelSeed};
use serde::{Deserialize, Serialize};

pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_MAX_ITER: usize = 1000;

/// Grid `s_k = -S + k·h`, `h = 2S/(K-1)`, on the line `y = s - iε`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Discretization {
    pub half_width: f64,
    pub points: usize,
    pub shift_eps: f64,
}

impl Discretization {
    pub fn new(half_width: f64, points: usize, shift_eps: f64) -> Result<Self> {
        if !(half_width.is_finite() && half_width > 0.0) {
            return Err(domain(format!("half-width must be positive, got {half_width}")));
        }
        if points < 3 {
            return Err(domain(format!("need at least 3 grid points, got {points}")));
        }
        if !(shift_eps.is_finite() && shift_eps > 0.0) {
            return Err(domain(format!("line offset ε must be positive, got {shift_eps}")));
        }
        Ok(Self {
            half_width,
            points,
            shift_eps,
        })
    }

    pub fn step(&self) -> f64 {
        2.0 * self.half_width / (self.points - 1) as f64
    }

    pub fn node(&self, k: usize) -> f64 {
        -self.half_width + k as f64 * self.step()
    }

    pub fn point(&self, k: usize) -> Complex64 {
        Complex64::new(self.node(k), -self.shift_eps)
    }
}

/// Main diagonal `2/h² + V(s_k - iε)`, off-diagonal `-1/h²`, weight
/// `W(s_k - iε)` (ones without a weight).
pub fn build_tridiagonal(
    potential: &dyn Fn(Complex64) -> Result<Complex64>,
    weight: Option<&dyn Fn(Complex64) -> Complex64>,
    disc: &Discretization,
) -> Result<TridiagonalSystem> {
    let h = disc.step();
    let kinetic = 2.0 / (h * h);
    let mut main = Vec::with_capacity(disc.points);
    let mut w = Vec::with_capacity(disc.points);
    for k in 0..disc.points {
        let y = disc.point(k);
        let v = potential(y).map_err(|e| Error::Build(format!("at y = {y}: {e}")))?;
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::Build(format!("potential not finite at y = {y}")));
        }
        main.push(kinetic + v);
        w.push(match weight {
            Some(f) => f(y),
            None => Complex64::new(1.0, 0.0),
        });
    }
    Ok(TridiagonalSystem {
        main,
        off: Complex64::new(-1.0 / (h * h), 0.0),
        weight: w,
    })
}

/// Rectified potential with its weight `(2N+1)²y^{4N}`.
pub fn rectified_system(problem: &RectifiedProblem, disc: &Discretization) -> Result<TridiagonalSystem> {
    let weight = |y: Complex64| problem.weight(y);
    build_tridiagonal(&|y| problem.potential(y), Some(&weight), disc)
}

/// Rectified potential with `B = I`, ignoring the weight.
pub fn rectified_system_unweighted(
    problem: &RectifiedProblem,
    disc: &Discretization,
) -> Result<TridiagonalSystem> {
    build_tridiagonal(&|y| problem.potential(y), None, disc)
}

pub fn ho_system(spec: &HoSpec, disc: &Discretization) -> Result<TridiagonalSystem> {
    build_tridiagonal(&|y| v_eff_ho(y, spec), None, disc)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Model {
    CubicToboggan,
    Ho { omega: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProblemDescriptor {
    #[serde(rename = "N")]
    pub winding_number: u32,
    pub ell: f64,
    pub model: Model,
}

impl ProblemDescriptor {
    pub fn cubic(winding_number: u32, ell: f64) -> Self {
        Self {
            winding_number,
            ell,
            model: Model::CubicToboggan,
        }
    }

    pub fn ho(ell: f64, omega: f64) -> Self {
        Self {
            winding_number: 0,
            ell,
            model: Model::Ho { omega },
        }
    }

    /// `N ≥ 2` toboggans: the `y^{10N+3}` growth makes these runs fragile.
    pub fn is_experimental(&self) -> bool {
        matches!(self.model, Model::CubicToboggan) && self.winding_number >= 2
    }

    /// Closed-form reference for level `n`: the exact oscillator level, or the
    /// large-ℓ toboggan formula.
    pub fn closed_form(&self, level: u32) -> Result<f64> {
        match self.model {
            Model::Ho { omega } => energy_ho_exact(self.ell, omega, level),
            Model::CubicToboggan => energy_toboggan(self.winding_number, self.ell, level),
        }
    }

    fn system(&self, disc: &Discretization) -> Result<TridiagonalSystem> {
        match self.model {
            Model::Ho { omega } => ho_system(&HoSpec::new(self.ell, omega)?, disc),
            Model::CubicToboggan => rectified_system(&build_rectified(self.winding_number, self.ell), disc),
        }
    }

    /// Seed energy, well centre and harmonic length for level `n`.
    pub fn seed(&self, level: u32) -> Result<LevelSeed> {
        match self.model {
            Model::Ho { omega } => {
                energy_ho_exact(self.ell, omega, level)?;
                let spec = HoSpec::new(self.ell, omega)?;
                let (family, expansion) = expand_ho(&spec)?;
                Ok(LevelSeed {
                    energy: energy_ho_approx(self.ell, omega, level)?,
                    center: family.tau,
                    sigma: expansion.harmonic.re.powf(-0.25),
                })
            }
            Model::CubicToboggan if self.winding_number == 0 => {
                let (_, family, expansion) = expand_rectified(0, self.ell)?;
                Ok(LevelSeed {
                    energy: energy_toboggan(0, self.ell, level)?,
                    center: family.tau,
                    sigma: expansion.harmonic.re.powf(-0.25),
                })
            }
            Model::CubicToboggan => {
                let problem = build_rectified(self.winding_number, self.ell);
                weighted_seed(&problem, self.ell, level)
            }
        }
    }
}

/// Grid overrides; `None` fields are chosen automatically per level.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub half_width: Option<f64>,
    pub points: Option<usize>,
    pub shift_eps: Option<f64>,
}

/// Automatic grid: `ε` through the well, `S = 15σ` (`8σ` when experimental),
/// `h ≤ σ/20`, and at least 6001 points (8001 when experimental), odd so that
/// `s = 0` is a node.
pub fn auto_grid(desc: &ProblemDescriptor, seed: &LevelSeed, overrides: &GridSpec) -> Result<Discretization> {
    let (width_factor, floor) = if desc.is_experimental() { (8.0, 8001) } else { (15.0, 6001) };
    let half_width = overrides.half_width.unwrap_or(width_factor * seed.sigma);
    let points = overrides.points.unwrap_or_else(|| {
        let needed = (2.0 * half_width / (seed.sigma / 20.0)).ceil() as usize + 1;
        let k = needed.max(floor);
        k + (1 - k % 2)
    });
    Discretization::new(half_width, points, overrides.shift_eps.unwrap_or(seed.center))
}

/// Hermite function of order `n` in `s/σ`, sampled on the grid.
pub fn hermite_start(disc: &Discretization, sigma: f64, level: u32) -> Vec<Complex64> {
    (0..disc.points)
        .map(|k| {
            let x = disc.node(k) / sigma;
            let (mut h0, mut h1) = (1.0, 2.0 * x);
            let hn = if level == 0 {
                h0
            } else {
                for j in 1..level {
                    let h2 = 2.0 * x * h1 - 2.0 * j as f64 * h0;
                    h0 = h1;
                    h1 = h2;
                }
                h1
            };
            Complex64::new(hn * (-0.5 * x * x).exp(), 0.0)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct LevelSolution {
    pub level: u32,
    pub seed: f64,
    pub grid: Discretization,
    pub result: EigenResult,
}

/// Solves levels `0..count`, each from its own seed and (automatic) grid.
/// Results are sorted by real part.
pub fn low_lying_detailed(
    desc: &ProblemDescriptor,
    count: u32,
    grid: &GridSpec,
    tol: f64,
) -> Result<Vec<LevelSolution>> {
    if count == 0 {
        return Err(domain("need at least one level"));
    }
    if !(tol.is_finite() && tol > 0.0) {
        return Err(domain(format!("tolerance must be positive, got {tol}")));
    }
    let mut out = Vec::with_capacity(count as usize);
    for level in 0..count {
        let seed = desc.seed(level)?;
        let disc = auto_grid(desc, &seed, grid)?;
        let system = desc.system(&disc)?;
        let start = hermite_start(&disc, seed.sigma, level);
        let result = inverse_iteration_perturbed(
            &system,
            Complex64::new(seed.energy, 0.0),
            &start,
            tol,
            DEFAULT_MAX_ITER,
        )?;
        out.push(LevelSolution {
            level,
            seed: seed.energy,
            grid: disc,
            result,
        });
    }
    out.sort_by(|a, b| a.result.eigenvalue.re.total_cmp(&b.result.eigenvalue.re));
    check_distinct(&out, tol)?;
    Ok(out)
}

/// Fails if two levels sit within relative distance `10·tol` of each other.
pub fn check_distinct(levels: &[LevelSolution], tol: f64) -> Result<()> {
    for i in 0..levels.len() {
        for j in i + 1..levels.len() {
            let (a, b) = (&levels[i].result, &levels[j].result);
            let scale = a.eigenvalue.norm().max(b.eigenvalue.norm()).max(f64::MIN_POSITIVE);
            if (a.eigenvalue - b.eigenvalue).norm() / scale <= 10.0 * tol {
                return Err(Error::DuplicateEigenvalue {
                    first: levels[i].level as usize,
                    second: levels[j].level as usize,
                    eigenvalue: a.eigenvalue,
                    first_residual: a.residual,
                    second_residual: b.residual,
                });
            }
        }
    }
    Ok(())
}

pub fn low_lying(
    desc: &ProblemDescriptor,
    count: u32,
    grid: &GridSpec,
    tol: f64,
) -> Result<Vec<EigenResult>> {
    Ok(low_lying_detailed(desc, count, grid, tol)?
        .into_iter()
        .map(|s| s.result)
        .collect())
}

/// One row of a verification report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub problem: ProblemDescriptor,
    pub level: u32,
    pub grid: Discretization,
    pub seed: f64,
    pub eigenvalue: Complex64,
    pub residual: f64,
    pub iterations: usize,
    pub converged: bool,
    pub closed_form: f64,
    pub abs_diff: f64,
}

impl VerificationReport {
    pub fn new(problem: &ProblemDescriptor, solution: &LevelSolution) -> Result<Self> {
        let closed_form = problem.closed_form(solution.level)?;
        Ok(Self {
            problem: *problem,
            level: solution.level,
            grid: solution.grid,
            seed: solution.seed,
            eigenvalue: solution.result.eigenvalue,
            residual: solution.result.residual,
            iterations: solution.result.iterations,
            converged: solution.result.converged,
            closed_form,
            abs_diff: (solution.result.eigenvalue - closed_form).norm(),
        })
    }
}
