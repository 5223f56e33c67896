//! Reconstruction of Jost functions from a unimodular scattering function
//! sampled on the real momentum line:
//!
//! `F±(k) = Π±(k) exp( (1/2πi) ∫ ln(S⁻¹(k') Π₋²(k')) / (k' - k ∓ i0) dk' )`,
//!
//! with the boundary value split into a principal value and `±iπ` times the
//! integrand at `k`, and `Π±` the Blaschke products over bound-state
//! momenta `i k_j`.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::numerics::{principal_value_sampled, NumericsError};
use crate::scattering::{jost_plus, s_matrix, ScatteringError};
use crate::zeta::{ComplexArgument, SignedLogComplex};

/// `|S|` below this at a node violates `det S != 0` on the real line.
pub const MODULUS_FLOOR: f64 = 1e-12;
/// Largest `|ln S⁻¹Π₋²|` tolerated at the ends of the grid.
pub const ENDPOINT_LOG_BOUND: f64 = 1e-4;
/// Largest phase step between adjacent nodes accepted while unwrapping.
pub const MAX_PHASE_STEP: f64 = PI / 2.0;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum DispersionError {
    #[error("invalid samples: {0}")]
    InvalidSamples(String),
    #[error("invalid bound-state momenta: {0}")]
    InvalidBoundStates(String),
    #[error("|S(k)| = {modulus:e} vanishes at k = {k}")]
    NonvanishingViolation { k: f64, modulus: f64 },
    #[error("phase of ln S jumps by {jump} between k = {k_lo} and k = {k_hi}; refine the grid")]
    GridTooCoarse { k_lo: f64, k_hi: f64, jump: f64 },
    #[error("|ln S| = {magnitude:e} at k = {k} exceeds {ENDPOINT_LOG_BOUND:e}; widen the grid")]
    GridTooNarrow { k: f64, magnitude: f64 },
    #[error("k = {0} is not inside the sampled grid")]
    OutsideGrid(f64),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error(transparent)]
    Scattering(#[from] ScatteringError),
}

pub type Result<T> = std::result::Result<T, DispersionError>;

/// Bound-state momenta `k_j > 0` (bound states at `k = i k_j`).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlaschkeSpec {
    bound_state_momenta: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Branch {
    Plus,
    Minus,
}

impl BlaschkeSpec {
    pub fn new(bound_state_momenta: Vec<f64>) -> Result<Self> {
        if let Some(&k) = bound_state_momenta.iter().find(|&&k| !(k > 0.0 && k.is_finite())) {
            return Err(DispersionError::InvalidBoundStates(format!("k_j must be positive, got {k}")));
        }
        Ok(Self { bound_state_momenta })
    }

    pub fn none() -> Self {
        Self { bound_state_momenta: Vec::new() }
    }

    pub fn momenta(&self) -> &[f64] {
        &self.bound_state_momenta
    }

    pub fn count(&self) -> usize {
        self.bound_state_momenta.len()
    }
}

/// `Π±(k) = ∏ (k ∓ i k_j) / (k ± i k_j)`.
pub fn blaschke_product(spec: &BlaschkeSpec, k: f64, branch: Branch) -> Complex64 {
    let sign = match branch {
        Branch::Plus => 1.0,
        Branch::Minus => -1.0,
    };
    spec.bound_state_momenta.iter().fold(Complex64::new(1.0, 0.0), |acc, &kj| {
        acc * Complex64::new(k, -sign * kj) / Complex64::new(k, sign * kj)
    })
}

/// `S(k)` on a strictly increasing grid symmetric about `k = 0`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RealLineSamples {
    grid: Vec<f64>,
    s_values: Vec<Complex64>,
}

impl RealLineSamples {
    pub fn new(grid: Vec<f64>, s_values: Vec<Complex64>) -> Result<Self> {
        let n = grid.len();
        if n < 5 || s_values.len() != n {
            return Err(DispersionError::InvalidSamples(format!(
                "need at least 5 nodes with one value each (grid {n}, values {})",
                s_values.len()
            )));
        }
        if grid.iter().any(|k| !k.is_finite()) || grid.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(DispersionError::InvalidSamples("grid must be finite and strictly increasing".into()));
        }
        let width = grid[n - 1] - grid[0];
        for i in 0..n / 2 {
            if (grid[i] + grid[n - 1 - i]).abs() > 1e-12 * width {
                return Err(DispersionError::InvalidSamples(format!(
                    "grid not symmetric about 0 at node {i} ({} vs {})",
                    grid[i],
                    grid[n - 1 - i]
                )));
            }
        }
        for (&k, s) in grid.iter().zip(&s_values) {
            if !(s.norm() > MODULUS_FLOOR) {
                return Err(DispersionError::NonvanishingViolation { k, modulus: s.norm() });
            }
        }
        Ok(Self { grid, s_values })
    }

    /// Uniform grid of `nodes` points on `[-half_width, half_width]`.
    pub fn from_fn<F>(half_width: f64, nodes: usize, f: F) -> Result<Self>
    where
        F: Fn(f64) -> Complex64 + Sync,
    {
        if !(half_width > 0.0 && half_width.is_finite()) || nodes < 5 {
            return Err(DispersionError::InvalidSamples(format!(
                "need half_width > 0 and at least 5 nodes, got {half_width} and {nodes}"
            )));
        }
        let h = 2.0 * half_width / (nodes - 1) as f64;
        let grid: Vec<f64> = (0..nodes)
            .map(|i| {
                let j = i as f64 - 0.5 * (nodes - 1) as f64;
                j * h
            })
            .collect();
        let s_values = grid.par_iter().map(|&k| f(k)).collect();
        Self::new(grid, s_values)
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn s_values(&self) -> &[Complex64] {
        &self.s_values
    }

    pub fn half_width(&self) -> f64 {
        self.grid[self.grid.len() - 1]
    }
}

/// `S ≡ 1`.
pub fn unit_model(half_width: f64, nodes: usize) -> Result<RealLineSamples> {
    RealLineSamples::from_fn(half_width, nodes, |_| Complex64::new(1.0, 0.0))
}

/// Rational model with `F+(k) = (k + i a) / (k + i b)` and
/// `F-(k) = (k - i a) / (k - i b)`, so `S = F- / F+` is unimodular, has no
/// bound states, and `ln S ~ 2i (b - a) / k` at large `|k|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RationalModel {
    pub a: f64,
    pub b: f64,
}

impl Default for RationalModel {
    /// Weak enough that `|ln S| < 1e-4` at `|k| = 50`.
    fn default() -> Self {
        Self { a: 0.5, b: 0.501 }
    }
}

impl RationalModel {
    pub fn jost_plus(&self, k: f64) -> Complex64 {
        Complex64::new(k, self.a) / Complex64::new(k, self.b)
    }

    pub fn jost_minus(&self, k: f64) -> Complex64 {
        Complex64::new(k, -self.a) / Complex64::new(k, -self.b)
    }

    pub fn s(&self, k: f64) -> Complex64 {
        self.jost_minus(k) / self.jost_plus(k)
    }

    /// Samples of `Π₋²(k) S(k)`: the same model carrying bound states at
    /// the momenta of `spec`.
    pub fn samples(&self, spec: &BlaschkeSpec, half_width: f64, nodes: usize) -> Result<RealLineSamples> {
        RealLineSamples::from_fn(half_width, nodes, |k| {
            let pm = blaschke_product(spec, k, Branch::Minus);
            pm * pm * self.s(k)
        })
    }
}

// ln(S⁻¹ Π₋²) at every node, unwrapped from the left end where the
// principal branch is taken.
fn log_profile(samples: &RealLineSamples, spec: &BlaschkeSpec) -> Result<Vec<Complex64>> {
    let grid = &samples.grid;
    let mut out = Vec::with_capacity(grid.len());
    let mut prev_phase = 0.0;
    for (i, (&k, &s)) in grid.iter().zip(&samples.s_values).enumerate() {
        let pm = blaschke_product(spec, k, Branch::Minus);
        let w = pm * pm / s;
        let raw = w.arg();
        let phase = if i == 0 {
            raw
        } else {
            let mut jump = (raw - prev_phase).rem_euclid(TAU);
            if jump > PI {
                jump -= TAU;
            }
            if jump.abs() > MAX_PHASE_STEP {
                return Err(DispersionError::GridTooCoarse { k_lo: grid[i - 1], k_hi: k, jump });
            }
            prev_phase + jump
        };
        prev_phase = phase;
        out.push(Complex64::new(w.norm().ln(), phase));
    }
    for &i in &[0, grid.len() - 1] {
        let magnitude = out[i].norm();
        if magnitude > ENDPOINT_LOG_BOUND {
            return Err(DispersionError::GridTooNarrow { k: grid[i], magnitude });
        }
    }
    Ok(out)
}

// Cubic interpolation through the four nodes around x.
fn interpolate(grid: &[f64], values: &[Complex64], x: f64) -> Complex64 {
    let n = grid.len();
    let upper = grid.partition_point(|&g| g <= x).clamp(2, n - 2);
    let idx = upper - 2..upper + 2;
    let xs = &grid[idx.clone()];
    let ys = &values[idx];
    let mut total = Complex64::new(0.0, 0.0);
    for i in 0..4 {
        let mut w = 1.0;
        for m in 0..4 {
            if m != i {
                w *= (x - xs[m]) / (xs[i] - xs[m]);
            }
        }
        total += ys[i] * w;
    }
    total
}

/// The three pieces of `F+(k)`: the Blaschke factor, `PV/(2πi)` and the
/// delta-function half-residue `L(k)/2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JostReconstruction {
    pub k: f64,
    pub blaschke: Complex64,
    pub principal_part: Complex64,
    pub delta_part: Complex64,
    pub value: Complex64,
}

fn reconstruct_with(
    grid: &[f64],
    profile: &[Complex64],
    spec: &BlaschkeSpec,
    k: f64,
    branch: Branch,
) -> Result<JostReconstruction> {
    if !(k > grid[0] && k < grid[grid.len() - 1]) {
        return Err(DispersionError::OutsideGrid(k));
    }
    let pv = principal_value_sampled(grid, profile, k)?;
    let at_k = interpolate(grid, profile, k);
    let principal_part = pv / Complex64::new(0.0, TAU);
    let delta_part = match branch {
        Branch::Plus => 0.5 * at_k,
        Branch::Minus => -0.5 * at_k,
    };
    let blaschke = blaschke_product(spec, k, branch);
    Ok(JostReconstruction {
        k,
        blaschke,
        principal_part,
        delta_part,
        value: blaschke * (principal_part + delta_part).exp(),
    })
}

/// `F+(k)` reconstructed from the samples, with its constituent parts.
pub fn reconstruct_jost_plus_parts(
    samples: &RealLineSamples,
    spec: &BlaschkeSpec,
    k: f64,
) -> Result<JostReconstruction> {
    let profile = log_profile(samples, spec)?;
    reconstruct_with(&samples.grid, &profile, spec, k, Branch::Plus)
}

pub fn reconstruct_jost_plus(samples: &RealLineSamples, spec: &BlaschkeSpec, k: f64) -> Result<Complex64> {
    Ok(reconstruct_jost_plus_parts(samples, spec, k)?.value)
}

pub fn reconstruct_jost_minus(samples: &RealLineSamples, spec: &BlaschkeSpec, k: f64) -> Result<Complex64> {
    let profile = log_profile(samples, spec)?;
    Ok(reconstruct_with(&samples.grid, &profile, spec, k, Branch::Minus)?.value)
}

/// Round-trip check of the reconstruction.
///
/// `F+` is rebuilt on all interior nodes and `F- = S F+` formed from it.
/// If `F+` is right, `g = F- / Π₋ - 1` is the boundary value of a function
/// analytic and decaying in the lower half plane, and so equals its own
/// lower projection `g/2 - PV[g]/(2πi)`. The residual is the sup over the
/// middle third of the grid of `|S - Π₋ (1 + g/2 - PV[g]/(2πi)) / F+|`.
pub fn roundtrip_residual(samples: &RealLineSamples, spec: &BlaschkeSpec) -> Result<f64> {
    let profile = log_profile(samples, spec)?;
    let grid = &samples.grid;
    let n = grid.len();
    let inner = &grid[1..n - 1];

    let f_plus: Vec<Complex64> = inner
        .par_iter()
        .map(|&k| Ok(reconstruct_with(grid, &profile, spec, k, Branch::Plus)?.value))
        .collect::<Result<_>>()?;
    let g: Vec<Complex64> = inner
        .iter()
        .zip(&f_plus)
        .zip(&samples.s_values[1..n - 1])
        .map(|((&k, fp), s)| s * fp / blaschke_product(spec, k, Branch::Minus) - 1.0)
        .collect();

    let third = (grid[n - 1] - grid[0]) / 6.0;
    let checks: Vec<usize> = (1..inner.len() - 1).filter(|&j| inner[j].abs() <= third).collect();
    let residuals: Vec<f64> = checks
        .par_iter()
        .map(|&j| {
            let k = inner[j];
            let pv = principal_value_sampled(inner, &g, k)?;
            let projected = 0.5 * g[j] - pv / Complex64::new(0.0, TAU);
            let f_minus = blaschke_product(spec, k, Branch::Minus) * (1.0 + projected);
            Ok((samples.s_values[j + 1] - f_minus / f_plus[j]).norm())
        })
        .collect::<Result<_>>()?;
    Ok(residuals.into_iter().fold(0.0, f64::max))
}

/// Zero-energy limit on the `s`-plane: `F- = 1`, `F+ = S⁻¹`. The residual
/// `|S F+ / F- - 1|` checks the identity on the computed values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ZeroEnergyJost {
    pub s: ComplexArgument,
    pub f_plus: SignedLogComplex,
    pub f_minus: SignedLogComplex,
    pub residual: f64,
}

pub fn zero_energy_jost(s: ComplexArgument) -> Result<ZeroEnergyJost> {
    let sm = s_matrix(s)?;
    let f_plus = jost_plus(s)?.value;
    let f_minus = SignedLogComplex::from_value(Complex64::new(1.0, 0.0));
    let residual = (sm.value.mul(&f_plus).div(&f_minus).value() - 1.0).norm();
    Ok(ZeroEnergyJost { s, f_plus, f_minus, residual })
}
