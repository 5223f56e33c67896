//! Scattering objects built from `xi`: `S(s) = xi(2s) / xi(-2s)`, the
//! zero-energy Jost function `F+(s) = 1 / S(s)`, the map from zeta zeros to
//! Jost zeros on `Re s = -1/4`, and the coupling constants at the zeros.
//!
//! The variable `s` here is the shifted one, so a zeta zero `rho` sits at
//! `s = -rho / 2` as a zero of `F+`.

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::numerics::{winding_number_polar, ContourRectangle, NumericsError, PolarSample, WindingOptions};
use crate::zeros::{refine_zero_near, ZerosError};
use crate::zeta::{xi, xi_normalized, ComplexArgument, SignedLogComplex, ZetaError};

/// Zero floor for the normalized modulus of `xi`, checked at a zero found
/// by local Newton refinement from the evaluation point.
pub const ZERO_FLOOR: f64 = 1e-9;
/// How far the refined zero may lie from the evaluation point.
pub const REFINEMENT_RADIUS: f64 = 1e-6;
// Only points this close (normalized modulus) are refined at all.
const CANDIDATE_FLOOR: f64 = 1e-3;

pub const JOST_ZERO_MODULUS_BOUND: f64 = 1e-6;
pub const JOST_ZERO_BOX_RADIUS: f64 = 0.05;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum ScatteringError {
    #[error("{0}")]
    Domain(String),
    #[error("S(s) has a pole at s = {0}")]
    Pole(ComplexArgument),
    #[error("zero at t = {t_n} does not map to a Jost zero: |F+| = {modulus:e}, winding = {winding}")]
    CorrespondenceViolation { t_n: f64, modulus: f64, winding: i64 },
    #[error(transparent)]
    Zeta(#[from] ZetaError),
    #[error(transparent)]
    Zeros(#[from] ZerosError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

pub type Result<T> = std::result::Result<T, ScatteringError>;

/// A value of `S` or `F+`, in log form, with flags for the zeros of the
/// numerator (`zero_flag`) and denominator (`pole_flag`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SMatrixValue {
    pub s: ComplexArgument,
    pub value: SignedLogComplex,
    pub pole_flag: bool,
    pub zero_flag: bool,
}

impl SMatrixValue {
    pub fn is_finite(&self) -> bool {
        !self.pole_flag && self.value.log_modulus().is_finite()
    }
}

/// Coupling `lambda = rho (rho - 1)` of the potential `lambda / y^2` at which
/// the zero-energy Jost function vanishes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CouplingValue {
    pub lambda: Complex64,
    /// `lambda_0 = s (1 - s) = -lambda`, the coupling in the zero-energy
    /// equation `f'' + lambda_0 f / y^2 = 0`.
    pub lambda_zero_energy: Complex64,
    /// `Re lambda > 0`.
    pub repulsive: bool,
    /// `Im lambda != 0`: only possible for a zero off the critical line.
    pub off_line: bool,
}

impl CouplingValue {
    pub fn from_zero(rho: Complex64) -> Self {
        let lambda = if rho.re == 0.5 {
            Complex64::new(-(0.25 + rho.im * rho.im), 0.0)
        } else {
            rho * (rho - 1.0)
        };
        Self {
            lambda,
            lambda_zero_energy: -lambda,
            repulsive: lambda.re > 0.0,
            off_line: lambda.im != 0.0,
        }
    }
}

/// Whether `xi` vanishes at `w`: Newton refinement from `w` must land within
/// [`REFINEMENT_RADIUS`] on a point where the normalized `xi` is below
/// [`ZERO_FLOOR`].
pub fn is_xi_zero(w: ComplexArgument) -> Result<bool> {
    let here = xi_normalized(w)?;
    if here.is_zero() {
        return Ok(true);
    }
    if here.modulus() > CANDIDATE_FLOOR {
        return Ok(false);
    }
    match refine_zero_near(w.s(), REFINEMENT_RADIUS)? {
        Some(z) => Ok(xi_normalized(ComplexArgument::from_complex(z)?)?.modulus() < ZERO_FLOOR),
        None => Ok(false),
    }
}

fn scaled(s: ComplexArgument, factor: f64) -> Result<ComplexArgument> {
    Ok(ComplexArgument::from_complex(s.s() * factor)?)
}

/// `S(s) = xi(2s) / xi(-2s)`.
pub fn s_matrix(s: ComplexArgument) -> Result<SMatrixValue> {
    let plus = scaled(s, 2.0)?;
    let minus = scaled(s, -2.0)?;
    let value = xi(plus)?.div(&xi(minus)?);
    let pole_flag = is_xi_zero(minus)?;
    let zero_flag = !pole_flag && is_xi_zero(plus)?;
    Ok(SMatrixValue { s, value, pole_flag, zero_flag })
}

/// `F+(s) = xi(-2s) / xi(2s) = 1 / S(s)`.
pub fn jost_plus(s: ComplexArgument) -> Result<SMatrixValue> {
    let sm = s_matrix(s)?;
    Ok(SMatrixValue { s, value: sm.value.inv(), pole_flag: sm.zero_flag, zero_flag: sm.pole_flag })
}

/// `S(s)` through the reflected numerator `xi(1 - 2s) / xi(-2s)`.
pub fn s_matrix_reflected(s: ComplexArgument) -> Result<SignedLogComplex> {
    let numerator = scaled(s, 2.0)?.reflect();
    Ok(xi(numerator)?.div(&xi(scaled(s, -2.0)?)?))
}

/// Winding number of `F+` around `rect`.
pub fn jost_plus_winding(rect: &ContourRectangle) -> Result<i64> {
    let mut failure = None;
    let sample = |z: Complex64| -> Result<PolarSample> {
        let s = ComplexArgument::from_complex(z)?;
        let num = xi_normalized(scaled(s, -2.0)?)?;
        let den = xi_normalized(scaled(s, 2.0)?)?;
        // Normalization is positive and real, so it does not affect the phase.
        let phase = xi(scaled(s, -2.0)?)?.div(&xi(scaled(s, 2.0)?)?).phase();
        Ok(PolarSample { log_modulus: num.log_modulus() - den.log_modulus(), phase })
    };
    let n = winding_number_polar(
        |z| match sample(z) {
            Ok(p) => p,
            Err(e) => {
                failure.get_or_insert(e);
                PolarSample { log_modulus: f64::NAN, phase: f64::NAN }
            }
        },
        rect,
        &WindingOptions::default(),
    );
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(n?)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JostZeroCheck {
    pub t_n: f64,
    pub s: ComplexArgument,
    pub modulus: f64,
    pub winding: i64,
    pub passed: bool,
}

/// Evaluate `F+` at `-1/4 + i t_n / 2` and its winding on a box of
/// half-width 0.05 around that point.
pub fn check_jost_zero(t_n: f64) -> Result<JostZeroCheck> {
    if !(t_n > 0.0 && t_n.is_finite()) {
        return Err(ScatteringError::Domain(format!("zero ordinate must be positive, got {t_n}")));
    }
    let s = ComplexArgument::new(-0.25, 0.5 * t_n)?;
    let modulus = jost_plus(s)?.value.modulus();
    let winding = jost_plus_winding(&ContourRectangle::around(s.s(), JOST_ZERO_BOX_RADIUS)?)?;
    let passed = modulus < JOST_ZERO_MODULUS_BOUND && winding == 1;
    Ok(JostZeroCheck { t_n, s, modulus, winding, passed })
}

/// The Jost zero `s = -1/4 + i t_n / 2` predicted for the zeta zero
/// `1/2 + i t_n`, returned only after checking that `F+` really vanishes
/// there (small modulus, unit winding).
pub fn zero_to_jost_zero(t_n: f64) -> Result<ComplexArgument> {
    let check = check_jost_zero(t_n)?;
    if check.passed {
        Ok(check.s)
    } else {
        Err(ScatteringError::CorrespondenceViolation { t_n, modulus: check.modulus, winding: check.winding })
    }
}

/// `lambda = rho (rho - 1)` for `rho = 1/2 + i t_n`, i.e. `-(1/4 + t_n^2)`.
pub fn coupling_at_zero(t_n: f64) -> Result<CouplingValue> {
    if !(t_n > 0.0 && t_n.is_finite()) {
        return Err(ScatteringError::Domain(format!("zero ordinate must be positive, got {t_n}")));
    }
    Ok(CouplingValue::from_zero(Complex64::new(0.5, t_n)))
}

/// `y^{1/2 + s} + S(s) y^{1/2 - s}`.
pub fn flat_wave(s: ComplexArgument, y: f64) -> Result<Complex64> {
    if !(y > 0.0 && y.is_finite()) {
        return Err(ScatteringError::Domain(format!("flat wave needs y > 0, got {y}")));
    }
    let sm = s_matrix(s)?;
    if !sm.is_finite() {
        return Err(ScatteringError::Pole(s));
    }
    let z = s.s();
    let ln_y = y.ln();
    Ok(((0.5 + z) * ln_y).exp() + sm.value.value() * ((0.5 - z) * ln_y).exp())
}
