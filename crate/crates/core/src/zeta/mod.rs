//! The Riemann zeta function and the completed function
//! `xi(s) = s (s - 1) pi^{-s/2} Gamma(s/2) zeta(s) / 2`, with values of `xi`
//! carried in log form so that its `exp(-pi t / 4)` decay never underflows.

mod euler_maclaurin;

use std::f64::consts::{LN_2, PI, TAU};

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::specfun::{log_gamma, SpecFunError};

/// Lowest real part accepted by [`zeta`] and [`xi`].
pub const SIGMA_MIN: f64 = -10.0;
/// Largest `|Im s|` accepted by [`zeta`] and [`xi`].
pub const T_MAX: f64 = 300.0;

const LN_PI: f64 = 1.144_729_885_849_400_174_143_427_351_353;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum ZetaError {
    #[error("zeta has a pole at s = 1")]
    Pole,
    #[error("argument outside the supported window: {0}")]
    Range(String),
    #[error(transparent)]
    SpecFun(#[from] SpecFunError),
}

pub type Result<T> = std::result::Result<T, ZetaError>;

/// A point `s = sigma + i t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComplexArgument {
    sigma: f64,
    t: f64,
}

impl ComplexArgument {
    pub fn new(sigma: f64, t: f64) -> Result<Self> {
        if sigma.is_finite() && t.is_finite() {
            Ok(Self { sigma, t })
        } else {
            Err(ZetaError::Range(format!("non-finite argument {sigma} + {t}i")))
        }
    }

    pub fn from_complex(s: Complex64) -> Result<Self> {
        Self::new(s.re, s.im)
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn s(&self) -> Complex64 {
        Complex64::new(self.sigma, self.t)
    }

    pub fn conj(&self) -> Self {
        Self { sigma: self.sigma, t: -self.t }
    }

    /// `1 - s`.
    pub fn reflect(&self) -> Self {
        Self { sigma: 1.0 - self.sigma, t: -self.t }
    }
}

impl std::fmt::Display for ComplexArgument {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.s())
    }
}

/// `w = exp(log_modulus + i phase)` with `phase` in `(-pi, pi]`. `sign_hint`
/// is the sign of `Re w`, which is the sign of `w` whenever `w` is known to
/// be real.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SignedLogComplex {
    log_modulus: f64,
    phase: f64,
    sign_hint: i8,
}

fn wrap_phase(phase: f64) -> f64 {
    let p = phase.rem_euclid(TAU);
    if p > PI {
        p - TAU
    } else {
        p
    }
}

impl SignedLogComplex {
    pub fn from_log(log: Complex64) -> Self {
        let phase = if log.re == f64::NEG_INFINITY { 0.0 } else { wrap_phase(log.im) };
        let sign_hint = if phase.cos() >= 0.0 { 1 } else { -1 };
        Self { log_modulus: log.re, phase, sign_hint }
    }

    pub fn from_value(w: Complex64) -> Self {
        Self::from_log(w.ln())
    }

    pub fn zero() -> Self {
        Self { log_modulus: f64::NEG_INFINITY, phase: 0.0, sign_hint: 1 }
    }

    pub fn log_modulus(&self) -> f64 {
        self.log_modulus
    }

    pub fn phase(&self) -> f64 {
        self.phase
    }

    pub fn sign_hint(&self) -> i8 {
        self.sign_hint
    }

    pub fn is_zero(&self) -> bool {
        self.log_modulus == f64::NEG_INFINITY
    }

    pub fn modulus(&self) -> f64 {
        self.log_modulus.exp()
    }

    pub fn log(&self) -> Complex64 {
        Complex64::new(self.log_modulus, self.phase)
    }

    pub fn value(&self) -> Complex64 {
        if self.is_zero() {
            Complex64::new(0.0, 0.0)
        } else {
            self.log().exp()
        }
    }

    /// Signed modulus, for values known to be real.
    pub fn real_value(&self) -> f64 {
        f64::from(self.sign_hint) * self.modulus()
    }

    /// The same value with its phase snapped to 0 or pi.
    pub fn to_real(&self) -> Self {
        let phase = if self.sign_hint > 0 { 0.0 } else { PI };
        Self { phase, ..*self }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::from_log(self.log() + other.log())
    }

    pub fn div(&self, other: &Self) -> Self {
        Self::from_log(self.log() - other.log())
    }

    pub fn inv(&self) -> Self {
        Self::from_log(-self.log())
    }

    pub fn conj(&self) -> Self {
        Self::from_log(self.log().conj())
    }

    /// Multiply by `exp(log_scale)`, a positive real.
    pub fn rescale(&self, log_scale: f64) -> Self {
        Self { log_modulus: self.log_modulus + log_scale, ..*self }
    }
}

fn check_window(s: Complex64) -> Result<()> {
    if !(s.re.is_finite() && s.im.is_finite()) || s.re < SIGMA_MIN || s.im.abs() > T_MAX {
        return Err(ZetaError::Range(format!(
            "s = {s} outside sigma >= {SIGMA_MIN}, |t| <= {T_MAX}"
        )));
    }
    Ok(())
}

/// `zeta(s)`: Euler–Maclaurin for `Re s >= 0`, the functional equation
/// `zeta(s) = 2^s pi^{s-1} sin(pi s / 2) Gamma(1 - s) zeta(1 - s)` below.
pub fn zeta(s: ComplexArgument) -> Result<Complex64> {
    let z = s.s();
    check_window(z)?;
    if z == Complex64::new(1.0, 0.0) {
        return Err(ZetaError::Pole);
    }
    if z.re >= 0.0 {
        return Ok(euler_maclaurin::pole_removed(z) / (z - 1.0));
    }
    if z.im == 0.0 && z.re % 2.0 == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let w = 1.0 - z;
    let log_prefactor = z * LN_2 + (z - 1.0) * LN_PI + log_gamma(w)?;
    let zeta_w = euler_maclaurin::pole_removed(w) / (w - 1.0);
    Ok(log_prefactor.exp() * (0.5 * PI * z).sin() * zeta_w)
}

/// `(s - 1) zeta(s)`, entire; equals 1 at `s = 1`.
pub fn zeta_pole_removed(s: ComplexArgument) -> Result<Complex64> {
    let z = s.s();
    check_window(z)?;
    if z.re >= 0.0 {
        Ok(euler_maclaurin::pole_removed(z))
    } else {
        Ok((z - 1.0) * zeta(s)?)
    }
}

// log xi(s). For Re s >= 0 this is log(pi^{-s/2} Gamma(1 + s/2) (s - 1) zeta(s)),
// which is finite at s = 0 and s = 1. For Re s < 0 the functional equation
// is folded into the gamma factors:
// xi(s) = (1 - s)/2 * 2^s pi^{s/2} Gamma(1 - s) / Gamma(1 - s/2) * (-s) zeta(1 - s).
fn xi_log(z: Complex64) -> Result<Complex64> {
    check_window(z)?;
    if z.re >= 0.0 {
        let core = euler_maclaurin::pole_removed(z);
        Ok(-0.5 * z * LN_PI + log_gamma(1.0 + 0.5 * z)? + core.ln())
    } else {
        let w = 1.0 - z;
        let core = euler_maclaurin::pole_removed(w);
        Ok((0.5 * w).ln() + z * LN_2 + 0.5 * z * LN_PI + log_gamma(w)?
            - log_gamma(1.0 - 0.5 * z)?
            + core.ln())
    }
}

/// The completed function `xi(s)` in log form. Entire: `s = 0` and `s = 1`
/// are ordinary points with `xi = 1/2`.
pub fn xi(s: ComplexArgument) -> Result<SignedLogComplex> {
    Ok(SignedLogComplex::from_log(xi_log(s.s())?))
}

/// `log |pi^{-w/2} Gamma(1 + w/2)|` with `w = s` for `Re s >= 1/2` and
/// `w = 1 - s` otherwise: a smooth, zero-free envelope carrying the
/// exponential decay of `xi` in `|t|`, symmetric under `s -> 1 - s`.
pub fn xi_envelope(s: ComplexArgument) -> Result<f64> {
    let z = s.s();
    check_window(z)?;
    let w = if z.re >= 0.5 { z } else { 1.0 - z };
    Ok((-0.5 * w * LN_PI + log_gamma(1.0 + 0.5 * w)?).re)
}

/// `xi(s)` divided by `exp(xi_envelope(s))`. Its modulus is
/// `|(w - 1) zeta(w)|` with `w` as in [`xi_envelope`], of order one away
/// from zeros at any height, which makes it the natural scale for zero
/// floors.
pub fn xi_normalized(s: ComplexArgument) -> Result<SignedLogComplex> {
    Ok(xi(s)?.rescale(-xi_envelope(s)?))
}

/// `|xi(s) - xi(1 - s)| / (|xi(s)| + |xi(1 - s)|)`.
pub fn xi_symmetry_residual(s: ComplexArgument) -> Result<f64> {
    let a = xi(s)?;
    let b = xi(s.reflect())?;
    let top = a.log_modulus().max(b.log_modulus());
    if top == f64::NEG_INFINITY {
        return Ok(0.0);
    }
    let a = a.rescale(-top).value();
    let b = b.rescale(-top).value();
    Ok((a - b).norm() / (a.norm() + b.norm()))
}
