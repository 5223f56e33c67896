//! Truncated Hadamard product of `xi` over a catalog of critical-line zeros,
//!
//! `xi(z) = z^m e^{A + B z} prod_rho (1 - z/rho) e^{z/rho}`,
//!
//! with `A` and `B` fitted from `xi` itself and each ordinate `t` supplying
//! the conjugate pair `1/2 +- i t`.

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::zeros::{find_zeros, ZerosError, ZetaZero};
use crate::zeta::{xi, ComplexArgument, ZetaError, T_MAX};

/// Step of the central difference for `B`; a second difference at half the
/// step is Richardson-combined with it.
pub const DERIVATIVE_STEP: f64 = 1e-5;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum HadamardError {
    #[error("invalid zero catalog: {0}")]
    InvalidCatalog(String),
    #[error("requested {requested} zeros but the catalog holds {available}")]
    CatalogTooSmall { requested: usize, available: usize },
    #[error("{0}")]
    Domain(String),
    #[error(transparent)]
    Zeta(#[from] ZetaError),
    #[error(transparent)]
    Zeros(#[from] ZerosError),
}

pub type Result<T> = std::result::Result<T, HadamardError>;

/// `m` is the order of the zero at the origin, so 0 for `xi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HadamardParams {
    pub m: u32,
    pub a: Complex64,
    pub b: Complex64,
}

/// Increasing positive ordinates `t_n` of zeros `1/2 + i t_n`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZeroCatalog {
    ordinates: Vec<f64>,
}

impl ZeroCatalog {
    pub fn new(ordinates: Vec<f64>) -> Result<Self> {
        if ordinates.is_empty() {
            return Err(HadamardError::InvalidCatalog("no ordinates".into()));
        }
        if ordinates.iter().any(|t| !(t.is_finite() && *t > 0.0)) {
            return Err(HadamardError::InvalidCatalog("ordinates must be positive and finite".into()));
        }
        if ordinates.windows(2).any(|w| w[1] <= w[0]) {
            return Err(HadamardError::InvalidCatalog("ordinates must be strictly increasing".into()));
        }
        Ok(Self { ordinates })
    }

    pub fn from_zeros(zeros: &[ZetaZero]) -> Result<Self> {
        Self::new(zeros.iter().map(|z| z.ordinate).collect())
    }

    /// The first `count` zeros, found by scanning the critical line.
    pub fn compute(count: usize) -> Result<Self> {
        if count == 0 {
            return Err(HadamardError::InvalidCatalog("no ordinates requested".into()));
        }
        // Riemann–von Mangoldt estimate plus a margin, grown until enough
        // zeros turn up.
        let mut height = 20.0;
        while riemann_von_mangoldt(height) < count as f64 + 5.0 {
            height += 10.0;
        }
        loop {
            let height_now = height.min(T_MAX);
            let zeros = find_zeros(0.0, height_now, 0.05, 1e-12)?;
            if zeros.len() >= count {
                return Self::from_zeros(&zeros[..count]);
            }
            if height_now >= T_MAX {
                return Err(HadamardError::CatalogTooSmall { requested: count, available: zeros.len() });
            }
            height += 20.0;
        }
    }

    pub fn ordinates(&self) -> &[f64] {
        &self.ordinates
    }

    pub fn len(&self) -> usize {
        self.ordinates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ordinates.is_empty()
    }
}

fn riemann_von_mangoldt(t: f64) -> f64 {
    let x = t / (2.0 * std::f64::consts::PI);
    x * x.ln() - x + 0.875
}

/// `A = log f(0)` and `B = (log f)'(0)` for a function given in log form.
pub fn fit_constants<F>(log_f: F) -> Result<HadamardParams>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let a = log_f(Complex64::new(0.0, 0.0))?;
    let difference = |h: f64| -> Result<Complex64> {
        Ok((log_f(Complex64::new(h, 0.0))? - log_f(Complex64::new(-h, 0.0))?) / (2.0 * h))
    };
    let coarse = difference(DERIVATIVE_STEP)?;
    let fine = difference(0.5 * DERIVATIVE_STEP)?;
    let b = (4.0 * fine - coarse) / 3.0;
    // Both logs are real up to a branch multiple of 2 pi i in the phase.
    let a = Complex64::new(a.re, 0.0);
    Ok(HadamardParams { m: 0, a, b: Complex64::new(b.re, 0.0) })
}

fn xi_log(z: Complex64) -> Result<Complex64> {
    Ok(xi(ComplexArgument::from_complex(z)?)?.log())
}

/// [`fit_constants`] applied to `xi`.
pub fn fit_xi_constants() -> Result<HadamardParams> {
    fit_constants(xi_log)
}

/// Log of the pair factor for the ordinate `t`:
/// `(1 - z/rho)(1 - z/conj rho) e^{z (1/rho + 1/conj rho)}` with
/// `rho = 1/2 + i t`, i.e. `((z - 1/2)^2 + t^2) / (1/4 + t^2) * e^{z / (1/4 + t^2)}`.
/// `None` when `z` is one of the two zeros.
fn pair_log(z: Complex64, t: f64) -> Option<Complex64> {
    let shifted = z - 0.5;
    let norm_sq = 0.25 + t * t;
    let numerator = shifted * shifted + t * t;
    if numerator == Complex64::new(0.0, 0.0) {
        return None;
    }
    Some((numerator / norm_sq).ln() + z / norm_sq)
}

/// Hadamard product over the first `n` ordinates of `catalog`, evaluated in
/// log space. Exactly zero at a catalog zero and at the origin when `m > 0`.
pub fn hadamard_partial(params: &HadamardParams, catalog: &ZeroCatalog, z: Complex64, n: usize) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(HadamardError::Domain(format!("z must be finite, got {z}")));
    }
    if n > catalog.len() {
        return Err(HadamardError::CatalogTooSmall { requested: n, available: catalog.len() });
    }
    let zero = Complex64::new(0.0, 0.0);
    let mut log = params.a + params.b * z;
    if params.m > 0 {
        if z == zero {
            return Ok(zero);
        }
        log += params.m as f64 * z.ln();
    }
    for &t in &catalog.ordinates[..n] {
        match pair_log(z, t) {
            Some(l) => log += l,
            None => return Ok(zero),
        }
    }
    Ok(log.exp())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConvergencePoint {
    pub n: usize,
    pub value: Complex64,
    /// `|P_N(z) - xi(z)| / |xi(z)|`.
    pub residual: f64,
}

/// Relative error of the truncated product against `xi(z)` for each `N`.
pub fn convergence_profile(
    params: &HadamardParams,
    catalog: &ZeroCatalog,
    z: Complex64,
    n_list: &[usize],
) -> Result<Vec<ConvergencePoint>> {
    let direct = xi(ComplexArgument::from_complex(z)?)?;
    if direct.is_zero() {
        return Err(HadamardError::Domain(format!("xi vanishes at {z}; relative residual undefined")));
    }
    let direct_value = direct.value();
    n_list
        .iter()
        .map(|&n| {
            let value = hadamard_partial(params, catalog, z, n)?;
            let residual = (value - direct_value).norm() / direct_value.norm();
            Ok(ConvergencePoint { n, value, residual })
        })
        .collect()
}

/// Size of the omitted pair factors beyond the first `n` ordinates, from
/// the leading `z^2` term of each log pair factor: roughly
/// `|z - 1/2|^2 sum_{k > n} 1 / t_k^2`, with the tail sum continued past
/// the catalog by the zero density `log(t / 2 pi) / 2 pi`.
pub fn truncation_estimate(catalog: &ZeroCatalog, z: Complex64, n: usize) -> Result<f64> {
    if n == 0 || n > catalog.len() {
        return Err(HadamardError::CatalogTooSmall { requested: n, available: catalog.len() });
    }
    let known: f64 = catalog.ordinates[n..].iter().map(|t| 1.0 / (t * t)).sum();
    let top = *catalog.ordinates.last().expect("non-empty catalog");
    // int_T^inf log(t / 2 pi) / (2 pi t^2) dt = (log(T / 2 pi) + 1) / (2 pi T)
    let two_pi = 2.0 * std::f64::consts::PI;
    let continued = ((top / two_pi).ln() + 1.0) / (two_pi * top);
    Ok((z - 0.5).norm_sqr() * (known + continued))
}
