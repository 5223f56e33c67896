//! Complex special functions: log-gamma, modified Bessel `K` of complex
//! order and the Hankel function of the first kind.

mod bessel;
mod gamma;

pub use bessel::{
    bessel_j, bessel_k, hankel1, hankel1_asymptotic, hankel_asymptotic_reduced, ComplexOrder,
    HANKEL_SERIES_MAX_ARG, K_MAX_ORDER,
};
pub use gamma::log_gamma;

use num_complex::Complex64;
use thiserror::Error;

use crate::numerics::NumericsError;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum SpecFunError {
    #[error("pole of the gamma function at {0}")]
    Pole(Complex64),
    #[error("argument outside the domain: {0}")]
    Domain(String),
    #[error("argument outside the supported range: {0}")]
    Range(String),
    #[error(transparent)]
    Quadrature(#[from] NumericsError),
}

pub type Result<T> = std::result::Result<T, SpecFunError>;
