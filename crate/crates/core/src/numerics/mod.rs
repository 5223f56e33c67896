//! Shared numeric kernels: adaptive quadrature, principal values, bracketed
//! root refinement and argument-principle winding counts.

mod principal_value;
mod quadrature;
mod roots;
mod winding;

pub use principal_value::{principal_value_integral, principal_value_sampled};
pub use quadrature::{
    integrate_adaptive, integrate_adaptive_with, integrate_semi_infinite,
    integrate_semi_infinite_with, QuadOptions, QuadratureResult, DEFAULT_MAX_EVALUATIONS,
};
pub use roots::{find_root_bracketed, BracketInterval};
pub use winding::{
    winding_number, winding_number_polar, ContourRectangle, PolarSample, WindingOptions,
};

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum NumericsError {
    #[error("quadrature budget exhausted after {} evaluations (best estimate {} +/- {})", .best.evaluations, .best.value, .best.error_estimate)]
    BudgetExhausted { best: QuadratureResult },
    #[error("integrand does not decay on the semi-infinite range (tail estimates {0:e} -> {1:e})")]
    Divergent(f64, f64),
    #[error("integrand returned a non-finite value at x = {0}")]
    NonFinite(f64),
    #[error("singular point {c} lies outside the open interval ({a}, {b})")]
    SingularityOutside { c: f64, a: f64, b: f64 },
    #[error("invalid bracket [{lo}, {hi}]")]
    InvalidBracket { lo: f64, hi: f64 },
    #[error("no sign change on [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },
    #[error("invalid contour rectangle [{re_min}, {re_max}] x [{im_min}, {im_max}]")]
    InvalidRectangle { re_min: f64, re_max: f64, im_min: f64, im_max: f64 },
    #[error("function vanishes (or nearly) on the contour near {re} + {im}i")]
    BoundaryZero { re: f64, im: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, NumericsError>;
