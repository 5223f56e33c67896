use serde::Serialize;

use super::{NumericsError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BracketInterval {
    lo: f64,
    hi: f64,
}

impl BracketInterval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if lo.is_finite() && hi.is_finite() && lo < hi {
            Ok(Self { lo, hi })
        } else {
            Err(NumericsError::InvalidBracket { lo, hi })
        }
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

/// Bisection on a sign change of `f`, stopping when the bracket is no wider
/// than `tol` (or cannot shrink further in floating point).
pub fn find_root_bracketed<F>(mut f: F, interval: BracketInterval, tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    if !(tol > 0.0) {
        return Err(NumericsError::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    let (mut lo, mut hi) = (interval.lo, interval.hi);
    let mut f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo.is_nan() || f_hi.is_nan() {
        return Err(NumericsError::NonFinite(if f_lo.is_nan() { lo } else { hi }));
    }
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(NumericsError::NoSignChange { lo, hi });
    }

    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid);
        if f_mid.is_nan() {
            return Err(NumericsError::NonFinite(mid));
        }
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
