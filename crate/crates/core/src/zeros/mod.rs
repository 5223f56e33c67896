//! Locating and counting nontrivial zeros: sign changes of the real function
//! `xi(1/2 + it)` and argument-principle counts over strip rectangles.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::numerics::{
    find_root_bracketed, winding_number_polar, BracketInterval, ContourRectangle, NumericsError,
    PolarSample, WindingOptions,
};
use crate::zeta::{xi, xi_normalized, zeta, ComplexArgument, SignedLogComplex, ZetaError, T_MAX};

pub const DEFAULT_STEP: f64 = 0.1;
pub const MAX_STEP: f64 = 0.5;
/// Normalized magnitude below which a grid point counts as landing on a zero.
pub const GRID_COLLISION_FLOOR: f64 = 1e-12;
/// Offset applied to rectangle edges that pass through a zero.
pub const EDGE_NUDGE: f64 = 1e-3;
/// A horizontal edge whose normalized line value is below this passes
/// within about 1e-9 of a zero: closer than located ordinates can be
/// trusted, so it is treated as passing through it.
pub const EDGE_ZERO_FLOOR: f64 = 1e-8;
/// Longest contour step, in units of `s`, used when counting.
const CONTOUR_SPACING: f64 = 0.1;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum ZerosError {
    #[error("invalid scan parameters: {0}")]
    InvalidScan(String),
    #[error(transparent)]
    Zeta(#[from] ZetaError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

pub type Result<T> = std::result::Result<T, ZerosError>;

/// A zero `1/2 + i t` located on the critical line.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ZetaZero {
    pub index: usize,
    pub ordinate: f64,
    /// `log |xi(1/2 + i t)|` at the refined ordinate.
    pub log_abs_xi: f64,
    /// `|zeta(1/2 + i t)|` at the refined ordinate.
    pub abs_zeta: f64,
    /// Difference quotient of the normalized `xi` across the final bracket;
    /// nonzero for a simple zero.
    pub slope: f64,
}

/// `xi(1/2 + i t)` as a real number in log form (phase 0 or pi).
pub fn critical_line_function(t: f64) -> Result<SignedLogComplex> {
    Ok(xi(ComplexArgument::new(0.5, t)?)?.to_real())
}

// Sign-carrying, order-one version of xi on the line.
fn normalized_line_value(t: f64) -> Result<f64> {
    Ok(xi_normalized(ComplexArgument::new(0.5, t)?)?.to_real().real_value())
}

fn validate_scan(t_min: f64, t_max: f64, step: f64, tol: f64) -> Result<()> {
    if !(t_min >= 0.0 && t_min < t_max && t_max <= T_MAX) {
        return Err(ZerosError::InvalidScan(format!(
            "need 0 <= t_min < t_max <= {T_MAX}, got [{t_min}, {t_max}]"
        )));
    }
    if !(step > 0.0 && step <= MAX_STEP) {
        return Err(ZerosError::InvalidScan(format!("step must lie in (0, {MAX_STEP}], got {step}")));
    }
    if !(tol > 0.0) {
        return Err(ZerosError::InvalidScan(format!("tolerance must be positive, got {tol}")));
    }
    Ok(())
}

fn scan_grid(t_min: f64, t_max: f64, step: f64, offset: f64) -> Vec<f64> {
    let mut grid = vec![t_min];
    let mut k = 0usize;
    loop {
        let t = t_min + offset + k as f64 * step;
        k += 1;
        if t <= t_min {
            continue;
        }
        if t >= t_max {
            break;
        }
        grid.push(t);
    }
    grid.push(t_max);
    grid
}

/// All sign changes of `xi(1/2 + i t)` on a grid of spacing `step` over
/// `[t_min, t_max]`, each bisected to width `tol`. Grid values are evaluated
/// in parallel; the result is independent of the partition. Pairs of zeros
/// closer than `step` are invisible to the scan; [`verify_scan`] detects them.
pub fn find_zeros(t_min: f64, t_max: f64, step: f64, tol: f64) -> Result<Vec<ZetaZero>> {
    validate_scan(t_min, t_max, step, tol)?;
    let mut offset = 0.0;
    let (grid, values) = loop {
        let grid = scan_grid(t_min, t_max, step, offset);
        let values: Vec<f64> =
            grid.par_iter().map(|&t| normalized_line_value(t)).collect::<Result<_>>()?;
        let collision = values.iter().any(|v| v.abs() < GRID_COLLISION_FLOOR);
        if !collision || offset >= step {
            break (grid, values);
        }
        offset += step / 3.0;
    };

    let brackets: Vec<(f64, f64)> = grid
        .windows(2)
        .zip(values.windows(2))
        .filter(|(_, v)| v[0].signum() != v[1].signum())
        .map(|(g, _)| (g[0], g[1]))
        .collect();

    let mut zeros: Vec<ZetaZero> = brackets
        .par_iter()
        .map(|&(lo, hi)| refine_line_zero(lo, hi, tol))
        .collect::<Result<_>>()?;
    zeros.sort_by(|a, b| a.ordinate.total_cmp(&b.ordinate));
    for (i, z) in zeros.iter_mut().enumerate() {
        z.index = i + 1;
    }
    Ok(zeros)
}

fn refine_line_zero(lo: f64, hi: f64, tol: f64) -> Result<ZetaZero> {
    let mut failure = None;
    let root = find_root_bracketed(
        |t| match normalized_line_value(t) {
            Ok(v) => v,
            Err(e) => {
                failure.get_or_insert(e);
                f64::NAN
            }
        },
        BracketInterval::new(lo, hi)?,
        tol,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    let ordinate = root?;
    let h = tol.max(1e-9);
    let slope = (normalized_line_value(ordinate + h)? - normalized_line_value(ordinate - h)?) / (2.0 * h);
    let s = ComplexArgument::new(0.5, ordinate)?;
    Ok(ZetaZero {
        index: 0,
        ordinate,
        log_abs_xi: xi(s)?.log_modulus(),
        abs_zeta: zeta(s)?.norm(),
        slope,
    })
}

/// Number of zeros of `xi` (with multiplicity) inside `rect`.
pub fn count_zeros_rectangle(rect: &ContourRectangle) -> Result<i64> {
    Ok(count_zeros_rectangle_detailed(rect)?.count)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RectangleCount {
    pub count: i64,
    /// The rectangle actually integrated around, after any edge nudging.
    pub contour: ContourRectangle,
}

/// As [`count_zeros_rectangle`], also reporting the contour used. A
/// rectangle whose edge meets a zero (or passes within [`EDGE_ZERO_FLOOR`]
/// of one on the critical line) is retried with both horizontal edges
/// shifted by `+1e-3`, then `-1e-3`.
pub fn count_zeros_rectangle_detailed(rect: &ContourRectangle) -> Result<RectangleCount> {
    let mut last_err = None;
    let crosses_line = rect.re_min < 0.5 && rect.re_max > 0.5;
    let edge_hits_zero = |t: f64| -> Result<bool> {
        Ok(crosses_line && normalized_line_value(t)?.abs() < EDGE_ZERO_FLOOR)
    };
    for shift in [0.0, EDGE_NUDGE, -EDGE_NUDGE] {
        let contour = ContourRectangle::new(
            rect.re_min,
            rect.re_max,
            rect.im_min + shift,
            rect.im_max + shift,
        )?;
        if edge_hits_zero(contour.im_min)? || edge_hits_zero(contour.im_max)? {
            let t = if edge_hits_zero(contour.im_min)? { contour.im_min } else { contour.im_max };
            last_err = Some(NumericsError::BoundaryZero { re: 0.5, im: t });
            continue;
        }
        match xi_winding(&contour) {
            Ok(count) => return Ok(RectangleCount { count, contour }),
            Err(ZerosError::Numerics(e @ NumericsError::BoundaryZero { .. })) => {
                last_err = Some(e)
            }
            Err(e) => return Err(e),
        }
    }
    Err(last_err.expect("at least one attempt").into())
}

/// Winding number of `xi` around `rect`. The modulus is normalized by the
/// zero-free envelope so that the contour-zero floor means the same thing
/// at every height.
pub fn xi_winding(rect: &ContourRectangle) -> Result<i64> {
    let longest = (rect.re_max - rect.re_min).max(rect.im_max - rect.im_min);
    let opts = WindingOptions {
        samples_per_side: ((longest / CONTOUR_SPACING).ceil() as usize).max(16),
        ..WindingOptions::default()
    };
    let mut failure = None;
    let n = winding_number_polar(
        |z| match ComplexArgument::from_complex(z).and_then(xi_normalized) {
            Ok(v) => PolarSample { log_modulus: v.log_modulus(), phase: v.phase() },
            Err(e) => {
                failure.get_or_insert(e);
                PolarSample { log_modulus: f64::NAN, phase: f64::NAN }
            }
        },
        rect,
        &opts,
    );
    if let Some(e) = failure {
        return Err(e.into());
    }
    Ok(n?)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanVerdict {
    pub line_count: usize,
    pub rectangle_count: i64,
    pub contour: ContourRectangle,
    pub consistent: bool,
}

/// Compare a line scan over `(t_min, t_max)` with the argument-principle
/// count over the strip rectangle `[0, 1] x [t_min, t_max]`. Agreement means
/// no zero was missed by the scan and none lies off the line.
pub fn verify_scan(t_min: f64, t_max: f64, zeros: &[ZetaZero]) -> Result<ScanVerdict> {
    let rect = ContourRectangle::new(0.0, 1.0, t_min, t_max)?;
    let RectangleCount { count, contour } = count_zeros_rectangle_detailed(&rect)?;
    let line_count = zeros
        .iter()
        .filter(|z| z.ordinate > contour.im_min && z.ordinate < contour.im_max)
        .count();
    Ok(ScanVerdict {
        line_count,
        rectangle_count: count,
        contour,
        consistent: count == line_count as i64,
    })
}

/// Newton refinement of a zero of `zeta` in the critical strip, started at
/// `s`. Returns the refined zero if the iteration converges within `radius`
/// of the start.
pub fn refine_zero_near(s: Complex64, radius: f64) -> Result<Option<Complex64>> {
    if !(s.re > 0.0 && s.re < 1.0) {
        return Ok(None);
    }
    let eval = |z: Complex64| -> Result<Complex64> { Ok(zeta(ComplexArgument::from_complex(z)?)?) };
    let mut z = s;
    let h = 1e-6;
    for _ in 0..30 {
        let f = eval(z)?;
        if f.norm() == 0.0 {
            return Ok(Some(z));
        }
        let df = (eval(z + h)? - eval(z - h)?) / (2.0 * h);
        if df.norm() == 0.0 {
            return Ok(None);
        }
        let step = f / df;
        z -= step;
        if (z - s).norm() > radius {
            return Ok(None);
        }
        if step.norm() < 1e-15 * z.norm().max(1.0) {
            break;
        }
    }
    Ok(Some(z))
}

#[cfg(test)]
mod tests {
    use super::*;

    const T1: f64 = 14.134_725_141_734_693;
    const T2: f64 = 21.022_039_638_771_555;
    const T3: f64 = 25.010_857_580_145_688;

    #[test]
    fn line_function_signs() {
        let v0 = critical_line_function(0.0).unwrap();
        assert_eq!(v0.sign_hint(), 1);
        // xi(1/2) = 0.4971207781...
        assert!((v0.real_value() - 0.497_120_778_188_314).abs() < 1e-12);
        let a = critical_line_function(14.0).unwrap();
        let b = critical_line_function(14.2).unwrap();
        assert_ne!(a.sign_hint(), b.sign_hint());
        for t in [3.0, 14.2, 77.7] {
            assert_eq!(critical_line_function(t).unwrap(), critical_line_function(-t).unwrap());
        }
    }

    #[test]
    fn first_three_zeros() {
        let zeros = find_zeros(0.0, 30.0, 0.1, 1e-10).unwrap();
        let ts: Vec<f64> = zeros.iter().map(|z| z.ordinate).collect();
        assert_eq!(ts.len(), 3);
        for (t, exact) in ts.iter().zip([T1, T2, T3]) {
            assert!((t - exact).abs() < 1e-9, "{t} vs {exact}");
        }
        for (i, z) in zeros.iter().enumerate() {
            assert_eq!(z.index, i + 1);
            assert!(z.abs_zeta < 1e-8);
            assert!(z.slope.abs() > 1e-3);
        }
        assert!(find_zeros(0.0, 10.0, 0.1, 1e-10).unwrap().is_empty());
    }

    #[test]
    fn scan_parameter_validation() {
        assert!(find_zeros(0.0, 30.0, 0.6, 1e-10).is_err());
        assert!(find_zeros(10.0, 5.0, 0.1, 1e-10).is_err());
        assert!(find_zeros(0.0, 400.0, 0.1, 1e-10).is_err());
        assert!(find_zeros(0.0, 30.0, 0.1, 0.0).is_err());
    }

    #[test]
    fn rectangle_counts() {
        let count = |a, b, c, d| count_zeros_rectangle(&ContourRectangle::new(a, b, c, d).unwrap()).unwrap();
        assert_eq!(count(0.0, 1.0, 10.0, 15.0), 1);
        assert_eq!(count(0.0, 1.0, 0.0, 10.0), 0);
        assert_eq!(count(2.0, 3.0, 0.0, 50.0), 0);
        assert_eq!(count(0.0, 1.0, 14.0, 15.0), 1);
        assert_eq!(count(0.0, 1.0, 0.0, 30.0), 3);
        // Below the axis the conjugate zeros are counted.
        assert_eq!(count(0.0, 1.0, -30.0, -20.0), 2);
    }

    #[test]
    fn edge_through_zero_is_nudged() {
        let rect = ContourRectangle::new(0.0, 1.0, T1, 22.0).unwrap();
        let detailed = count_zeros_rectangle_detailed(&rect).unwrap();
        assert_ne!(detailed.contour, rect);
        let expected = if detailed.contour.im_min < T1 { 2 } else { 1 };
        assert_eq!(detailed.count, expected);
    }

    #[test]
    fn edges_on_located_ordinates_agree_with_scan() {
        let zeros = find_zeros(0.0, 50.0, 0.1, 1e-12).unwrap();
        for w in zeros.windows(2) {
            let rect = ContourRectangle::new(0.0, 1.0, w[0].ordinate, w[1].ordinate).unwrap();
            let detailed = count_zeros_rectangle_detailed(&rect).unwrap();
            let c = detailed.contour;
            let inside = zeros.iter().filter(|z| z.ordinate > c.im_min && z.ordinate < c.im_max).count();
            assert_eq!(detailed.count, inside as i64, "[{}, {}]", w[0].ordinate, w[1].ordinate);
        }
    }

    #[test]
    fn scan_cross_check() {
        let zeros = find_zeros(10.0, 50.0, 0.1, 1e-10).unwrap();
        let verdict = verify_scan(10.0, 50.0, &zeros).unwrap();
        assert!(verdict.consistent, "{verdict:?}");
        assert_eq!(verdict.line_count, 10);
    }

    #[test]
    fn missed_pair_is_detected() {
        // A scan that skips most of the range still reports the zeros it
        // saw; the rectangle count exposes what it missed.
        let partial: Vec<ZetaZero> = find_zeros(0.0, 30.0, 0.1, 1e-10).unwrap().into_iter().take(1).collect();
        let verdict = verify_scan(0.0, 30.0, &partial).unwrap();
        assert!(!verdict.consistent);
        assert_eq!(verdict.rectangle_count, 3);
    }

    #[test]
    fn newton_refinement() {
        let start = Complex64::new(0.5, 14.134_725_2);
        let z = refine_zero_near(start, 1e-6).unwrap().unwrap();
        assert!((z - Complex64::new(0.5, T1)).norm() < 1e-12);
        assert!(refine_zero_near(Complex64::new(0.5, 17.0), 1e-6).unwrap().is_none());
        assert!(refine_zero_near(Complex64::new(1.5, 14.0), 1e-6).unwrap().is_none());
    }
}
