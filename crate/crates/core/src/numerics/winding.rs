use std::f64::consts::{FRAC_PI_2, PI, TAU};

use num_complex::Complex64;
use serde::Serialize;

use super::{NumericsError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ContourRectangle {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

impl ContourRectangle {
    pub fn new(re_min: f64, re_max: f64, im_min: f64, im_max: f64) -> Result<Self> {
        let finite = [re_min, re_max, im_min, im_max].iter().all(|v| v.is_finite());
        if finite && re_min < re_max && im_min < im_max {
            Ok(Self { re_min, re_max, im_min, im_max })
        } else {
            Err(NumericsError::InvalidRectangle { re_min, re_max, im_min, im_max })
        }
    }

    /// Square of half-width `radius` centred on `center`.
    pub fn around(center: Complex64, radius: f64) -> Result<Self> {
        Self::new(center.re - radius, center.re + radius, center.im - radius, center.im + radius)
    }

    /// Corners in counter-clockwise order starting at the lower left.
    pub fn corners(&self) -> [Complex64; 4] {
        [
            Complex64::new(self.re_min, self.im_min),
            Complex64::new(self.re_max, self.im_min),
            Complex64::new(self.re_max, self.im_max),
            Complex64::new(self.re_min, self.im_max),
        ]
    }

    pub fn contains(&self, z: Complex64) -> bool {
        z.re > self.re_min && z.re < self.re_max && z.im > self.im_min && z.im < self.im_max
    }
}

/// A function value given by its log-modulus and phase, so that functions
/// which underflow in linear scale can still be tracked around a contour.
/// Any positive rescaling of the modulus leaves the winding unchanged.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarSample {
    pub log_modulus: f64,
    pub phase: f64,
}

impl From<Complex64> for PolarSample {
    fn from(w: Complex64) -> Self {
        Self { log_modulus: w.norm().ln(), phase: w.arg() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindingOptions {
    pub samples_per_side: usize,
    /// Samples whose modulus falls below this are treated as contour zeros.
    pub floor: f64,
    pub max_depth: u32,
}

impl Default for WindingOptions {
    fn default() -> Self {
        Self { samples_per_side: 16, floor: 1e-12, max_depth: 40 }
    }
}

fn wrap(delta: f64) -> f64 {
    let mut d = delta % TAU;
    if d > PI {
        d -= TAU;
    } else if d <= -PI {
        d += TAU;
    }
    d
}

/// Winding number of `g` around the counter-clockwise boundary of `rect`.
pub fn winding_number<G>(mut g: G, rect: &ContourRectangle, samples_per_side: usize) -> Result<i64>
where
    G: FnMut(Complex64) -> Complex64,
{
    let opts = WindingOptions { samples_per_side, ..WindingOptions::default() };
    winding_number_polar(|z| PolarSample::from(g(z)), rect, &opts)
}

/// Winding number from polar samples. Each boundary segment is bisected
/// until consecutive phase steps are below pi/2.
pub fn winding_number_polar<G>(mut g: G, rect: &ContourRectangle, opts: &WindingOptions) -> Result<i64>
where
    G: FnMut(Complex64) -> PolarSample,
{
    if opts.samples_per_side == 0 {
        return Err(NumericsError::InvalidArgument("samples_per_side must be at least 1".into()));
    }
    let log_floor = opts.floor.ln();
    let mut sample = |z: Complex64| -> Result<PolarSample> {
        let s = g(z);
        if s.log_modulus.is_nan() || !s.phase.is_finite() {
            return Err(NumericsError::NonFinite(z.re));
        }
        if s.log_modulus < log_floor {
            return Err(NumericsError::BoundaryZero { re: z.re, im: z.im });
        }
        Ok(s)
    };

    let corners = rect.corners();
    let mut total = 0.0;
    let first = sample(corners[0])?;
    let mut prev_z = corners[0];
    let mut prev = first;
    for side in 0..4 {
        let start = corners[side];
        let end = corners[(side + 1) % 4];
        for k in 1..=opts.samples_per_side {
            let z = if k == opts.samples_per_side {
                end
            } else {
                start + (end - start) * (k as f64 / opts.samples_per_side as f64)
            };
            let cur = if side == 3 && k == opts.samples_per_side { first } else { sample(z)? };
            total += refine(&mut sample, prev_z, prev, z, cur, 0, opts.max_depth)?;
            prev_z = z;
            prev = cur;
        }
    }
    Ok((total / TAU).round() as i64)
}

fn refine<S>(
    sample: &mut S,
    za: Complex64,
    a: PolarSample,
    zb: Complex64,
    b: PolarSample,
    depth: u32,
    max_depth: u32,
) -> Result<f64>
where
    S: FnMut(Complex64) -> Result<PolarSample>,
{
    let delta = wrap(b.phase - a.phase);
    if delta.abs() < FRAC_PI_2 {
        return Ok(delta);
    }
    let zm = 0.5 * (za + zb);
    if depth >= max_depth {
        return Err(NumericsError::BoundaryZero { re: zm.re, im: zm.im });
    }
    let m = sample(zm)?;
    Ok(refine(sample, za, a, zm, m, depth + 1, max_depth)?
        + refine(sample, zm, m, zb, b, depth + 1, max_depth)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn unit_square() -> ContourRectangle {
        ContourRectangle::new(-0.5, 0.5, -0.5, 0.5).unwrap()
    }

    #[test]
    fn simple_and_double_zero() {
        assert_eq!(winding_number(|z| z, &unit_square(), 4).unwrap(), 1);
        assert_eq!(winding_number(|z| z * z, &unit_square(), 4).unwrap(), 2);
        assert_eq!(winding_number(|z| z.inv(), &unit_square(), 4).unwrap(), -1);
        assert_eq!(winding_number(|z| z + 3.0, &unit_square(), 4).unwrap(), 0);
    }

    #[test]
    fn adaptive_refinement_avoids_aliasing() {
        // Initial steps of 7pi/8 are refined down below pi/2.
        let g = |z: Complex64| z.powi(7);
        assert_eq!(winding_number(g, &unit_square(), 4).unwrap(), 7);
    }

    #[test]
    fn boundary_zero_detected() {
        let rect = ContourRectangle::new(0.0, 1.0, -1.0, 1.0).unwrap();
        let err = winding_number(|z| z, &rect, 8).unwrap_err();
        assert!(matches!(err, NumericsError::BoundaryZero { .. }));
    }

    #[test]
    fn rectangle_validation() {
        assert!(ContourRectangle::new(1.0, 0.0, 0.0, 1.0).is_err());
        assert!(ContourRectangle::new(0.0, 1.0, 2.0, 2.0).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn winding_counts_enclosed_roots(
            roots in prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), 1..5)
        ) {
            let rect = ContourRectangle::new(-1.0, 1.0, -1.0, 1.0).unwrap();
            // Keep roots away from the boundary.
            prop_assume!(roots.iter().all(|&(x, y)| (x.abs() - 1.0).abs() > 0.05 && (y.abs() - 1.0).abs() > 0.05));
            let zs: Vec<Complex64> = roots.iter().map(|&(x, y)| Complex64::new(x, y)).collect();
            let expected = zs.iter().filter(|z| rect.contains(**z)).count() as i64;
            let poly = |z: Complex64| zs.iter().fold(Complex64::new(1.0, 0.0), |acc, r| acc * (z - r));
            let n = winding_number(poly, &rect, 8).unwrap();
            prop_assert_eq!(n, expected);
            // Reversing the phase direction negates the count.
            let m = winding_number(|z| poly(z).conj(), &rect, 8).unwrap();
            prop_assert_eq!(m, -expected);
        }
    }
}
