use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;

use super::{Result, SpecFunError};

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_741_780_329_736_406;
const LN_PI: f64 = 1.144_729_885_849_400_174_143_427_351_353;
const STIRLING_CUTOFF: f64 = 7.0;

// B_{2k} / (2k (2k - 1)) for k = 8 down to 1.
const STIRLING: [f64; 8] = [
    -2.955_065_359_477_124_183e-2,
    6.410_256_410_256_410_256_4e-3,
    -1.917_526_917_526_917_526_9e-3,
    8.417_508_417_508_417_508_4e-4,
    -5.952_380_952_380_952_381e-4,
    7.936_507_936_507_936_507_9e-4,
    -2.777_777_777_777_777_777_8e-3,
    8.333_333_333_333_333_333_3e-2,
];

/// Log-gamma on the branch continuous from the positive real axis (the
/// imaginary part is not reduced modulo 2 pi).
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(SpecFunError::Domain(format!("non-finite argument {z}")));
    }
    if z.im == 0.0 && z.re <= 0.0 && z.re == z.re.floor() {
        return Err(SpecFunError::Pole(z));
    }
    if z.im < 0.0 {
        return Ok(log_gamma_upper(z.conj()).conj());
    }
    Ok(log_gamma_upper(z))
}

// Im z >= 0 from here on.
fn log_gamma_upper(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        reflection(z)
    } else if z.re > STIRLING_CUTOFF || z.im > STIRLING_CUTOFF {
        stirling(z)
    } else {
        recurrence(z)
    }
}

fn stirling(z: Complex64) -> Complex64 {
    let rz = z.inv();
    let rzz = rz * rz;
    let mut poly = Complex64::new(STIRLING[0], 0.0);
    for &c in &STIRLING[1..] {
        poly = poly * rzz + c;
    }
    (z - 0.5) * z.ln() - z + HALF_LN_2PI + rz * poly
}

// Shift upward until Stirling applies. The product of shifts has increasing
// argument; each time it crosses the negative real axis the principal log
// drops by 2 pi i, which is added back.
fn recurrence(z: Complex64) -> Complex64 {
    let mut crossings = 0u32;
    let mut below = false;
    let mut product = z;
    let mut w = z + 1.0;
    while w.re <= STIRLING_CUTOFF {
        product *= w;
        let now_below = product.im.is_sign_negative() && product.im != 0.0;
        if now_below && !below {
            crossings += 1;
        }
        below = now_below;
        w += 1.0;
    }
    stirling(w) - product.ln() - Complex64::new(0.0, 2.0 * PI * crossings as f64)
}

// log Gamma(z) = ln pi - log sin(pi z) - log Gamma(1 - z), with the log of
// sin(pi z) written as -i pi z - ln 2 + i pi/2 + log(1 - e^{2 pi i z}), which
// is continuous on the closed upper half plane away from the integers.
fn reflection(z: Complex64) -> Complex64 {
    let i = Complex64::i();
    let w = (2.0 * PI * i * z).exp();
    let log_sin = -i * PI * z - LN_2 + i * (PI / 2.0) + (Complex64::new(1.0, 0.0) - w).ln();
    LN_PI - log_sin - log_gamma_upper((1.0 - z).conj()).conj()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{integrate_adaptive_with, QuadOptions};
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn integer_and_half_integer_values() {
        let v = log_gamma(c(5.0, 0.0)).unwrap();
        assert!((v.re - 24f64.ln()).abs() < 1e-14 * 24f64.ln());
        assert_eq!(v.im, 0.0);
        let v = log_gamma(c(0.5, 0.0)).unwrap();
        assert!((v.re - 0.5 * PI.ln()).abs() < 1e-14);
        let v = log_gamma(c(1.0, 0.0)).unwrap();
        assert!(v.norm() < 1e-14);
        let v = log_gamma(c(2.0, 0.0)).unwrap();
        assert!(v.norm() < 1e-14);
        // Gamma(171) = 170!
        let lf: f64 = (1..=170).map(|k| (k as f64).ln()).sum();
        let v = log_gamma(c(171.0, 0.0)).unwrap();
        assert!((v.re - lf).abs() < 1e-13 * lf);
    }

    #[test]
    fn negative_real_axis() {
        // Gamma(-1/2) = -2 sqrt(pi): modulus and a phase of -pi on this branch.
        let v = log_gamma(c(-0.5, 0.0)).unwrap();
        assert!((v.re - (2.0 * PI.sqrt()).ln()).abs() < 1e-14);
        assert!((v.im + PI).abs() < 1e-14);
        // Gamma(-2.5) = -8 sqrt(pi) / 15
        let v = log_gamma(c(-2.5, 0.0)).unwrap();
        assert!((v.re - (8.0 * PI.sqrt() / 15.0).ln()).abs() < 1e-13);
        assert!((v.exp().re + 8.0 * PI.sqrt() / 15.0).abs() < 1e-13);
    }

    #[test]
    fn poles_rejected() {
        for x in [0.0, -1.0, -7.0] {
            assert!(matches!(log_gamma(c(x, 0.0)), Err(SpecFunError::Pole(_))));
        }
        assert!(log_gamma(c(-1.0, 1e-9)).is_ok());
    }

    #[test]
    fn imaginary_axis_modulus() {
        // |Gamma(i y)|^2 = pi / (y sinh(pi y))
        for y in [0.5, 3.0, 20.0, 75.0] {
            let v = log_gamma(c(0.0, y)).unwrap();
            let expected = 0.5 * (PI / (y * (PI * y).sinh())).ln();
            assert!((v.re - expected).abs() < 1e-13 * expected.abs().max(1.0), "y = {y}");
        }
    }

    #[test]
    fn integral_representation_oracle() {
        // Gamma(z) = e^{i th z} int_R exp(z u - e^{u + i th}) du, the Euler
        // integral on the ray arg t = th; th near arg(z - 1) avoids cancellation.
        let z = c(1.0, 10.0);
        let th = 1.4;
        let rot = Complex64::from_polar(1.0, th);
        let opts = QuadOptions::absolute(1e-16).with_budget(2_000_000);
        let integral =
            integrate_adaptive_with(|u: f64| (z * u - u.exp() * rot).exp(), -45.0, 7.0, &opts)
                .unwrap();
        let oracle = (Complex64::i() * th * z).exp() * integral.value;
        let g = log_gamma(z).unwrap().exp();
        let rel = (g - oracle).norm() / g.norm();
        assert!(rel < 1e-11, "relative deviation {rel:e}");
    }

    #[test]
    fn continuity_across_branch_regions() {
        // Imaginary part is continuous along horizontal lines crossing the
        // reflection / recurrence / Stirling boundaries.
        for y in [0.3, 2.0, 6.9, 7.1, 40.0] {
            let mut prev = log_gamma(c(-6.3, y)).unwrap();
            let mut x = -6.3;
            while x < 12.0 {
                x += 0.01;
                let cur = log_gamma(c(x, y)).unwrap();
                assert!((cur.im - prev.im).abs() < 0.5, "jump at x = {x}, y = {y}");
                prev = cur;
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn conjugation_symmetry(re in -8.0f64..30.0, im in 0.01f64..150.0) {
            let z = c(re, im);
            let a = log_gamma(z.conj()).unwrap();
            let b = log_gamma(z).unwrap().conj();
            prop_assert!((a - b).norm() <= 1e-13 * b.norm().max(1.0));
        }

        #[test]
        fn recurrence_identity(re in -8.0f64..30.0, im in 0.05f64..100.0) {
            // log Gamma(z + 1) = log Gamma(z) + log z on this branch.
            let z = c(re, im);
            let lhs = log_gamma(z + 1.0).unwrap();
            let rhs = log_gamma(z).unwrap() + z.ln();
            prop_assert!((lhs - rhs).norm() <= 1e-12 * lhs.norm().max(1.0), "{} vs {}", lhs, rhs);
        }
    }
}
