use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use num_complex::Complex64;
use serde::Serialize;

use super::gamma::log_gamma;
use super::{Result, SpecFunError};
use crate::numerics::{integrate_semi_infinite_with, QuadOptions};

/// Largest `|Re nu|` accepted by [`bessel_k`].
pub const K_MAX_ORDER: f64 = 5.0;
/// Largest argument ever evaluated through the ascending `J` series; beyond
/// it [`hankel1`] relies on the large-argument expansion alone.
pub const HANKEL_SERIES_MAX_ARG: f64 = 30.0;
// Above this the expansion is preferred whenever it reaches full precision;
// the alternating series loses about x / ln 10 digits to cancellation.
const HANKEL_EXPANSION_MIN_ARG: f64 = 12.0;

const INTEGER_ORDER_WINDOW: f64 = 1e-5;
const INTEGER_ORDER_STEP: f64 = 1e-4;

/// Bessel order, possibly complex.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComplexOrder(Complex64);

impl ComplexOrder {
    pub fn new(nu: Complex64) -> Result<Self> {
        if nu.re.is_finite() && nu.im.is_finite() {
            Ok(Self(nu))
        } else {
            Err(SpecFunError::Domain(format!("non-finite order {nu}")))
        }
    }

    pub fn real(nu: f64) -> Result<Self> {
        Self::new(Complex64::new(nu, 0.0))
    }

    pub fn imaginary(mu: f64) -> Result<Self> {
        Self::new(Complex64::new(0.0, mu))
    }

    pub fn nu(&self) -> Complex64 {
        self.0
    }
}

/// `K_nu(y)` from `int_0^inf exp(-y cosh t) cosh(nu t) dt`.
///
/// Real for real and for purely imaginary order.
pub fn bessel_k(nu: ComplexOrder, y: f64) -> Result<Complex64> {
    if !(y > 0.0 && y.is_finite()) {
        return Err(SpecFunError::Domain(format!("K_nu(y) requires y > 0, got {y}")));
    }
    let nu = nu.nu();
    if nu.re.abs() > K_MAX_ORDER {
        return Err(SpecFunError::Range(format!(
            "|Re nu| = {} exceeds the supported {K_MAX_ORDER}",
            nu.re.abs()
        )));
    }
    let integrand = |t: f64| -> Complex64 {
        let damping = y * t.cosh();
        if damping > 745.0 {
            Complex64::new(0.0, 0.0)
        } else {
            (nu * t).cosh() * (-damping).exp()
        }
    };
    let opts = QuadOptions::relative(1e-14, 1e-300);
    Ok(integrate_semi_infinite_with(integrand, 0.0, &opts)?.value)
}

/// `J_nu(x)` by its ascending series.
pub fn bessel_j(nu: Complex64, x: f64) -> Result<Complex64> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(SpecFunError::Domain(format!("J_nu(x) requires x > 0, got {x}")));
    }
    let half = 0.5 * x;
    let quarter_sq = half * half;
    // 1 / Gamma(nu + 1) vanishes at the poles.
    let lead = match log_gamma(nu + 1.0) {
        Ok(lg) => (nu * half.ln() - lg).exp(),
        Err(SpecFunError::Pole(_)) => Complex64::new(0.0, 0.0),
        Err(e) => return Err(e),
    };

    let mut term = lead;
    let mut sum = term;
    let mut k = 0usize;
    if lead == Complex64::new(0.0, 0.0) {
        // Negative integer order: J_{-n} = (-1)^n J_n.
        let n = (-nu.re).round();
        let sign = if n as i64 % 2 == 0 { 1.0 } else { -1.0 };
        return Ok(bessel_j(Complex64::new(n, 0.0), x)? * sign);
    }
    loop {
        k += 1;
        term *= -quarter_sq / (k as f64 * (nu + k as f64));
        sum += term;
        if k as f64 > half && term.norm() <= 1e-17 * sum.norm() {
            break;
        }
        if k > 1000 {
            return Err(SpecFunError::Range(format!("J series did not converge at x = {x}")));
        }
    }
    Ok(sum)
}

/// Hankel function of the first kind, `H1_nu(x)` for real `x > 0`.
///
/// Small arguments go through the `J` series as
/// `(J_{-nu} - e^{-i nu pi} J_nu) / (i sin nu pi)`, with near-integer orders
/// handled by a Richardson-extrapolated symmetric limit in the order. Large
/// arguments use the Hankel expansion.
pub fn hankel1(nu: ComplexOrder, x: f64) -> Result<Complex64> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(SpecFunError::Range(format!("H1_nu(x) requires x > 0, got {x}")));
    }
    let nu = nu.nu();
    if x > HANKEL_SERIES_MAX_ARG {
        return hankel1_asymptotic(nu, x);
    }
    if x > HANKEL_EXPANSION_MIN_ARG {
        if let Ok(h) = hankel1_asymptotic(nu, x) {
            return Ok(h);
        }
    }
    let nearest = Complex64::new(nu.re.round(), 0.0);
    if (nu - nearest).norm() < INTEGER_ORDER_WINDOW {
        let avg = |e: f64| -> Result<Complex64> {
            Ok(0.5 * (hankel1_noninteger(nu + e, x)? + hankel1_noninteger(nu - e, x)?))
        };
        let coarse = avg(INTEGER_ORDER_STEP)?;
        let fine = avg(0.5 * INTEGER_ORDER_STEP)?;
        return Ok((4.0 * fine - coarse) / 3.0);
    }
    hankel1_noninteger(nu, x)
}

fn hankel1_noninteger(nu: Complex64, x: f64) -> Result<Complex64> {
    let i = Complex64::i();
    let j_plus = bessel_j(nu, x)?;
    let j_minus = bessel_j(-nu, x)?;
    let phase = (-i * nu * PI).exp();
    Ok((j_minus - phase * j_plus) / (i * (nu * PI).sin()))
}

/// Large-argument expansion of `H1_nu(x)`; errors when the optimally
/// truncated series cannot reach double precision.
pub fn hankel1_asymptotic(nu: Complex64, x: f64) -> Result<Complex64> {
    let (reduced, _, truncation) = hankel_asymptotic_reduced(nu, x);
    if truncation > 1e-13 {
        return Err(SpecFunError::Range(format!(
            "Hankel expansion too inaccurate at nu = {nu}, x = {x} (truncation {truncation:e})"
        )));
    }
    let omega = Complex64::new(x - FRAC_PI_4, 0.0) - nu * FRAC_PI_2;
    Ok((2.0 / (PI * x)).sqrt() * (Complex64::i() * omega).exp() * reduced)
}

/// The slowly varying factor `R(x) = sum_m i^m a_m(nu) / x^m` of the Hankel
/// expansion, its derivative in `x`, and the modulus of the first omitted
/// term. The series terminates for half-integer order.
pub fn hankel_asymptotic_reduced(nu: Complex64, x: f64) -> (Complex64, Complex64, f64) {
    let four_nu_sq = 4.0 * nu * nu;
    let i = Complex64::i();
    let mut term = Complex64::new(1.0, 0.0);
    let mut value = term;
    let mut derivative = Complex64::new(0.0, 0.0);
    let mut m = 0usize;
    loop {
        m += 1;
        let odd = (2 * m - 1) as f64;
        let next = term * i * (four_nu_sq - odd * odd) / (8.0 * m as f64 * x);
        if next.norm() == 0.0 {
            return (value, derivative, 0.0);
        }
        if next.norm() > term.norm() || m > 400 {
            return (value, derivative, next.norm());
        }
        value += next;
        derivative -= next * (m as f64 / x);
        term = next;
        if term.norm() < 1e-18 * value.norm() {
            return (value, derivative, term.norm());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn real(nu: f64) -> ComplexOrder {
        ComplexOrder::real(nu).unwrap()
    }

    #[test]
    fn half_order_closed_form() {
        let k = bessel_k(real(0.5), 1.0).unwrap();
        let exact = (PI / 2.0).sqrt() * (-1f64).exp();
        assert!((k.re - exact).abs() < 1e-14);
        assert!((k.re - 0.461_068).abs() < 1e-6);
        assert_eq!(k.im, 0.0);
        for y in [0.01, 0.3, 4.0, 25.0] {
            let k = bessel_k(real(0.5), y).unwrap();
            let exact = (PI / (2.0 * y)).sqrt() * (-y).exp();
            assert!((k.re - exact).abs() < 1e-13 * exact, "y = {y}");
        }
    }

    #[test]
    fn order_zero_against_series() {
        // Independent route: K_0(y) = -(ln(y/2) + gamma) I_0(y) + sum (y^2/4)^k / (k!)^2 H_k.
        let y: f64 = 2.0;
        let euler = 0.577_215_664_901_532_860_6;
        let q = y * y / 4.0;
        let (mut i0, mut tail, mut term, mut harmonic) = (1.0, 0.0, 1.0, 0.0);
        for k in 1..60 {
            term *= q / (k * k) as f64;
            harmonic += 1.0 / k as f64;
            i0 += term;
            tail += term * harmonic;
        }
        let series = -((y / 2.0).ln() + euler) * i0 + tail;
        let k0 = bessel_k(real(0.0), y).unwrap();
        assert!((k0.re - series).abs() < 1e-10);
        // K_0(2) = 0.11389387274953...
        assert!((k0.re - 0.113_893_872_749_533).abs() < 1e-13);
    }

    #[test]
    fn imaginary_order_is_real() {
        let k = bessel_k(ComplexOrder::imaginary(1.0).unwrap(), 1.0).unwrap();
        assert_eq!(k.im, 0.0);
        assert!(k.re.is_finite());
    }

    #[test]
    fn domain_and_range_errors() {
        assert!(matches!(bessel_k(real(0.5), 0.0), Err(SpecFunError::Domain(_))));
        assert!(matches!(bessel_k(real(0.5), -1.0), Err(SpecFunError::Domain(_))));
        assert!(matches!(bessel_k(real(5.5), 1.0), Err(SpecFunError::Range(_))));
        assert!(matches!(hankel1(real(0.5), 0.0), Err(SpecFunError::Range(_))));
        assert!(ComplexOrder::real(f64::NAN).is_err());
    }

    #[test]
    fn k_recurrence_residual() {
        for &(nu, y) in &[(0.3, 0.7), (1.2, 2.5), (2.7, 5.0), (0.0, 10.0), (3.5, 1.5)] {
            let kp = bessel_k(real(nu + 1.0), y).unwrap();
            let km = bessel_k(real(nu - 1.0), y).unwrap();
            let k = bessel_k(real(nu), y).unwrap();
            let residual = (kp - km - 2.0 * nu / y * k).norm();
            assert!(residual < 1e-9, "nu = {nu}, y = {y}: {residual:e}");
        }
        let nu = Complex64::new(0.2, 1.3);
        let y = 1.7;
        let at = |d: f64| bessel_k(ComplexOrder::new(nu + d).unwrap(), y).unwrap();
        let residual = (at(1.0) - at(-1.0) - 2.0 * nu / y * at(0.0)).norm();
        assert!(residual < 1e-9);
    }

    #[test]
    fn hankel_half_integer() {
        let x = PI / 2.0;
        let h = hankel1(real(0.5), x).unwrap();
        let exact = -Complex64::i() * (2.0 / (PI * x)).sqrt() * (Complex64::i() * x).exp();
        assert!((h - exact).norm() < 1e-13);
        assert!((h.re - 2.0 / PI).abs() < 1e-13);
        for x in [0.1, 1.0, 7.3, 19.0, 29.0, 45.0] {
            let h = hankel1(real(0.5), x).unwrap();
            assert!((h.norm() - (2.0 / (PI * x)).sqrt()).abs() < 1e-9 * h.norm(), "x = {x}");
        }
    }

    #[test]
    fn hankel_three_halves_against_leading_asymptotics() {
        let nu = 1.5;
        let leading = |x: f64| {
            (2.0 / (PI * x)).sqrt() * (Complex64::i() * (x - nu * PI / 2.0 - PI / 4.0)).exp()
        };
        let h10 = hankel1(real(nu), 10.0).unwrap();
        assert!((h10.norm() / leading(10.0).norm() - 1.0).abs() < 0.02);
        // Deviation from the leading form shrinks with x.
        let mut last = f64::INFINITY;
        for x in [5.0, 10.0, 20.0, 30.0] {
            let dev = (hankel1(real(nu), x).unwrap() / leading(x) - 1.0).norm();
            assert!(dev < last, "x = {x}");
            last = dev;
        }
    }

    #[test]
    fn integer_order_limit() {
        // H1_0(1) = J_0(1) + i Y_0(1)
        let h = hankel1(real(0.0), 1.0).unwrap();
        assert!((h.re - 0.765_197_686_557_966_6).abs() < 1e-9);
        assert!((h.im - 0.088_256_964_215_676_96).abs() < 1e-9);
        // H1_1(2.5) = J_1(2.5) + i Y_1(2.5)
        let h = hankel1(real(1.0), 2.5).unwrap();
        assert!((h.re - 0.497_094_102_464_274_4).abs() < 1e-9);
        assert!((h.im - 0.145_918_137_966_786_5).abs() < 1e-9);
    }

    #[test]
    fn series_and_expansion_agree_where_both_converge() {
        for &nu in &[0.3, 1.5, 2.2] {
            let x = 16.0;
            let series = hankel1_noninteger(Complex64::new(nu, 0.0), x).unwrap();
            let expansion = hankel1_asymptotic(Complex64::new(nu, 0.0), x).unwrap();
            assert!((series - expansion).norm() < 1e-9 * expansion.norm(), "nu = {nu}");
        }
        let nu = Complex64::new(0.0, 1.0);
        let series = hankel1_noninteger(nu, 16.0).unwrap();
        let expansion = hankel1_asymptotic(nu, 16.0).unwrap();
        assert!((series - expansion).norm() < 1e-9 * expansion.norm());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn k_order_symmetry_and_conjugation(re in -3.0f64..3.0, im in -3.0f64..3.0, y in 0.05f64..8.0) {
            let nu = Complex64::new(re, im);
            let k = bessel_k(ComplexOrder::new(nu).unwrap(), y).unwrap();
            let k_neg = bessel_k(ComplexOrder::new(-nu).unwrap(), y).unwrap();
            prop_assert!((k - k_neg).norm() <= 1e-12 * k.norm().max(1e-300));
            let k_conj = bessel_k(ComplexOrder::new(nu.conj()).unwrap(), y).unwrap();
            prop_assert!((k_conj - k.conj()).norm() <= 1e-12 * k.norm().max(1e-300));
        }
    }
}
