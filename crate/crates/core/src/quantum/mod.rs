//! The inverse-square potential `lambda / y^2` behind an infinite barrier at
//! `y <= 0`: zero-energy solutions, the Hankel Jost solution and a direct ODE
//! check of it, the `K`-Bessel moment integral, and the reality residual for
//! the coupling at imaginary momentum.

mod ode;

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::numerics::{integrate_semi_infinite_with, NumericsError, QuadOptions, QuadratureResult};
use crate::specfun::{bessel_k, hankel1, hankel_asymptotic_reduced, log_gamma, ComplexOrder, SpecFunError};

/// Inward integration never goes below this `y`.
pub const ODE_MIN_Y: f64 = 1e-3;
/// Largest `|f e^{-iky} - 1|` accepted at the starting point of the ODE.
pub const ODE_START_RESIDUAL: f64 = 1e-3;
// The series start must itself be this accurate.
const ODE_START_TRUNCATION: f64 = 1e-12;
const ODE_MAX_STEPS: usize = 500_000;
const ODE_TOLERANCES: ode::Tolerances = ode::Tolerances { rel: 1e-12, abs: 1e-15 };

/// `|2s - 1|` below which the second zero-energy solution uses its series.
pub const CRITICAL_SERIES_WINDOW: f64 = 1e-4;
/// Coefficient of `pi nu / sin(pi nu)` quoted alongside the moment integral.
pub const QUOTED_MOMENT_COEFFICIENT: f64 = 0.125;
/// The coefficient the quadrature actually produces.
pub const MOMENT_COEFFICIENT: f64 = 0.5;

// Below this K_nu is replaced by its two leading small-argument terms.
const K_SMALL_ARG: f64 = 1e-150;
const MOMENT_OPTIONS: QuadOptions = QuadOptions { abs_tol: 1e-300, rel_tol: 1e-11, max_evaluations: 200_000 };
// The normalization in the reality residual only needs to be finite; for
// large imaginary order K_nu carries ~1e-6 relative cancellation noise, so
// the budget is kept small and the best estimate accepted.
const NORMALIZATION_OPTIONS: QuadOptions = QuadOptions { abs_tol: 1e-300, rel_tol: 1e-8, max_evaluations: 20_000 };

#[derive(Debug, Clone, Error, PartialEq)]
pub enum QuantumError {
    #[error("y = {0} lies behind the infinite barrier (y <= 0)")]
    Barrier(f64),
    #[error("{0}")]
    Domain(String),
    #[error("integral of y K_nu(y)^2 diverges at the origin for nu = {0} (|Re nu| >= 1)")]
    Divergent(Complex64),
    #[error("pi nu / sin(pi nu) has a pole at nu = {0}")]
    Pole(Complex64),
    #[error("inward integration stopped at y = {y}: {reason}")]
    IntegrationLimit { y: f64, reason: String },
    #[error(transparent)]
    SpecFun(#[from] SpecFunError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

pub type Result<T> = std::result::Result<T, QuantumError>;

fn check_finite(z: Complex64, what: &str) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(QuantumError::Domain(format!("{what} must be finite, got {z}")))
    }
}

fn check_positive(x: f64, what: &str) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(QuantumError::Domain(format!("{what} must be positive and finite, got {x}")))
    }
}

/// `lambda` and `nu = sqrt(lambda + 1/4)` on the branch `Re nu >= 0`
/// (`Im nu >= 0` when `nu` is purely imaginary).
///
/// Two sign conventions meet here: `lambda = s (s - 1)` is the coupling of
/// `V = lambda / y^2`, and `lambda_0 = s (1 - s) = -lambda` is the one in
/// `f'' + lambda_0 f / y^2 = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OrderParameter {
    pub lambda: Complex64,
    pub nu: Complex64,
}

impl OrderParameter {
    pub fn from_lambda(lambda: Complex64) -> Result<Self> {
        check_finite(lambda, "coupling")?;
        Ok(Self { lambda, nu: canonical_nu((lambda + 0.25).sqrt()) })
    }

    /// Either sign of `nu` gives the same coupling; the stored one is
    /// canonical.
    pub fn from_nu(nu: Complex64) -> Result<Self> {
        check_finite(nu, "order")?;
        let nu = canonical_nu(nu);
        Ok(Self { lambda: nu * nu - 0.25, nu })
    }

    /// `lambda = s (s - 1)`.
    pub fn from_s(s: Complex64) -> Result<Self> {
        check_finite(s, "s")?;
        Ok(Self { lambda: s * (s - 1.0), nu: canonical_nu(s - 0.5) })
    }

    pub fn lambda_zero_energy(&self) -> Complex64 {
        -self.lambda
    }
}

fn canonical_nu(nu: Complex64) -> Complex64 {
    if nu.re < 0.0 || (nu.re == 0.0 && nu.im < 0.0) {
        -nu
    } else {
        // Normalizes -0.0 components.
        nu + 0.0
    }
}

/// Coupling of `V(y) = lambda / y^2`; the barrier region `y <= 0` is fixed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PotentialSpec {
    pub lambda: Complex64,
}

impl PotentialSpec {
    pub fn new(lambda: Complex64) -> Result<Self> {
        check_finite(lambda, "coupling")?;
        Ok(Self { lambda })
    }

    pub fn from_s(s: Complex64) -> Result<Self> {
        Self::new(OrderParameter::from_s(s)?.lambda)
    }

    pub fn order(&self) -> OrderParameter {
        // lambda was validated on construction.
        OrderParameter::from_lambda(self.lambda).expect("finite coupling")
    }
}

/// `V(y) = lambda / y^2`; infinite (an error) behind the barrier.
pub fn potential(spec: &PotentialSpec, y: f64) -> Result<Complex64> {
    if y.is_nan() || y <= 0.0 {
        return Err(QuantumError::Barrier(y));
    }
    Ok(spec.lambda / (y * y))
}

/// `sinh(z) / z`.
fn sinhc(z: Complex64) -> Complex64 {
    if z.norm() < 0.1 {
        let z2 = z * z;
        // Terms through z^12 / 13!; the next is below 1e-24.
        let mut sum = Complex64::new(1.0, 0.0);
        let mut term = Complex64::new(1.0, 0.0);
        for n in 1..=6 {
            term *= z2 / ((2 * n) as f64 * (2 * n + 1) as f64);
            sum += term;
        }
        sum
    } else {
        z.sinh() / z
    }
}

/// The solutions `(1/2)(y^s + y^{1-s})` and `(y^s - y^{1-s}) / (2s - 1)` of
/// `f'' + s (1 - s) f / y^2 = 0`. They stay independent at `s = 1/2`, where
/// they become `y^{1/2}` and `y^{1/2} log y`.
pub fn zero_energy_solutions(s: Complex64, y: f64) -> Result<(Complex64, Complex64)> {
    check_finite(s, "s")?;
    if y.is_nan() || y <= 0.0 {
        return Err(QuantumError::Barrier(y));
    }
    if !y.is_finite() {
        return Err(QuantumError::Domain(format!("y must be finite, got {y}")));
    }
    let ln_y = y.ln();
    let d = s - 0.5;
    let z = d * ln_y;
    let root = y.sqrt();
    let first = root * z.cosh();
    let second = if (2.0 * d).norm() < CRITICAL_SERIES_WINDOW {
        root * ln_y * sinhc(z)
    } else {
        ((s * ln_y).exp() - ((1.0 - s) * ln_y).exp()) / (2.0 * d)
    };
    Ok((first, second))
}

fn is_half(nu: Complex64) -> bool {
    nu * nu == Complex64::new(0.25, 0.0)
}

/// `f(k, y) e^{-iky}`: the factor that tends to 1 at large `ky`.
fn jost_reduced(k: f64, nu: Complex64, y: f64) -> Result<Complex64> {
    check_positive(k, "momentum")?;
    check_positive(y, "y")?;
    check_finite(nu, "order")?;
    if is_half(nu) {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let x = k * y;
    let (reduced, _, truncation) = hankel_asymptotic_reduced(nu, x);
    if x > 12.0 && truncation <= 1e-13 {
        return Ok(reduced);
    }
    Ok(jost_from_hankel(nu, x)? * Complex64::new(0.0, -x).exp())
}

fn jost_from_hankel(nu: Complex64, x: f64) -> Result<Complex64> {
    let h = hankel1(ComplexOrder::new(nu)?, x)?;
    let phase = (Complex64::i() * (nu * FRAC_PI_2 + FRAC_PI_4)).exp();
    Ok((PI * x / 2.0).sqrt() * phase * h)
}

/// `f(k, y) = sqrt(pi k y / 2) e^{i (pi nu / 2 + pi / 4)} H1_nu(k y)`, the
/// solution of `f'' + (k^2 - (nu^2 - 1/4) / y^2) f = 0` that behaves like
/// `e^{iky}` at large `y`.
pub fn jost_solution_analytic(k: f64, nu: Complex64, y: f64) -> Result<Complex64> {
    check_positive(k, "momentum")?;
    check_positive(y, "y")?;
    check_finite(nu, "order")?;
    let x = k * y;
    if is_half(nu) {
        return Ok(Complex64::new(0.0, x).exp());
    }
    if x > 12.0 {
        let (reduced, _, truncation) = hankel_asymptotic_reduced(nu, x);
        if truncation <= 1e-13 {
            return Ok(Complex64::new(0.0, x).exp() * reduced);
        }
    }
    jost_from_hankel(nu, x)
}

/// `|f(k, y) e^{-iky} - 1|`.
pub fn asymptotic_residual(k: f64, nu: Complex64, y: f64) -> Result<f64> {
    Ok((jost_reduced(k, nu, y)? - 1.0).norm())
}

/// Initial data at `y_start`: the Hankel expansion of the Jost solution and
/// its derivative, so the integration starts on the Jost solution itself
/// rather than on its leading term `e^{iky}`.
fn ode_start(k: f64, order: &OrderParameter, y_start: f64) -> Result<ode::State> {
    let x = k * y_start;
    let (reduced, d_reduced, truncation) = hankel_asymptotic_reduced(order.nu, x);
    let residual = (reduced - 1.0).norm();
    if residual >= ODE_START_RESIDUAL || truncation > ODE_START_TRUNCATION {
        return Err(QuantumError::Domain(format!(
            "k y_start = {x} is too small to start on the asymptotic solution \
             (|f e^(-iky) - 1| = {residual:e}, truncation {truncation:e})"
        )));
    }
    let wave = Complex64::new(0.0, x).exp();
    Ok([wave * reduced, wave * k * (Complex64::i() * reduced + d_reduced)])
}

fn ode_failure(failure: ode::StepFailure) -> QuantumError {
    match failure {
        ode::StepFailure::Underflow(y) => {
            QuantumError::IntegrationLimit { y, reason: "step size underflow".into() }
        }
        ode::StepFailure::Budget(y) => {
            QuantumError::IntegrationLimit { y, reason: format!("more than {ODE_MAX_STEPS} steps") }
        }
    }
}

fn check_ode_range(k: f64, y_end: f64, y_start: f64) -> Result<()> {
    check_positive(k, "momentum")?;
    check_positive(y_start, "y_start")?;
    if !(y_end > 0.0 && y_end < y_start) {
        return Err(QuantumError::Domain(format!("need 0 < y_end < y_start, got {y_end}, {y_start}")));
    }
    Ok(())
}

/// Integrate `f'' = (lambda / y^2 - k^2) f` inward from `y_start` to `y_end`
/// by Dormand–Prince 5(4), returning every accepted step as `(y, f)`.
///
/// The integration refuses to go below [`ODE_MIN_Y`]: asking for a smaller
/// `y_end` integrates down to that limit and then fails.
pub fn jost_solution_ode(k: f64, lambda: Complex64, y_end: f64, y_start: f64) -> Result<Vec<(f64, Complex64)>> {
    check_ode_range(k, y_end, y_start)?;
    let order = OrderParameter::from_lambda(lambda)?;
    let start = ode_start(k, &order, y_start)?;
    let q = move |y: f64| lambda / (y * y) - k * k;
    let target = y_end.max(ODE_MIN_Y);
    let mut samples = vec![(y_start, start[0])];
    ode::integrate(q, y_start, start, target, ODE_TOLERANCES, ODE_MAX_STEPS, |y, s| samples.push((y, s[0])))
        .map_err(ode_failure)?;
    if y_end < ODE_MIN_Y {
        return Err(QuantumError::IntegrationLimit {
            y: ODE_MIN_Y,
            reason: format!("requested y_end = {y_end} is below the singular-potential limit"),
        });
    }
    Ok(samples)
}

/// Like [`jost_solution_ode`], but report the solution exactly at `points`
/// (any order, all in `(0, y_start)`).
pub fn jost_solution_ode_at(k: f64, lambda: Complex64, y_start: f64, points: &[f64]) -> Result<Vec<(f64, Complex64)>> {
    let mut order_idx: Vec<usize> = (0..points.len()).collect();
    order_idx.sort_by(|&a, &b| points[b].total_cmp(&points[a]));
    let lowest = order_idx.last().map(|&i| points[i]).unwrap_or(y_start * 0.5);
    check_ode_range(k, lowest, y_start)?;
    if lowest < ODE_MIN_Y {
        return Err(QuantumError::IntegrationLimit {
            y: ODE_MIN_Y,
            reason: format!("requested y = {lowest} is below the singular-potential limit"),
        });
    }
    let order = OrderParameter::from_lambda(lambda)?;
    let mut state = ode_start(k, &order, y_start)?;
    let q = move |y: f64| lambda / (y * y) - k * k;
    let mut y = y_start;
    let mut out = vec![(0.0, Complex64::new(0.0, 0.0)); points.len()];
    for i in order_idx {
        let target = points[i];
        if target < y {
            state = ode::integrate(q, y, state, target, ODE_TOLERANCES, ODE_MAX_STEPS, |_, _| {})
                .map_err(ode_failure)?;
            y = target;
        }
        out[i] = (target, state[0]);
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JostComparisonPoint {
    pub y: f64,
    pub ode: Complex64,
    pub analytic: Complex64,
    pub relative_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JostVerification {
    pub lambda: Complex64,
    pub nu: Complex64,
    pub k: f64,
    pub y_start: f64,
    pub max_relative_error: f64,
    pub points: Vec<JostComparisonPoint>,
}

/// Compare the ODE solution with the Hankel form at `n` points spread
/// evenly over `[y_min, y_max]`.
pub fn verify_jost_solution(lambda: Complex64, k: f64, y_min: f64, y_max: f64, n: usize) -> Result<JostVerification> {
    check_positive(k, "momentum")?;
    check_positive(y_min, "y_min")?;
    if !(y_max > y_min && y_max.is_finite()) || n < 2 {
        return Err(QuantumError::Domain(format!("need y_min < y_max and n >= 2, got [{y_min}, {y_max}], {n}")));
    }
    let order = OrderParameter::from_lambda(lambda)?;
    // Far enough out that the start is admissible and the expansion exact
    // to double precision.
    let mut y_start = (2.0 * y_max).max(60.0 / k);
    loop {
        let (reduced, _, truncation) = hankel_asymptotic_reduced(order.nu, k * y_start);
        if truncation <= ODE_START_TRUNCATION && (reduced - 1.0).norm() < ODE_START_RESIDUAL {
            break;
        }
        y_start *= 2.0;
        if y_start > 1e6 / k {
            return Err(QuantumError::Domain(format!("no usable starting point for nu = {}", order.nu)));
        }
    }
    let ys: Vec<f64> = (0..n).map(|i| y_min + (y_max - y_min) * i as f64 / (n - 1) as f64).collect();
    let solved = jost_solution_ode_at(k, lambda, y_start, &ys)?;
    let mut points = Vec::with_capacity(n);
    let mut max_relative_error: f64 = 0.0;
    for (y, ode_value) in solved {
        let analytic = jost_solution_analytic(k, order.nu, y)?;
        let relative_error = (ode_value - analytic).norm() / analytic.norm();
        max_relative_error = max_relative_error.max(relative_error);
        points.push(JostComparisonPoint { y, ode: ode_value, analytic, relative_error });
    }
    Ok(JostVerification { lambda, nu: order.nu, k, y_start, max_relative_error, points })
}

fn nonzero_integer(nu: Complex64) -> bool {
    nu.im == 0.0 && nu.re != 0.0 && nu.re.fract() == 0.0
}

fn check_moment_order(nu: Complex64) -> Result<()> {
    check_finite(nu, "order")?;
    if nonzero_integer(nu) {
        return Err(QuantumError::Pole(nu));
    }
    if nu.re.abs() >= 1.0 {
        return Err(QuantumError::Divergent(nu));
    }
    Ok(())
}

/// `K_nu(y)`, switching to the leading small-argument terms where the
/// integral representation would overflow.
fn k_bessel(order: ComplexOrder, y: f64) -> Result<Complex64> {
    if y >= K_SMALL_ARG {
        return Ok(bessel_k(order, y)?);
    }
    let nu = order.nu();
    let ln_half = (0.5 * y).ln();
    if nu.norm() < 1e-8 {
        return Ok(Complex64::new(-ln_half - 0.577_215_664_901_532_9, 0.0));
    }
    let plus = (log_gamma(nu)? - nu * ln_half).exp();
    let minus = (log_gamma(-nu)? + nu * ln_half).exp();
    Ok(0.5 * (plus + minus))
}

fn moment_quadrature<F>(nu: Complex64, weight: F, opts: &QuadOptions) -> Result<QuadratureResult>
where
    F: Fn(Complex64) -> Complex64,
{
    let order = ComplexOrder::new(nu)?;
    let mut failure = None;
    let integrand = |y: f64| -> Complex64 {
        match k_bessel(order, y) {
            Ok(kv) => y * weight(kv),
            Err(e) => {
                failure.get_or_insert(e);
                Complex64::new(0.0, 0.0)
            }
        }
    };
    let result = integrate_semi_infinite_with(integrand, 0.0, opts);
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(result?)
}

/// `int_0^inf y K_nu(y)^2 dy` by quadrature.
pub fn k_moment_integral(nu: Complex64) -> Result<QuadratureResult> {
    check_moment_order(nu)?;
    moment_quadrature(nu, |kv| kv * kv, &MOMENT_OPTIONS)
}

/// `coefficient * pi nu / sin(pi nu)`, equal to `coefficient` at `nu = 0`.
pub fn k_moment_closed_form(nu: Complex64, coefficient: f64) -> Result<Complex64> {
    check_finite(nu, "order")?;
    if nonzero_integer(nu) {
        return Err(QuantumError::Pole(nu));
    }
    let x = PI * nu;
    let ratio = if x.norm() < 1e-4 {
        let x2 = x * x;
        1.0 + x2 / 6.0 + 7.0 * x2 * x2 / 360.0
    } else {
        x / x.sin()
    };
    Ok(coefficient * ratio)
}

/// The moment integral at one order, with the coefficient of
/// `pi nu / sin(pi nu)` it implies.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MomentFit {
    pub nu: Complex64,
    pub integral: QuadratureResult,
    pub fitted_coefficient: Complex64,
    pub quoted_coefficient: f64,
    /// The fit differs from [`QUOTED_MOMENT_COEFFICIENT`] by more than 1e-6.
    pub discrepancy: bool,
}

pub fn fit_moment_coefficient(nu: Complex64) -> Result<MomentFit> {
    let integral = k_moment_integral(nu)?;
    let fitted_coefficient = integral.value / k_moment_closed_form(nu, 1.0)?;
    Ok(MomentFit {
        nu,
        integral,
        fitted_coefficient,
        quoted_coefficient: QUOTED_MOMENT_COEFFICIENT,
        discrepancy: (fitted_coefficient - QUOTED_MOMENT_COEFFICIENT).norm() > 1e-6,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KhuriResidual {
    pub lambda: Complex64,
    pub tau: f64,
    pub nu: Complex64,
    /// `(2 / pi)(1 / tau) int_0^inf y |K_nu(y)|^2 dy`.
    pub normalization: f64,
    pub normalization_error: f64,
    /// Whether the normalization met its tolerance; when it did not, the
    /// best estimate is used (it is only needed to be finite).
    pub converged: bool,
    /// `|Im lambda| * normalization`.
    pub residual: f64,
}

/// At imaginary momentum `k = i tau` the Jost profile is proportional to
/// `sqrt(y) K_nu(tau y)`; its norm is finite and positive, so `Im lambda`
/// times it must vanish. Returns the full breakdown.
pub fn khuri_reality_check(lambda: Complex64, tau: f64) -> Result<KhuriResidual> {
    check_positive(tau, "tau")?;
    let order = OrderParameter::from_lambda(lambda)?;
    check_moment_order(order.nu)?;
    let (raw, converged) = match moment_quadrature(order.nu, |kv| Complex64::new(kv.norm_sqr(), 0.0), &NORMALIZATION_OPTIONS) {
        Ok(r) => (r, true),
        Err(QuantumError::Numerics(NumericsError::BudgetExhausted { best })) => (best, false),
        Err(e) => return Err(e),
    };
    let scale = 2.0 / (PI * tau);
    let normalization = scale * raw.value.re;
    Ok(KhuriResidual {
        lambda,
        tau,
        nu: order.nu,
        normalization,
        normalization_error: scale * raw.error_estimate,
        converged,
        residual: (lambda.im * normalization).abs(),
    })
}

/// `|Im lambda| (2 / pi)(1 / tau) int_0^inf y |K_nu(y)|^2 dy`.
pub fn khuri_reality_residual(lambda: Complex64, tau: f64) -> Result<f64> {
    Ok(khuri_reality_check(lambda, tau)?.residual)
}
