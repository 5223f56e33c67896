//! The numeric kernels on their own: semi-infinite and principal-value
//! integrals, bracketed roots, winding numbers.

use num_complex::Complex64;
use rzlab::numerics::{
    find_root_bracketed, integrate_semi_infinite, principal_value_integral, winding_number, BracketInterval,
    ContourRectangle,
};
use rzlab::specfun::{bessel_k, ComplexOrder};

fn main() -> rzlab::Result<()> {
    let k0 = ComplexOrder::real(0.0)?;
    let moment = integrate_semi_infinite(|y: f64| y * bessel_k(k0, y).unwrap().powi(2), 0.0, 1e-12)?;
    println!("int_0^inf y K_0(y)^2 dy = {:.14} (+/- {:.1e})", moment.value.re, moment.error_estimate);

    let pv = principal_value_integral(|x: f64| x.exp(), 0.0, -2.0, 2.0, 1e-12)?;
    println!("PV int_-2^2 e^x / x dx = {:.14}", pv.re);

    let root = find_root_bracketed(|x: f64| x * x - 2.0, BracketInterval::new(1.0, 2.0)?, 1e-14)?;
    println!("sqrt 2 = {root:.15}");

    let rect = ContourRectangle::new(-1.0, 1.0, -1.0, 1.0)?;
    let n = winding_number(|z: Complex64| z * z * (z - 3.0), &rect, 64)?;
    println!("zeros of z^2 (z - 3) in the unit box: {n}");
    Ok(())
}
