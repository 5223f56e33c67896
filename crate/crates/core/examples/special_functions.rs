//! log Gamma on the continuous branch, K_nu of real and imaginary order,
//! and H1_nu across the switch from series to asymptotic expansion.

use num_complex::Complex64;
use rzlab::specfun::{bessel_k, hankel1, log_gamma, ComplexOrder};

fn main() -> rzlab::Result<()> {
    for z in [Complex64::new(0.5, 0.0), Complex64::new(0.25, 50.0), Complex64::new(-3.5, 0.1)] {
        println!("log Gamma({z}) = {:.15}", log_gamma(z)?);
    }
    for (nu, y) in [(ComplexOrder::real(0.0)?, 2.0), (ComplexOrder::real(0.5)?, 1.0), (ComplexOrder::imaginary(3.0)?, 0.5)] {
        println!("K_{}({y}) = {:.15e}", nu.nu(), bessel_k(nu, y)?.re);
    }
    let nu = ComplexOrder::real(1.5)?;
    for x in [1.0, 11.9, 12.1, 29.0, 31.0] {
        println!("H1_1.5({x}) = {:.15}", hankel1(nu, x)?);
    }
    Ok(())
}
