//! int_0^inf y K_nu(y)^2 dy by quadrature, and the coefficient c in
//! c * pi nu / sin(pi nu) that it implies.

use num_complex::Complex64;
use rzlab::quantum::fit_moment_coefficient;

fn main() -> rzlab::Result<()> {
    for nu in [
        Complex64::new(1e-4, 0.0),
        Complex64::new(0.25, 0.0),
        Complex64::new(0.5, 0.0),
        Complex64::new(0.9, 0.0),
        Complex64::new(0.0, 1.0),
        Complex64::new(0.3, 0.8),
    ] {
        let fit = fit_moment_coefficient(nu)?;
        println!(
            "nu = {nu:<10} integral = {:.12} (+/- {:.0e}, {} evals)   coefficient = {:.10}",
            fit.integral.value, fit.integral.error_estimate, fit.integral.evaluations, fit.fitted_coefficient
        );
    }
    Ok(())
}
