//! The Hankel form of the Jost solution against direct inward integration
//! of the radial equation, and its approach to e^{iky}.

use num_complex::Complex64;
use rzlab::quantum::{asymptotic_residual, verify_jost_solution, OrderParameter};

fn main() -> rzlab::Result<()> {
    for (lambda, k) in [(2.0, 1.0), (6.0, 1.0), (2.0, 2.0), (-3.0, 1.0)] {
        let v = verify_jost_solution(Complex64::new(lambda, 0.0), k, 1.0, 10.0, 46)?;
        println!(
            "lambda = {lambda:>4}, k = {k}: nu = {:.4}, start at y = {}, max relative error {:.1e}",
            v.nu, v.y_start, v.max_relative_error
        );
    }
    let nu = OrderParameter::from_lambda(Complex64::new(2.0, 0.0))?.nu;
    for y in [5.0, 10.0, 20.0, 40.0, 80.0] {
        println!("|f e^(-iky) - 1| at y = {y:>4}: {:.3e}", asymptotic_residual(1.0, nu, y)?);
    }
    Ok(())
}
