//! Im(lambda) times a finite positive norm: zero exactly for real
//! couplings, linear in Im(lambda) otherwise.

use num_complex::Complex64;
use rzlab::quantum::khuri_reality_check;
use rzlab::scattering::coupling_at_zero;

fn main() -> rzlab::Result<()> {
    let first = coupling_at_zero(14.134_725_141_734_693)?.lambda;
    for lambda in [Complex64::new(-5.0, 0.0), first] {
        let r = khuri_reality_check(lambda, 1.0)?;
        println!("lambda = {lambda:<28} residual = {}   norm = {:.3e}", r.residual, r.normalization);
    }
    for im in [0.05, 0.1, 0.2, 0.4] {
        let r = khuri_reality_check(Complex64::new(-5.0, im), 1.0)?;
        println!("Im lambda = {im:<5} residual = {:.6e}   residual / Im lambda = {:.6e}", r.residual, r.residual / im);
    }
    Ok(())
}
