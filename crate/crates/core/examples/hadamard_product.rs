//! The truncated Hadamard product of xi over the first N zeros against
//! direct evaluation.

use num_complex::Complex64;
use rzlab::hadamard::{convergence_profile, fit_xi_constants, truncation_estimate, ZeroCatalog};

fn main() -> rzlab::Result<()> {
    let params = fit_xi_constants()?;
    println!("A = {}, e^A = {:.12}, B = {:.10}", params.a.re, params.a.exp().re, params.b.re);
    let catalog = ZeroCatalog::compute(100)?;
    for z in [Complex64::new(2.0, 0.0), Complex64::new(0.5, 5.0), Complex64::new(-1.0, 3.0)] {
        let profile = convergence_profile(&params, &catalog, z, &[1, 10, 50, 100])?;
        let line: Vec<String> = profile.iter().map(|p| format!("N={}: {:.2e}", p.n, p.residual)).collect();
        println!("z = {z:<8} {}   (omitted factors ~ {:.2e})", line.join("  "), truncation_estimate(&catalog, z, 100)?);
    }
    Ok(())
}
