//! zeta and xi at a few points, plus the functional-equation residual.

use rzlab::zeta::{xi, xi_symmetry_residual, zeta, ComplexArgument};

fn main() -> rzlab::Result<()> {
    for (sigma, t) in [(2.0, 0.0), (0.3, 10.0), (0.5, 100.0), (-3.5, 20.0)] {
        let s = ComplexArgument::new(sigma, t)?;
        let z = zeta(s)?;
        let x = xi(s)?;
        println!(
            "s = {s:<22} zeta = {:>+.12e} {:>+.12e}i   log|xi| = {:>10.5}   symmetry residual = {:.1e}",
            z.re,
            z.im,
            x.log_modulus(),
            xi_symmetry_residual(s)?
        );
    }
    Ok(())
}
