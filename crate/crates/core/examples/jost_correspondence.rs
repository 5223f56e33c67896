//! Each zero 1/2 + i t_n maps to a zero of F+ at -1/4 + i t_n / 2 and to a
//! real, attractive coupling lambda = -(1/4 + t_n^2).

use rzlab::hadamard::ZeroCatalog;
use rzlab::scattering::{check_jost_zero, coupling_at_zero};

fn main() -> rzlab::Result<()> {
    let catalog = ZeroCatalog::compute(10)?;
    for (n, &t) in catalog.ordinates().iter().enumerate() {
        let check = check_jost_zero(t)?;
        let coupling = coupling_at_zero(t)?;
        println!(
            "{:>2}  t = {t:>16.12}  |F+| = {:.1e}  winding = {}  lambda = {:>12.4}{:+}i",
            n + 1,
            check.modulus,
            check.winding,
            coupling.lambda.re,
            coupling.lambda.im
        );
    }
    Ok(())
}
