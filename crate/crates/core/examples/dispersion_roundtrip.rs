//! Rebuild F+ from samples of S on a truncated momentum grid and check
//! S = F- / F+; the residual shrinks in proportion to the grid width.

use rzlab::dispersion::{roundtrip_residual, unit_model, BlaschkeSpec, RationalModel};

fn main() -> rzlab::Result<()> {
    let none = BlaschkeSpec::none();
    println!("unit model: {:e}", roundtrip_residual(&unit_model(50.0, 4001)?, &none)?);
    let model = RationalModel::default();
    for (w, n) in [(25.0, 2001), (50.0, 4001), (100.0, 8001)] {
        let r = roundtrip_residual(&model.samples(&none, w, n)?, &none)?;
        println!("rational model, half-width {w:>5}, {n:>5} nodes: {r:.3e}");
    }
    let bound = BlaschkeSpec::new(vec![0.8])?;
    let r = roundtrip_residual(&model.samples(&bound, 50.0, 4001)?, &bound)?;
    println!("rational model with a bound state at kappa = 0.8: {r:.3e}");
    Ok(())
}
