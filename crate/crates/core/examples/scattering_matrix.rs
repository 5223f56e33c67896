//! S(s) = xi(2s)/xi(-2s): unit modulus on the imaginary axis, a pole
//! below the line Re s = -1/4, and the flat wave y^{1/2+s} + S y^{1/2-s}.

use rzlab::scattering::{flat_wave, s_matrix};
use rzlab::zeta::ComplexArgument;

fn main() -> rzlab::Result<()> {
    let mut worst: f64 = 0.0;
    for i in 0..=500 {
        let s = ComplexArgument::new(0.0, 0.1 * i as f64)?;
        worst = worst.max((s_matrix(s)?.value.modulus() - 1.0).abs());
    }
    println!("max ||S(i tau)| - 1| over tau in [0, 50]: {worst:.2e}");

    for t in [-7.5, -7.067_362_570_867_35, -6.5] {
        let v = s_matrix(ComplexArgument::new(-0.25, t)?)?;
        println!(
            "S(-1/4 {t:+}i): log|S| = {:>9.3}, pole flag {}",
            v.value.log_modulus(),
            v.pole_flag
        );
    }

    let s = ComplexArgument::new(0.0, 0.7)?;
    for y in [0.5, 1.0, 2.0, 4.0] {
        let w = flat_wave(s, y)?;
        println!("flat wave at y = {y}: {:+.6} {:+.6}i", w.re, w.im);
    }
    Ok(())
}
