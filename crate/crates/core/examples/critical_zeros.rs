//! Zeros on the critical line up to a given height, cross-checked against
//! the argument-principle count of the strip.
//!
//!     cargo run --release --example critical_zeros -- 100

use rzlab::zeros::{find_zeros, verify_scan};

fn main() -> rzlab::Result<()> {
    let height: f64 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(60.0);
    let zeros = find_zeros(0.0, height, 0.05, 1e-12)?;
    for z in &zeros {
        println!("{:>4}  t = {:>18.12}  |zeta| = {:.1e}", z.index, z.ordinate, z.abs_zeta);
    }
    let verdict = verify_scan(0.0, height, &zeros)?;
    println!(
        "line scan: {}   argument principle on [0,1] x [0,{height}]: {}   consistent: {}",
        verdict.line_count, verdict.rectangle_count, verdict.consistent
    );
    Ok(())
}
