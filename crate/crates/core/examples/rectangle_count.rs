//! Counting zeros of xi inside rectangles with the argument principle,
//! including boxes that straddle the critical line and boxes off it.

use rzlab::numerics::ContourRectangle;
use rzlab::zeros::count_zeros_rectangle;

fn main() -> rzlab::Result<()> {
    let boxes = [
        (0.0, 1.0, 14.0, 15.0),
        (0.0, 1.0, 0.0, 50.0),
        (0.6, 1.0, 0.0, 50.0),
        (0.0, 0.4, 0.0, 50.0),
        (0.0, 1.0, 50.0, 100.0),
    ];
    for (a, b, c, d) in boxes {
        let rect = ContourRectangle::new(a, b, c, d)?;
        println!("[{a}, {b}] x [{c}, {d}]: {} zeros", count_zeros_rectangle(&rect)?);
    }
    Ok(())
}
