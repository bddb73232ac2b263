//! The counting measure of residues, the separation of image clusters and
//! their box-count ratio, side by side for a first-level ball.

use padic_fractal::analysis::{measure_consistency, measure_consistency_at};
use padic_fractal::complex_map::{MapParams, Order};
use padic_fractal::Result;

pub fn run_example() -> Result<()> {
    let params = MapParams::real(2, Order::Finite(0), 0.3)?;
    let r = measure_consistency(&params, 1, 14)?;
    print!("{}", r.report());

    let params = MapParams::real(3, Order::Finite(0), 0.25)?;
    let r = measure_consistency_at(&params, 5, 2, 9)?;
    println!("ball 5 + 9Z_3: fraction {} (expected {}), box ratio {:.4}", r.counting_fraction, r.expected_fraction, r.box_ratio);
    println!("all checks pass: {}", r.passes());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
