//! How fast Υ^(m) approaches Υ^(∞) as the smoothing order m grows.

use padic_fractal::analysis::{kappa_divergence, KappaSampling};
use padic_fractal::complex_map::{MapParams, Order};
use padic_fractal::Result;

pub fn run_example() -> Result<()> {
    let inf = MapParams::real(2, Order::Infinite, 0.3)?;
    let sampling = KappaSampling { pairs: 500, ..Default::default() };
    println!("{:>3} {:>12} {:>12} {:>12}", "m", "kappa", "bound", "chi gap");
    for m in [1, 3, 6, 9, 12] {
        let r = kappa_divergence(&inf.with_m(Order::Finite(m)), &inf, sampling)?;
        println!("{m:>3} {:>12.4e} {:>12.4e} {:>12.4e}", r.kappa, r.bound, r.character_gap);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
