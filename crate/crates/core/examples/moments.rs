//! Haar moments of the image measure on Υ(Z_p) and their expansion in s.

use padic_fractal::analysis::{coefficient_c, moment, moment_series};
use padic_fractal::complex_map::{MapParams, Order};
use padic_fractal::Result;

pub fn run_example() -> Result<()> {
    let params = MapParams::real(2, Order::Infinite, 0.3)?;
    for (l, lbar) in [(1, 0), (1, 1), (2, 0), (2, 1)] {
        let m = moment(l, lbar, &params, 12)?;
        let series = moment_series(l, lbar, 2, params.s(), 40)?;
        println!(
            "⟨z^{l} z̄^{lbar}⟩ = {:.10} ± {:.1e}   series {:.10}",
            m.value, m.error_bound, series
        );
    }
    println!("1/(1 − 0.09) = {:.10}", 1.0 / 0.91);

    println!("C^(2,2)_(n,n̄) for p = 3:");
    for n in 0..4 {
        let row: Vec<u64> = (0..4).map(|nb| coefficient_c(2, 2, n, nb, 3, 12).map(|c| c.count)).collect::<Result<_>>()?;
        println!("  n = {n}: {row:?}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
