//! When is Υ injective? The analytic separation bound Δ, a brute-force search
//! over residue pairs, and the resulting verdict.

use padic_fractal::complex_map::{delta_certificate, s_zero, DeltaSearch, MapParams, Order};
use padic_fractal::Result;

pub fn run_example() -> Result<()> {
    for p in [2, 3, 5] {
        println!("threshold s_0({p}) = {:.12}", s_zero(p));
    }
    println!();
    println!("{:>3} {:>5} {:>6} {:>14} {:>14}  verdict", "p", "m", "s", "delta_lower", "delta_emp");
    for (p, m, s) in [
        (2, Order::Finite(0), 0.3),
        (2, Order::Finite(0), 0.5),
        (3, Order::Infinite, 0.4),
        (3, Order::Finite(1), 0.6),
        (4, Order::Finite(0), 1.0 / 3.0),
    ] {
        let params = MapParams::real(p, m, s)?;
        let cert = delta_certificate(&params, DeltaSearch { depth: 7 })?;
        println!(
            "{p:>3} {m:>5} {s:>6.3} {:>14.9} {:>14.9}  {}",
            cert.delta_lower, cert.delta_empirical, cert.verdict
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
