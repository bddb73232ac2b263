//! The map Υ from Q_p into the plane: a few values, the scaling law
//! Υ(px) = sΥ(x) + 1 and the smoothed characters χ_n.

use num_complex::Complex64;
use padic_fractal::complex_map::{chi, upsilon, upsilon_parts, verify_scaling, MapParams, Order};
use padic_fractal::padic::{PAdicNumber, Rational};
use padic_fractal::Result;

pub fn run_example() -> Result<()> {
    let params = MapParams::real(2, Order::Finite(0), 1.0 / 3.0)?;
    println!("p = 2, m = 0, s = 1/3: series depth N = {}, tail <= {:e}", params.depth(), params.tail_bound());
    for n in [0i128, 1, 2, 3, -1] {
        let x = PAdicNumber::from_integer(2, n);
        println!("  Υ({n:>2}) = {:.12}", upsilon(&x, &params)?);
    }

    let params = MapParams::new(3, Order::Infinite, Complex64::new(0.25, 0.1))?;
    let x = PAdicNumber::expand(&Rational::new(5, 9), 3, 40)?;
    let parts = upsilon_parts(&x, &params)?;
    println!("p = 3, m = inf, s = 0.25+0.1i, x = 5/9");
    println!("  {{Υ}}(x) = {:.12}", parts.fractional);
    println!("  [Υ](x) = {:.12}", parts.integral);
    println!("  χ_0(x) = {:.12}", chi(&x, 0, Order::Infinite)?);

    let check = verify_scaling(&x, &params)?;
    println!(
        "  |Υ(3x) − sΥ(x) − 1| = {:e} (bound {:e}), polar form residual {:e}",
        check.residual, check.bound, check.polar_residual
    );
    println!("  scaling dimension D_s = {}", params.scaling_dimension());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
