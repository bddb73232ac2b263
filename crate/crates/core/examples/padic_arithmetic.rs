//! Digit expansions, valuations, carry arithmetic and the split of a p-adic
//! number into fractional and integral parts.
//!
//! ```text
//! cargo run --example padic_arithmetic
//! ```

use padic_fractal::padic::{ball_fraction, residues, PAdicNumber, Rational};
use padic_fractal::Result;

pub fn run_example() -> Result<()> {
    // 1/3 in Z_2 has the periodic expansion …0101011
    let third = PAdicNumber::expand(&Rational::new(1, 3), 2, 12)?;
    println!("1/3 in base 2      = {third}  tail {:?}", third.tail());

    let five_halves = PAdicNumber::expand(&Rational::new(5, 2), 2, 12)?;
    println!("5/2 in base 2      = {five_halves}");
    println!("  valuation        = {:?}", five_halves.valuation());
    println!("  |5/2|_2          = {}", five_halves.norm(1.0));

    let (frac, int) = five_halves.split()?;
    println!("  {{5/2}}_2 = {frac}, [5/2]_2 = {int}");

    // -1 = …1111 and 1 + (-1) = 0 with all carries resolved
    let minus_one = PAdicNumber::from_integer(2, -1);
    let one = PAdicNumber::from_integer(2, 1);
    let sum = one.add(&minus_one)?;
    println!("1 + (-1)           = {sum}  (zero: {})", sum.is_zero());

    // base 6 is not prime but expansions still work
    let x = PAdicNumber::expand(&Rational::new(1, 2), 6, 8)?;
    println!("1/2 in base 6      = {x}  back to {:?}", x.to_rational());

    let a = PAdicNumber::expand(&Rational::new(7, 9), 3, 16)?;
    let b = PAdicNumber::expand(&Rational::new(-2, 5), 3, 16)?;
    let d = a.sub(&b)?;
    println!("7/9 - (-2/5) in Z_3: v = {}, |.|_3 = {}", d.v(), d.norm(1.0));
    println!("digit rotation of 5 in Z_3: {} -> {}", PAdicNumber::from_integer(3, 5), PAdicNumber::from_integer(3, 5).digit_rotate(1)?);

    let z3 = residues(3, 4)?;
    println!("Z_3 mod 3^4: {} residues of Haar weight {}", z3.count(), z3.weight());
    println!("fraction of them in 2 + 9 Z_3: {}", ball_fraction(3, 4, 2, 2)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
