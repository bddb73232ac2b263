//! The solenoid T_p as a group: carry addition, the metric ρ_α, the
//! embedding j of Q_p and the real orbits t ↦ f + (t, 0).

use padic_fractal::padic::{PAdicNumber, Rational};
use padic_fractal::solenoid::{embed_j, length, orbit, rho, SolenoidPoint};
use padic_fractal::Result;

pub fn run_example() -> Result<()> {
    let f = SolenoidPoint::from_residue(0.75, 3, 17)?;
    let g = SolenoidPoint::from_residue(0.5, 3, 5)?;
    let sum = f.add(&g)?;
    // 0.75 + 0.5 carries 1 into the p-adic part: 17 + 5 + 1 = 23
    println!("f + g = ({}, {})", sum.xi(), sum.x());
    println!("f − f = ({}, {})", f.sub(&f)?.xi(), f.sub(&f)?.x());
    println!("ρ_1(f, g) = {:.6}, ‖f‖ = {:.6}", rho(&f, &g, 1.0)?, length(&f, 1.0));

    let x = PAdicNumber::expand(&Rational::new(7, 9), 3, 12)?;
    let jx = embed_j(&x)?;
    println!("j(7/9) = ({:.6}, {})", jx.xi(), jx.x());

    // orbits wind around the circle and shift the p-adic coordinate by one per turn
    for t in [0.25, 1.0, 2.5] {
        let o = orbit(&f, t)?;
        println!("orbit(f, {t}) = ({:.3}, {})", o.xi(), o.x());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
