//! The vector field Γ whose integral curves are the images of the solenoid
//! orbits, checked by finite differences and integrated with RK4.

use std::f64::consts::TAU;

use num_complex::Complex64;
use padic_fractal::complex_map::{s_zero, MapParams, Order};
use padic_fractal::padic::PAdicNumber;
use padic_fractal::solenoid::{
    field_gamma, integrate_flow, omega_with_s, orbit_derivative_residual, FlowConfig, SolenoidParams, SolenoidPoint,
};
use padic_fractal::Result;

pub fn run_example() -> Result<()> {
    let map = MapParams::real(3, Order::Infinite, s_zero(3) - 0.02)?;
    let sp = SolenoidParams::new(map, Complex64::new(2.5, 0.0))?;
    let f = SolenoidPoint::from_residue(0.3, 3, 40)?;
    println!("Γ(Ω(f)) = {:.6?}", field_gamma(&f, &sp)?);

    for h in [1e-2, 1e-3, 1e-4] {
        println!("h = {h:e}: |central difference − Γ| = {:e}", orbit_derivative_residual(&f, &sp, h)?);
    }

    let spot = Complex64::new(0.0, TAU / 3.0) * omega_with_s(0.0, &PAdicNumber::zero(3), &map, map.s() / 3.0)?;
    println!("(2πi/p) ω_(s/p)(0, 0) = {spot:.12}");

    let flow = integrate_flow(&f, &sp, FlowConfig { t_end: 1.5, steps: 300, lookup_depth: 12 })?;
    let last = flow.samples.last().expect("at least one step");
    println!("RK4 to t = {}: {:.6?} vs exact {:.6?}", last.t, last.integrated, last.exact);
    println!("max divergence {:e}", flow.max_divergence);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
