//! The built-in figure presets and the clouds they produce.

use padic_fractal::render::presets;
use padic_fractal::Result;

pub fn run_example() -> Result<()> {
    for fig in presets() {
        let size = if fig.is_solenoid() {
            fig.cloud_3d(Some(3))?.len()
        } else {
            fig.cloud_2d(Some(fig.depth.min(6)))?.len()
        };
        println!(
            "{:<20} p={} m={:<3} s={:.4}  {:>6} points at reduced depth  {}",
            fig.name,
            fig.p(),
            fig.map.m().to_string(),
            fig.s().re,
            size,
            fig.notes
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
