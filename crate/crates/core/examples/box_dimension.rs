//! Box-counting dimension of planar and solenoid clouds, next to the
//! scaling dimension D_s = −log p / log |s|.

use num_complex::Complex64;
use padic_fractal::analysis::{box_dimension, ScaleLadder};
use padic_fractal::complex_map::{cluster, MapParams, Order};
use padic_fractal::padic::PAdicNumber;
use padic_fractal::solenoid::{solenoid_cloud, SolenoidParams};
use padic_fractal::Result;

pub fn run_example() -> Result<()> {
    let segment: Vec<[f64; 3]> = (0..20_000).map(|i| [i as f64 / 20_000.0, 0.0, 0.0]).collect();
    let est = box_dimension(&segment, &ScaleLadder::default())?;
    println!("segment: slope {:.4} (R² {:.4})", est.slope, est.r_squared);

    for (p, s, depth) in [(2, 1.0 / 3.0, 14), (3, 0.5, 9)] {
        let params = MapParams::real(p, Order::Finite(0), s)?;
        let cloud = cluster(&PAdicNumber::zero(p), 0, &params, depth)?;
        let est = box_dimension(&cloud, &ScaleLadder::default())?;
        println!(
            "Υ(Z_{p}), s = {s:.4}: slope {:.4}, D_s = {:.4}, window {:.2e}..{:.2e}",
            est.slope,
            params.scaling_dimension(),
            est.scale_window.0,
            est.scale_window.1
        );
    }

    let map = MapParams::real(2, Order::Finite(0), 1.0 / 2.2)?;
    let sp = SolenoidParams::new(map, Complex64::new(0.0, 2.0))?;
    let cloud = solenoid_cloud(&sp, 128, 8)?;
    let est = box_dimension(&cloud, &ScaleLadder::default())?;
    println!("Ω(T_2): slope {:.4}, D_s + 1 = {:.4}", est.slope, map.scaling_dimension() + 1.0);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
