//! Samples Υ(Z_2) at s = 1/3 (a Cantor set) and writes it as PGM and SVG.

use padic_fractal::complex_map::{cluster, MapParams, Order};
use padic_fractal::padic::PAdicNumber;
use padic_fractal::render::{raster2d, svg, Intensity, RasterConfig, Viewport};
use padic_fractal::Result;

pub fn run_example() -> Result<()> {
    let params = MapParams::real(2, Order::Finite(0), 1.0 / 3.0)?;
    let cloud = cluster(&PAdicNumber::zero(2), 0, &params, 12)?;
    println!("{} points, first label {:?}", cloud.len(), cloud.points[1].label);

    // the two halves x ≡ 0 and x ≡ 1 (mod 2) land in disjoint clusters
    let half = cluster(&PAdicNumber::from_integer(2, 1), 1, &params, 12)?;
    println!("cluster of 1 + 2Z_2: {} points, ball center {}", half.len(), half.center);

    let viewport = Viewport::fit(cloud.values(), 0.05)?;
    let cfg = RasterConfig::new(600, 40, viewport, Intensity::Binary)?;
    let image = raster2d(&cloud, &cfg);
    let lit = image.iter().rev().take(600 * 40).filter(|&&v| v > 0).count();
    println!("PGM: {} bytes, {lit} lit pixels", image.len());

    let dir = std::env::temp_dir().join("padic-fractal-examples");
    std::fs::create_dir_all(&dir)?;
    std::fs::write(dir.join("cantor.pgm"), &image)?;
    let drawing = svg(&cloud, &viewport, 0.002, 600);
    std::fs::write(dir.join("cantor.svg"), drawing.as_bytes())?;
    println!("wrote {}", dir.display());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
