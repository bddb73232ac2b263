//! Embeds the 2-adic solenoid in R³ through Ω, certifies the embedding and
//! exports the point cloud.

use num_complex::Complex64;
use padic_fractal::complex_map::{MapParams, Order};
use padic_fractal::render::{export3d, Format3D};
use padic_fractal::solenoid::{
    delta_tilde, gamma_certificate, solenoid_cloud, GammaSampling, SolenoidParams, TildeSearch,
};
use padic_fractal::Result;

pub fn run_example() -> Result<()> {
    let map = MapParams::real(2, Order::Finite(0), 1.0 / 2.2)?;
    let sp = SolenoidParams::new(map, Complex64::new(0.0, 2.0))?;

    let gamma = gamma_certificate(&sp, GammaSampling { xi_grid: 64, depth: 6 })?;
    println!("γ ≈ {:.6}, |a| > r_s: {}", gamma.gamma_estimate, gamma.sufficient);
    let tilde = delta_tilde(&sp, TildeSearch::default())?;
    println!("Δ̃: lower {:.6}, empirical {:.6}, {}", tilde.delta_lower, tilde.delta_empirical, tilde.verdict);

    let cloud = solenoid_cloud(&sp, 64, 6)?;
    let (lo, hi) = cloud.points.iter().fold(([f64::MAX; 3], [f64::MIN; 3]), |(lo, hi), q| {
        ([0, 1, 2].map(|i| lo[i].min(q.x[i])), [0, 1, 2].map(|i| hi[i].max(q.x[i])))
    });
    println!("{} points in the box {lo:.3?} .. {hi:.3?}", cloud.len());

    let dir = std::env::temp_dir().join("padic-fractal-examples");
    std::fs::create_dir_all(&dir)?;
    std::fs::write(dir.join("solenoid.ply"), export3d(&cloud, Format3D::Ply))?;
    let csv = export3d(&cloud, Format3D::Csv);
    println!("{}", String::from_utf8_lossy(&csv).lines().take(3).collect::<Vec<_>>().join("\n"));
    std::fs::write(dir.join("solenoid.csv"), csv)?;
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
