use rayon::prelude::*;
use serde::Serialize;

use crate::complex_map::PointCloud2D;
use crate::error::{Error, Result};
use crate::solenoid::PointCloud3D;

/// Anything that can be box-counted in `R³` (planar clouds sit at `z = 0`).
pub trait Coordinates {
    fn coordinates(&self) -> Vec<[f64; 3]>;
}

impl Coordinates for PointCloud2D {
    fn coordinates(&self) -> Vec<[f64; 3]> {
        self.points.iter().map(|pt| [pt.z.re, pt.z.im, 0.0]).collect()
    }
}

impl Coordinates for PointCloud3D {
    fn coordinates(&self) -> Vec<[f64; 3]> {
        self.points.iter().map(|pt| pt.x).collect()
    }
}

impl Coordinates for [[f64; 3]] {
    fn coordinates(&self) -> Vec<[f64; 3]> {
        self.to_vec()
    }
}

impl Coordinates for Vec<[f64; 3]> {
    fn coordinates(&self) -> Vec<[f64; 3]> {
        self.clone()
    }
}

/// Box sizes `ε_j = ε₀ · 2^{-j}` for `j < levels`, and which of them enter
/// the fit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScaleLadder {
    /// Largest box; `None` uses the largest bounding-box side, widened by a
    /// hair so the far faces do not open an extra row of cells.
    pub eps0: Option<f64>,
    pub levels: usize,
    /// Inclusive range of `j` used in the fit; `None` selects automatically.
    pub window: Option<(usize, usize)>,
}

impl Default for ScaleLadder {
    fn default() -> Self {
        ScaleLadder { eps0: None, levels: 24, window: None }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DimensionEstimate {
    pub slope: f64,
    /// `(ε_min, ε_max)` of the fitted scales.
    pub scale_window: (f64, f64),
    pub r_squared: f64,
    pub point_count: usize,
    /// `(ε, N(ε))` for every scale on the ladder.
    pub counts: Vec<(f64, usize)>,
}

pub(crate) struct Grid {
    pub(crate) origin: [f64; 3],
    pub(crate) extent: f64,
}

pub(crate) fn bounding_grid(points: &[[f64; 3]]) -> Grid {
    let mut lo = [f64::INFINITY; 3];
    let mut hi = [f64::NEG_INFINITY; 3];
    for q in points {
        for i in 0..3 {
            lo[i] = lo[i].min(q[i]);
            hi[i] = hi[i].max(q[i]);
        }
    }
    let extent = (0..3).map(|i| hi[i] - lo[i]).fold(0.0, f64::max);
    Grid { origin: lo, extent }
}

/// Number of occupied cells of side `eps` on the grid anchored at `origin`.
pub(crate) fn box_count(points: &[[f64; 3]], origin: [f64; 3], eps: f64) -> usize {
    let mut cells: Vec<[i64; 3]> = points
        .par_iter()
        .map(|q| [0, 1, 2].map(|i| ((q[i] - origin[i]) / eps).floor() as i64))
        .collect();
    cells.par_sort_unstable();
    cells.dedup();
    cells.len()
}

/// Least-squares slope of `log N(ε)` against `log(1/ε)`.
///
/// The automatic window drops the coarsest and finest octave of the ladder
/// and every scale where `N(ε)` exceeds a sixteenth of the point count, where
/// the finite sample rather than the set is being counted.
pub fn box_dimension<C: Coordinates + ?Sized>(cloud: &C, ladder: &ScaleLadder) -> Result<DimensionEstimate> {
    let points = cloud.coordinates();
    if points.iter().any(|q| q.iter().any(|c| !c.is_finite())) {
        return Err(Error::Parameter("cloud contains non-finite coordinates".into()));
    }
    if points.len() < 10_000 {
        log::warn!("box counting on only {} points; the estimate will be coarse", points.len());
    }
    let grid = bounding_grid(&points);
    let eps0 = ladder.eps0.unwrap_or(grid.extent * (1.0 + 1e-9));
    if !(eps0 > 0.0) || ladder.levels < 3 {
        return Err(Error::DegenerateWindow(format!(
            "need a positive largest box and at least 3 levels (ε₀ = {eps0}, levels = {})",
            ladder.levels
        )));
    }
    let counts: Vec<(f64, usize)> = (0..ladder.levels)
        .map(|j| {
            let eps = eps0 * 0.5f64.powi(j as i32);
            (eps, box_count(&points, grid.origin, eps))
        })
        .collect();
    let (lo, hi) = match ladder.window {
        Some((lo, hi)) => (lo, hi.min(ladder.levels - 1)),
        None => {
            let saturated = points.len() / 16;
            let hi = (1..ladder.levels - 1).take_while(|&j| counts[j].1 <= saturated).last();
            (1, hi.unwrap_or(0))
        }
    };
    if hi < lo + 2 {
        return Err(Error::DegenerateWindow(format!(
            "only {} usable scales (levels {lo}..={hi})",
            (hi + 1).saturating_sub(lo)
        )));
    }
    let xs: Vec<f64> = (lo..=hi).map(|j| (1.0 / counts[j].0).ln()).collect();
    let ys: Vec<f64> = (lo..=hi).map(|j| (counts[j].1 as f64).ln()).collect();
    let (slope, r_squared) = least_squares(&xs, &ys);
    Ok(DimensionEstimate {
        slope,
        scale_window: (counts[hi].0, counts[lo].0),
        r_squared,
        point_count: points.len(),
        counts,
    })
}

fn least_squares(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let slope = sxy / sxx;
    let r2 = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
    (slope, r2)
}
