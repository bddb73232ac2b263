use std::collections::HashMap;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::dimension::{bounding_grid, box_count, box_dimension, ScaleLadder};
use super::report::{Report, ReportLine};
use crate::complex_map::{cluster, separation_lower_bound, MapParams};
use crate::error::{Error, Result};
use crate::padic::{pow_u128, PAdicNumber};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MeasureReport {
    pub l: u128,
    pub k: u32,
    pub depth: u32,
    /// Fraction of all sampled image points lying within half the certified
    /// separation of the cluster.
    pub counting_fraction: f64,
    pub expected_fraction: f64,
    /// Smallest distance from the cluster to the image of the rest of `Z_p`.
    pub separation: f64,
    /// `Δ_low · |s|^{k−1} − 2·tail`: sibling clusters differ first at digit `k−1`.
    pub separation_bound: f64,
    /// Geometric mean of `N_ε(cluster) / N_ε(Υ(Z_p))` over the fitted window.
    pub box_ratio: f64,
    pub box_window: (f64, f64),
}

impl MeasureReport {
    pub fn report(&self) -> Report {
        let mut r = Report::new();
        r.push(ReportLine::within(
            format!("measure.k{}.counting_fraction", self.k),
            self.counting_fraction,
            self.expected_fraction,
            0.0,
        ));
        r.push(ReportLine::at_least(format!("measure.k{}.separation", self.k), self.separation, self.separation_bound));
        r.push(ReportLine::within(
            format!("measure.k{}.box_ratio", self.k),
            self.box_ratio,
            self.expected_fraction,
            0.2 * self.expected_fraction,
        ));
        r
    }

    pub fn passes(&self) -> bool {
        self.report().passed()
    }
}

fn cell(z: Complex64, h: f64) -> (i64, i64) {
    ((z.re / h).floor() as i64, (z.im / h).floor() as i64)
}

struct PlaneHash {
    h: f64,
    cells: HashMap<(i64, i64), Vec<Complex64>>,
}

impl PlaneHash {
    fn new(points: impl Iterator<Item = Complex64>, h: f64) -> Self {
        let mut cells: HashMap<(i64, i64), Vec<Complex64>> = HashMap::new();
        for z in points {
            cells.entry(cell(z, h)).or_default().push(z);
        }
        PlaneHash { h, cells }
    }

    /// Nearest stored point within `reach` cells of `z`, if any.
    fn nearest(&self, z: Complex64, reach: i64) -> Option<f64> {
        let (cx, cy) = cell(z, self.h);
        let mut best: Option<f64> = None;
        for dx in -reach..=reach {
            for dy in -reach..=reach {
                if let Some(v) = self.cells.get(&(cx + dx, cy + dy)) {
                    for w in v {
                        let d = (z - w).norm();
                        best = Some(best.map_or(d, |b| b.min(d)));
                    }
                }
            }
        }
        best
    }
}

/// Checks that the cluster of `l + p^k Z_p` carries exactly its Haar share of
/// the image, is separated from the rest, and has the matching box counts.
///
/// Refuses parameters without a positive certified separation, since then the
/// clusters may overlap and none of the three statements need hold.
pub fn measure_consistency_at(params: &MapParams, l: u128, k: u32, depth: u32) -> Result<MeasureReport> {
    let delta = separation_lower_bound(params.p(), params.s().norm());
    if delta <= 0.0 {
        return Err(Error::NotCertified(format!(
            "Δ lower bound is 0 for p = {}, |s| = {}",
            params.p(),
            params.s().norm()
        )));
    }
    if k > depth {
        return Err(Error::Parameter(format!("level {k} exceeds depth {depth}")));
    }
    let p = params.p();
    let modulus = pow_u128(p, k)?;
    let l = l % modulus;
    let full = cluster(&PAdicNumber::zero(p), 0, params, depth as i64)?;
    let sub = cluster(&PAdicNumber::from_residue(p, l), k as i64, params, depth as i64)?;
    let expected_fraction = 1.0 / modulus as f64;

    let tail = 2.0 * params.tail_bound();
    let abs_s = params.s().norm();
    let separation_bound = if k == 0 { f64::INFINITY } else { delta * abs_s.powi(k as i32 - 1) - tail };

    let (counting_fraction, separation) = if k == 0 {
        (1.0, f64::INFINITY)
    } else {
        let radius = separation_bound.max(f64::MIN_POSITIVE) / 2.0;
        let near = PlaneHash::new(sub.values(), radius);
        let hits = full
            .points
            .par_iter()
            .filter(|pt| near.nearest(pt.z, 1).is_some_and(|d| d <= radius))
            .count();
        // distances beyond 2·separation_bound are reported as that cap
        let h = separation_bound.max(f64::MIN_POSITIVE);
        let rest = PlaneHash::new(
            full.points.iter().filter(|pt| pt.label.residue % modulus != l).map(|pt| pt.z),
            h,
        );
        let sep = sub
            .points
            .par_iter()
            .map(|pt| rest.nearest(pt.z, 2).unwrap_or(2.0 * h).min(2.0 * h))
            .reduce(|| f64::INFINITY, f64::min);
        (hits as f64 / full.len() as f64, sep)
    };

    let dim = box_dimension(&full, &ScaleLadder::default())?;
    let full_coords: Vec<[f64; 3]> = full.points.iter().map(|pt| [pt.z.re, pt.z.im, 0.0]).collect();
    let sub_coords: Vec<[f64; 3]> = sub.points.iter().map(|pt| [pt.z.re, pt.z.im, 0.0]).collect();
    let origin = bounding_grid(&full_coords).origin;
    let window: Vec<f64> = dim
        .counts
        .iter()
        .filter(|(eps, _)| *eps >= dim.scale_window.0 && *eps <= dim.scale_window.1)
        .map(|&(eps, n_full)| (box_count(&sub_coords, origin, eps) as f64 / n_full as f64).ln())
        .collect();
    let box_ratio = (window.iter().sum::<f64>() / window.len() as f64).exp();

    Ok(MeasureReport {
        l,
        k,
        depth,
        counting_fraction,
        expected_fraction,
        separation,
        separation_bound,
        box_ratio,
        box_window: dim.scale_window,
    })
}

/// [`measure_consistency_at`] for the cluster of `p^k Z_p`.
pub fn measure_consistency(params: &MapParams, k: u32, depth: u32) -> Result<MeasureReport> {
    measure_consistency_at(params, 0, k, depth)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex_map::Order;

    #[test]
    fn level_zero_is_everything() {
        let params = MapParams::real(2, Order::Finite(0), 0.3).unwrap();
        let r = measure_consistency(&params, 0, 14).unwrap();
        assert_eq!(r.counting_fraction, 1.0);
        assert_eq!(r.box_ratio, 1.0);
    }

    #[test]
    fn binary_halves() {
        let params = MapParams::real(2, Order::Finite(0), 0.3).unwrap();
        let r = measure_consistency(&params, 1, 14).unwrap();
        assert_eq!(r.counting_fraction, 0.5);
        assert!(r.separation >= 8.0 / 7.0 - 2.0 * params.tail_bound());
        assert!((r.box_ratio - 0.5).abs() <= 0.1, "{}", r.box_ratio);
        assert!(r.passes());
    }

    #[test]
    fn ternary_level_two() {
        let params = MapParams::real(3, Order::Infinite, 0.2).unwrap();
        let r = measure_consistency_at(&params, 5, 2, 10).unwrap();
        assert!((r.counting_fraction - 1.0 / 9.0).abs() < 1e-15);
        assert!(r.separation >= r.separation_bound);
    }

    #[test]
    fn refuses_uncertified() {
        let params = MapParams::real(2, Order::Finite(0), 0.5).unwrap();
        assert!(matches!(measure_consistency(&params, 1, 10), Err(Error::NotCertified(_))));
    }
}
