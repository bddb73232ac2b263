use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::omega::{fiber_table, SolenoidParams};
use crate::complex_map::{check_search_size, decide, min_cross_distance, separation_lower_bound};
use crate::complex_map::EmbeddingCertificate;
use crate::error::Result;
use crate::padic::residues;

/// Sampling grid for `γ = −inf Re(ω/a)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GammaSampling {
    pub xi_grid: usize,
    pub depth: u32,
}

impl Default for GammaSampling {
    fn default() -> Self {
        GammaSampling { xi_grid: 256, depth: 8 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GammaCertificate {
    /// `−min Re(ω(ξ, x)/a)` over the grid.
    pub gamma_estimate: f64,
    /// `|a| > r_s`, which forces `|ω/a| < 1` and hence `γ < 1`.
    pub sufficient: bool,
    pub xi_grid: usize,
    pub depth: u32,
}

pub fn gamma_certificate(sp: &SolenoidParams, sampling: GammaSampling) -> Result<GammaCertificate> {
    let map = sp.map();
    let table = fiber_table(map, sampling.depth)?;
    let (s, a) = (map.s(), sp.a());
    let min_re = (0..sampling.xi_grid)
        .into_par_iter()
        .map(|k| {
            let xi = k as f64 / sampling.xi_grid as f64;
            table.iter().map(|t| (t.eval(xi, s) / a).re).fold(f64::INFINITY, f64::min)
        })
        .reduce(|| f64::INFINITY, f64::min);
    Ok(GammaCertificate {
        gamma_estimate: -min_re,
        sufficient: sp.a().norm() > map.disk_radius(),
        xi_grid: sampling.xi_grid,
        depth: sampling.depth,
    })
}

/// Search grid for the fiberwise separation `Δ̃`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TildeSearch {
    pub xi_grid: usize,
    pub depth: u32,
}

impl Default for TildeSearch {
    fn default() -> Self {
        TildeSearch { xi_grid: 8, depth: 6 }
    }
}

fn tilde_min(sp: &SolenoidParams, xi_grid: usize, depth: u32) -> Result<f64> {
    check_search_size(sp.map().p(), depth)?;
    let map = sp.map();
    let table = fiber_table(map, depth)?;
    let p = map.p() as usize;
    let s = map.s();
    let per_fiber = (0..xi_grid)
        .map(|k| {
            let xi = k as f64 / xi_grid as f64;
            let pts: Vec<(u32, Complex64)> = table
                .iter()
                .enumerate()
                .map(|(r, t)| ((r % p) as u32, t.eval(xi, s)))
                .collect();
            min_cross_distance(&pts)
        })
        .fold(f64::INFINITY, f64::min);
    Ok(per_fiber)
}

/// Separation of `ω(ξ, ·)` over unit-distance pairs, minimized over a `ξ`
/// grid. On such pairs the normalization `|s|^{-v(x−y)}` is 1.
///
/// The analytic lower bound is the same as for `Υ`.
pub fn delta_tilde(sp: &SolenoidParams, search: TildeSearch) -> Result<EmbeddingCertificate> {
    let map = sp.map();
    let abs_s = map.s().norm();
    let delta_lower = separation_lower_bound(map.p(), abs_s);
    let tail_allowance = 2.0 * map.tail_bound();
    residues(map.p(), search.depth)?;
    let raw = tilde_min(sp, search.xi_grid, search.depth)?;
    let previous = if search.depth >= 2 {
        Some(tilde_min(sp, search.xi_grid, search.depth - 1)?)
    } else {
        None
    };
    Ok(EmbeddingCertificate {
        delta_lower,
        delta_empirical: raw - tail_allowance,
        tail_allowance,
        search_depth: search.depth,
        verdict: decide(delta_lower, raw, previous, abs_s),
    })
}
