use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::complex_map::{chi, separation_lower_bound, upsilon, MapParams, Order};
use crate::error::{Error, Result};
use crate::padic::{pow_u128, sample_residue, PAdicNumber};

/// Seed used whenever the caller does not pick one.
pub const DEFAULT_SEED: u64 = 0x5ee_d0f9_ad1c;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KappaSampling {
    pub pairs: usize,
    /// Digits per sampled residue.
    pub depth: u32,
    pub seed: u64,
}

impl Default for KappaSampling {
    fn default() -> Self {
        KappaSampling { pairs: 2000, depth: 24, seed: DEFAULT_SEED }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct KappaResult {
    /// `sup |ρ_m − ρ_∞| / (ρ_m + ρ_∞)` over the sampled pairs.
    pub kappa: f64,
    /// `4π p^{-m} / ((1−|s|)(Δ^(m) + Δ^(∞)))` from the certified lower bounds.
    pub bound: f64,
    pub delta_m: f64,
    pub delta_inf: f64,
    /// Largest sampled `|χ_n^(∞) − χ_n^(m)|`.
    pub character_gap: f64,
    /// `2π p^{-m}`.
    pub character_bound: f64,
}

/// Pairs of residues with different 0-th digit, so `|x − y|_p = 1`.
pub(crate) fn unit_pairs(p: u32, depth: u32, count: usize, seed: u64) -> Result<Vec<(u128, u128)>> {
    if depth == 0 {
        return Err(Error::Parameter("unit-distance pairs need at least one digit".into()));
    }
    pow_u128(p, depth)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pb = p as u128;
    (0..count)
        .map(|_| {
            let x = sample_residue(&mut rng, p, depth)?;
            let y = sample_residue(&mut rng, p, depth)?;
            let shift = rng.gen_range(1..pb);
            let y0 = (x % pb + shift) % pb;
            Ok((x, y - y % pb + y0))
        })
        .collect()
}

/// Divergence between the pseudometrics `|Υ^(m)(x) − Υ^(m)(y)|` of two orders
/// sharing `p` and `s`.
pub fn kappa_divergence(params_m: &MapParams, params_inf: &MapParams, sampling: KappaSampling) -> Result<KappaResult> {
    if params_m.p() != params_inf.p() || params_m.s() != params_inf.s() {
        return Err(Error::Parameter("κ compares two orders with the same p and s".into()));
    }
    let p = params_m.p();
    let abs_s = params_m.s().norm();
    let delta = separation_lower_bound(p, abs_s);
    let order_gap = match (params_m.m(), params_inf.m()) {
        (a, b) if a == b => 0.0,
        (Order::Finite(m), Order::Infinite) | (Order::Infinite, Order::Finite(m)) => (p as f64).powi(-(m as i32)),
        (Order::Finite(a), Order::Finite(b)) => (p as f64).powi(-(a.min(b) as i32)),
        _ => unreachable!(),
    };
    let bound = if order_gap == 0.0 { 0.0 } else { 4.0 * PI * order_gap / ((1.0 - abs_s) * 2.0 * delta) };

    let pairs = unit_pairs(p, sampling.depth, sampling.pairs, sampling.seed)?;
    let ratios = pairs
        .par_iter()
        .map(|&(x, y)| {
            let (x, y) = (PAdicNumber::from_residue(p, x), PAdicNumber::from_residue(p, y));
            let rm = (upsilon(&x, params_m)? - upsilon(&y, params_m)?).norm();
            let ri = (upsilon(&x, params_inf)? - upsilon(&y, params_inf)?).norm();
            let gap = (0..=sampling.depth.min(params_m.depth() as u32) as i64)
                .map(|n| Ok((chi(&x, n, params_m.m())? - chi(&x, n, params_inf.m())?).norm()))
                .collect::<Result<Vec<f64>>>()?
                .into_iter()
                .fold(0.0, f64::max);
            let ratio = if rm + ri == 0.0 { 0.0 } else { (rm - ri).abs() / (rm + ri) };
            Ok((ratio, gap))
        })
        .collect::<Result<Vec<_>>>()?;
    let kappa = ratios.iter().map(|r| r.0).fold(0.0, f64::max);
    let character_gap = ratios.iter().map(|r| r.1).fold(0.0, f64::max);
    Ok(KappaResult {
        kappa,
        bound,
        delta_m: delta,
        delta_inf: delta,
        character_gap,
        character_bound: 2.0 * PI * order_gap,
    })
}
