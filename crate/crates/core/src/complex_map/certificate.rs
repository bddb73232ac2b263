use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::{upsilon, MapParams};
use crate::error::{Error, Result};
use crate::padic::{residues, PAdicNumber};

/// Largest enumeration the brute-force pair search accepts.
const MAX_SEARCH_POINTS: u128 = 1 << 16;

/// `s₀ = sin(π/p) / (1 + sin(π/p))`: below this modulus the separation bound
/// stays positive.
pub fn s_zero(p: u32) -> f64 {
    let sn = (PI / p as f64).sin();
    sn / (1.0 + sn)
}

/// `max(0, 2(sin(π/p) − |s|/(1−|s|)))`.
pub(crate) fn separation_lower_bound(p: u32, abs_s: f64) -> f64 {
    (2.0 * ((PI / p as f64).sin() - abs_s / (1.0 - abs_s))).max(0.0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    CertifiedEmbedding,
    EmpiricallyInjective,
    Unknown,
    NotApplicable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::CertifiedEmbedding => "certified-embedding",
            Verdict::EmpiricallyInjective => "empirically-injective",
            Verdict::Unknown => "unknown",
            Verdict::NotApplicable => "not-applicable",
        })
    }
}

/// Lower bound on the separation of unit-distance pairs, plus what an
/// exhaustive search over a residue enumeration found.
///
/// The search is restricted to pairs in `Z_p` whose 0-th digits differ; the
/// verdict `CertifiedEmbedding` rests on `delta_lower` alone.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EmbeddingCertificate {
    pub delta_lower: f64,
    /// Search minimum minus `tail_allowance`; `+∞` when no pairs were searched.
    pub delta_empirical: f64,
    pub tail_allowance: f64,
    pub search_depth: u32,
    pub verdict: Verdict,
}

/// Enumeration depth for the pair search: all residues modulo `p^depth`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DeltaSearch {
    pub depth: u32,
}

impl Default for DeltaSearch {
    fn default() -> Self {
        DeltaSearch { depth: 8 }
    }
}

/// Minimum distance between points whose classes differ. Points are given
/// as (class, value) pairs.
pub(crate) fn min_cross_distance(points: &[(u32, Complex64)]) -> f64 {
    points
        .par_iter()
        .enumerate()
        .map(|(i, &(ci, zi))| {
            points[i + 1..]
                .iter()
                .filter(|(cj, _)| *cj != ci)
                .map(|(_, zj)| (zi - zj).norm())
                .fold(f64::INFINITY, f64::min)
        })
        .reduce(|| f64::INFINITY, f64::min)
}

pub(crate) fn check_search_size(p: u32, depth: u32) -> Result<u128> {
    let n = residues(p, depth)?.count();
    if n > MAX_SEARCH_POINTS {
        return Err(Error::Parameter(format!(
            "pair search over {p}^{depth} points exceeds the brute-force cap of {MAX_SEARCH_POINTS}"
        )));
    }
    Ok(n)
}

fn empirical_min(params: &MapParams, depth: u32) -> Result<f64> {
    let n = check_search_size(params.p(), depth)?;
    let p = params.p() as u128;
    let points = (0..n)
        .into_par_iter()
        .map(|r| {
            let z = upsilon(&PAdicNumber::from_residue(params.p(), r), params)?;
            Ok(((r % p) as u32, z))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(min_cross_distance(&points))
}

/// Decides the verdict from the analytic bound and two consecutive search
/// depths. Without a positive bound, a search minimum counts as evidence of
/// injectivity only if refining the enumeration by one digit did not shrink
/// it at the rate `|s|` that an approaching collision would produce.
pub(crate) fn decide(lower: f64, at_depth: f64, at_previous: Option<f64>, abs_s: f64) -> Verdict {
    if lower > 0.0 {
        return Verdict::CertifiedEmbedding;
    }
    if !at_depth.is_finite() {
        return Verdict::NotApplicable;
    }
    match at_previous {
        Some(prev) if at_depth > 0.0 && prev.is_finite() && at_depth > prev * (1.0 + abs_s) / 2.0 => {
            Verdict::EmpiricallyInjective
        }
        _ => Verdict::Unknown,
    }
}

pub fn delta_certificate(params: &MapParams, search: DeltaSearch) -> Result<EmbeddingCertificate> {
    let abs_s = params.s().norm();
    let delta_lower = separation_lower_bound(params.p(), abs_s);
    let tail_allowance = 2.0 * params.tail_bound();
    let raw = empirical_min(params, search.depth)?;
    let previous = if search.depth >= 2 {
        Some(empirical_min(params, search.depth - 1)?)
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex_map::Order;

    #[test]
    fn threshold_values() {
        assert_eq!(s_zero(2), 0.5);
        assert!((s_zero(3) - 0.464_101_615_137_754_6).abs() < 1e-12);
        assert!((s_zero(6) - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn lower_bound_examples() {
        assert!((separation_lower_bound(2, 0.3) - 8.0 / 7.0).abs() < 1e-14);
        assert_eq!(separation_lower_bound(2, 0.5), 0.0);
        let want = 2.0 * (3f64.sqrt() / 2.0 - 0.25);
        assert!((separation_lower_bound(3, 0.2) - want).abs() < 1e-14);
    }

    #[test]
    fn certified_binary_case() {
        let params = MapParams::real(2, Order::Finite(0), 0.3).unwrap();
        let cert = delta_certificate(&params, DeltaSearch { depth: 8 }).unwrap();
        assert_eq!(cert.verdict, Verdict::CertifiedEmbedding);
        assert!(cert.delta_lower <= cert.delta_empirical + cert.tail_allowance);
    }

    #[test]
    fn threshold_case_is_unknown() {
        let params = MapParams::real(2, Order::Finite(0), 0.5).unwrap();
        let cert = delta_certificate(&params, DeltaSearch { depth: 8 }).unwrap();
        assert_eq!(cert.delta_lower, 0.0);
        assert_eq!(cert.verdict, Verdict::Unknown);
    }

    #[test]
    fn ternary_infinite_order() {
        let params = MapParams::real(3, Order::Infinite, 0.2).unwrap();
        let cert = delta_certificate(&params, DeltaSearch { depth: 8 }).unwrap();
        assert!((cert.delta_lower - 1.232_050_807_568_877).abs() < 1e-12);
        assert!(cert.delta_empirical >= cert.delta_lower);
        assert_eq!(cert.verdict, Verdict::CertifiedEmbedding);
    }

    #[test]
    fn search_cap_is_enforced() {
        let params = MapParams::real(2, Order::Finite(0), 0.3).unwrap();
        assert!(delta_certificate(&params, DeltaSearch { depth: 20 }).is_err());
    }

    #[test]
    fn verdict_rules() {
        assert_eq!(decide(0.1, 1.0, None, 0.3), Verdict::CertifiedEmbedding);
        assert_eq!(decide(0.0, 0.5, Some(0.5), 0.7), Verdict::EmpiricallyInjective);
        assert_eq!(decide(0.0, 0.25, Some(0.5), 0.5), Verdict::Unknown);
        assert_eq!(decide(0.0, f64::INFINITY, None, 0.5), Verdict::NotApplicable);
    }
}
