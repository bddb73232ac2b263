use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;

use super::point::{embed_j, SolenoidPoint};
use crate::complex_map::{phases, MapParams, Order};
use crate::error::{Error, Result};
use crate::padic::{residues, PAdicNumber};

/// Map parameters together with the offset `a` of the solid torus.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolenoidParams {
    map: MapParams,
    a: Complex64,
}

impl SolenoidParams {
    pub fn new(map: MapParams, a: Complex64) -> Result<Self> {
        if a == Complex64::new(0.0, 0.0) || !a.is_finite() {
            return Err(Error::Parameter(format!("a must be a finite non-zero complex number, got {a}")));
        }
        Ok(SolenoidParams { map, a })
    }

    pub fn map(&self) -> &MapParams {
        &self.map
    }

    pub fn a(&self) -> Complex64 {
        self.a
    }

    /// `a / |a|`.
    pub fn a_direction(&self) -> Complex64 {
        self.a / self.a.norm()
    }
}

/// Coefficient of `ξ` (in turns) in the phase of `χ̃_n`, for `n = 0..=depth`.
///
/// For finite `m` the index `n > m` only picks up `ξ` when the carry from
/// `x ↦ x + 1` reaches digit `n − m`, i.e. when `v(x + 1) ≥ n − m`. This is
/// what makes `ω(ξ → 1⁻, x)` agree with `ω(0, x + 1)`.
fn xi_coefficients(x: &PAdicNumber, m: Order, depth: usize) -> Vec<f64> {
    let p = x.p() as f64;
    match m {
        Order::Infinite => (0..=depth).map(|n| p.powi(-(n as i32) - 1)).collect(),
        Order::Finite(m) => {
            let reach = x.add_integer(1).valuation().finite();
            (0..=depth as i64)
                .map(|n| {
                    if n <= m as i64 {
                        p.powi(-(n as i32) - 1)
                    } else if reach.is_none_or(|v| v >= n - m as i64) {
                        p.powi(-(m as i32) - 1)
                    } else {
                        0.0
                    }
                })
                .collect()
        }
    }
}

/// Phases of `χ_n(x)` and the `ξ` coefficients of `χ̃_n`, for a reduced
/// representative with `ξ ∈ [0, 1)`.
#[derive(Clone, Debug)]
pub(crate) struct FiberTerms {
    phase: Vec<f64>,
    xi_coef: Vec<f64>,
}

impl FiberTerms {
    pub(crate) fn new(x: &PAdicNumber, params: &MapParams) -> Result<Self> {
        let depth = params.depth();
        Ok(FiberTerms {
            phase: phases(x, params.m(), 0, depth as i64)?,
            xi_coef: xi_coefficients(x, params.m(), depth),
        })
    }

    pub(crate) fn eval(&self, xi: f64, s: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        let mut pw = Complex64::new(1.0, 0.0);
        for (phi, c) in self.phase.iter().zip(&self.xi_coef) {
            acc += pw * Complex64::from_polar(1.0, TAU * (phi + xi * c));
            pw *= s;
        }
        acc
    }
}

fn reduce(xi: f64, x: &PAdicNumber) -> Result<(f64, PAdicNumber)> {
    if !xi.is_finite() {
        return Err(Error::Parameter(format!("ξ must be finite, got {xi}")));
    }
    let l = xi.floor();
    if l == 0.0 {
        return Ok((xi, x.clone()));
    }
    Ok((xi - l, x.add_integer(l as i128)))
}

/// `ω(ξ, x) = Σ_{n=0}^{N} s^n χ̃_n(ξ, x)` evaluated with an explicit `s`.
///
/// Any real `ξ` is accepted; `(ξ, x)` is first moved to the representative
/// `(ξ − l, x + l)` with `l = ⌊ξ⌋`, so the result is constant on cosets.
pub fn omega_with_s(xi: f64, x: &PAdicNumber, params: &MapParams, s: Complex64) -> Result<Complex64> {
    if s.norm() >= 1.0 {
        return Err(Error::Parameter(format!("|s| must be < 1, got |s| = {}", s.norm())));
    }
    if x.p() != params.p() {
        return Err(Error::IncompatibleBase { left: x.p(), right: params.p() });
    }
    if !x.is_integral() {
        return Err(Error::Parameter("ω is defined for x ∈ Z_p".into()));
    }
    let (xi, x) = reduce(xi, x)?;
    Ok(FiberTerms::new(&x, params)?.eval(xi, s))
}

pub fn omega(xi: f64, x: &PAdicNumber, params: &MapParams) -> Result<Complex64> {
    omega_with_s(xi, x, params, params.s())
}

/// `σ_a(ξ, z)`: `x₁ + i x₃ = e^{2πiξ}|a|(1 + Re(z/a))`, `x₂ = |a| Im(z/a)`.
pub fn sigma_a(xi: f64, z: Complex64, a: Complex64) -> Result<[f64; 3]> {
    if a == Complex64::new(0.0, 0.0) {
        return Err(Error::Parameter("σ_a needs a ≠ 0; use sigma_limit for the a → 0 limit".into()));
    }
    let w = z / a;
    let r = a.norm();
    let h = Complex64::from_polar(r * (1.0 + w.re), TAU * xi);
    Ok([h.re, r * w.im, h.im])
}

/// The `ε → 0⁺` limit of `σ_{εa}(ξ, z) − ε|a|(cos 2πξ, 0, sin 2πξ)`:
/// `x₁ + i x₃ = e^{2πiξ} Re(z·ā)`, `x₂ = Im(z·ā)` for a unit direction `a`.
pub fn sigma_limit(xi: f64, z: Complex64, a_direction: Complex64) -> [f64; 3] {
    let w = z * a_direction.conj();
    let h = Complex64::from_polar(w.re, TAU * xi);
    [h.re, w.im, h.im]
}

/// `Ω(f) = σ_a(ξ, ω(ξ, x))`.
pub fn embed_omega(f: &SolenoidPoint, sp: &SolenoidParams) -> Result<[f64; 3]> {
    sigma_a(f.xi(), omega(f.xi(), f.x(), &sp.map)?, sp.a)
}

fn require_infinite(params: &MapParams, what: &str) -> Result<()> {
    if params.m().is_infinite() {
        Ok(())
    } else {
        Err(Error::Unsupported(format!("{what} is only defined for m = ∞, got m = {}", params.m())))
    }
}

/// `J(Υ(x)) = Ω(j(x))` for `x ∈ Q_p`.
pub fn push_j(x: &PAdicNumber, sp: &SolenoidParams) -> Result<[f64; 3]> {
    require_infinite(&sp.map, "push_j")?;
    embed_omega(&embed_j(x)?, sp)
}

pub(crate) fn ensure_infinite(params: &MapParams, what: &str) -> Result<()> {
    require_infinite(params, what)
}

/// Preimage label of a solid-torus point: fiber index and residue.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiberLabel {
    pub xi_index: usize,
    pub residue: u128,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpacePoint {
    pub x: [f64; 3],
    pub label: FiberLabel,
}

/// Sampled image of the solenoid, fiber-major and residue-ascending.
#[derive(Clone, Debug)]
pub struct PointCloud3D {
    pub points: Vec<SpacePoint>,
    pub xi: Vec<f64>,
    pub params: SolenoidParams,
}

impl PointCloud3D {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Precomputed fiber terms for every residue modulo `p^depth`.
pub(crate) fn fiber_table(params: &MapParams, depth: u32) -> Result<Vec<FiberTerms>> {
    let n = residues(params.p(), depth)?.count();
    if n > 1 << 24 {
        return Err(Error::Parameter(format!("{}^{depth} residues is too many for a fiber table", params.p())));
    }
    (0..n)
        .into_par_iter()
        .map(|r| FiberTerms::new(&PAdicNumber::from_residue(params.p(), r), params))
        .collect()
}

/// `Ω` on the fibers `ξ_k = k / xi_grid` for `k < xi_grid`, each sampled at
/// the residues modulo `p^depth`.
pub fn solenoid_cloud(sp: &SolenoidParams, xi_grid: usize, depth: u32) -> Result<PointCloud3D> {
    let xi: Vec<f64> = (0..xi_grid).map(|k| k as f64 / xi_grid as f64).collect();
    solenoid_cloud_at(sp, &xi, depth)
}

/// As [`solenoid_cloud`] with explicit fiber positions in `[0, 1)`.
pub fn solenoid_cloud_at(sp: &SolenoidParams, xi: &[f64], depth: u32) -> Result<PointCloud3D> {
    if let Some(bad) = xi.iter().find(|t| !(0.0..1.0).contains(*t)) {
        return Err(Error::Parameter(format!("fiber positions must lie in [0, 1), got {bad}")));
    }
    let table = fiber_table(&sp.map, depth)?;
    let s = sp.map.s();
    let points = xi
        .par_iter()
        .enumerate()
        .flat_map_iter(|(k, &t)| {
            table.iter().enumerate().map(move |(r, terms)| {
                let x = sigma_a(t, terms.eval(t, s), sp.a).expect("a ≠ 0 by construction");
                SpacePoint { x, label: FiberLabel { xi_index: k, residue: r as u128 } }
            })
        })
        .collect();
    Ok(PointCloud3D { points, xi: xi.to_vec(), params: *sp })
}
