use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::Serialize;

use super::omega::{embed_omega, ensure_infinite, omega_with_s, sigma_limit, SolenoidParams};
use super::point::{orbit, SolenoidPoint};
use crate::complex_map::MapParams;
use crate::error::{Error, Result};
use crate::padic::PAdicNumber;

/// `2π L₂ r − (2π/p) Re(e^{2πiξ}(L₃ + iL₁)) y` with `(L_k)_{ij} = ε_{ijk}`.
fn combine(r: [f64; 3], xi: f64, y: [f64; 3], p: u32) -> [f64; 3] {
    let (sn, cs) = (TAU * xi).sin_cos();
    let k = TAU / p as f64;
    [
        -TAU * r[2] - k * cs * y[1],
        k * (cs * y[0] + sn * y[2]),
        TAU * r[0] - k * sn * y[1],
    ]
}

/// `Ω_{s/p, +0a}(f)`: the fiber map at `s/p` pushed through `σ` in the
/// `a → 0` limit along the direction of `a`.
fn limit_term(xi: f64, x: &PAdicNumber, sp: &SolenoidParams) -> Result<[f64; 3]> {
    let map = sp.map();
    let w = omega_with_s(xi, x, map, map.s() / map.p() as f64)?;
    Ok(sigma_limit(xi, w, sp.a_direction()))
}

/// The vector field `Γ` on the image of `Ω` (order `m = ∞` only):
/// `Γ(Ω(f)) = 2π L₂ Ω(f) − (2π/p) Re(χ̃₋₁(f)(L₃ + iL₁)) Ω_{s/p,+0a}(f)`,
/// with `χ̃₋₁(ξ, x) = e^{2πiξ}` on `[0,1) × Z_p`.
pub fn field_gamma(f: &SolenoidPoint, sp: &SolenoidParams) -> Result<[f64; 3]> {
    ensure_infinite(sp.map(), "the vector field Γ")?;
    let r = embed_omega(f, sp)?;
    let y = limit_term(f.xi(), f.x(), sp)?;
    Ok(combine(r, f.xi(), y, sp.map().p()))
}

fn dist(a: [f64; 3], b: [f64; 3]) -> f64 {
    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt()
}

/// `|(Ω(f + h) − Ω(f − h)) / 2h − Γ(Ω(f))|` along the orbit through `f`.
pub fn orbit_derivative_residual(f: &SolenoidPoint, sp: &SolenoidParams, h: f64) -> Result<f64> {
    let fwd = embed_omega(&orbit(f, h)?, sp)?;
    let back = embed_omega(&orbit(f, -h)?, sp)?;
    let diff = [0, 1, 2].map(|i| (fwd[i] - back[i]) / (2.0 * h));
    Ok(dist(diff, field_gamma(f, sp)?))
}

/// `|(ω(ξ+h, x) − ω(ξ−h, x)) / 2h − (2πi/p) ω_{s/p}(ξ, x)|`.
pub fn omega_derivative_residual(xi: f64, x: &PAdicNumber, params: &MapParams, h: f64) -> Result<f64> {
    ensure_infinite(params, "the derivative identity for ω")?;
    let s = params.s();
    let fd = (omega_with_s(xi + h, x, params, s)? - omega_with_s(xi - h, x, params, s)?) / (2.0 * h);
    let exact = Complex64::new(0.0, TAU / params.p() as f64) * omega_with_s(xi, x, params, s / params.p() as f64)?;
    Ok((fd - exact).norm())
}

/// Reads the digits of the fiber point closest to `z` in the fiber over `ξ`,
/// one digit at a time: at each level the `p` candidate leading terms are
/// `2 sin(π/p)` apart while the rest of the series is smaller than
/// `|s|/(1−|s|)`, so the nearest candidate is the right digit whenever the
/// parameters are certified.
fn decode(xi: f64, z: Complex64, params: &MapParams, depth: u32) -> u128 {
    let p = params.p();
    let s = params.s();
    let mut w = z;
    let mut prev = 0.0;
    let mut residue = 0u128;
    let mut place = 1u128;
    for n in 0..depth {
        let scale = (p as f64).powi(-(n as i32) - 1);
        let (digit, term, phase) = (0..p)
            .map(|d| {
                let phase = (d as f64 + prev) / p as f64;
                let term = Complex64::from_polar(1.0, TAU * (phase + xi * scale));
                (d, term, phase)
            })
            .min_by(|a, b| (w - a.1).norm().total_cmp(&(w - b.1).norm()))
            .expect("p ≥ 2");
        w = (w - term) / s;
        prev = phase;
        residue += digit as u128 * place;
        place *= p as u128;
    }
    residue
}

/// Inverts `σ_a` on the solid torus: `(ξ, z)` with `Ω`-value `r`.
fn unroll(r: [f64; 3], sp: &SolenoidParams) -> (f64, Complex64) {
    let mut xi = r[2].atan2(r[0]) / TAU;
    if xi < 0.0 {
        xi += 1.0;
    }
    if xi >= 1.0 {
        xi = 0.0;
    }
    let a = sp.a();
    let w = Complex64::new(r[0].hypot(r[2]) / a.norm() - 1.0, r[1] / a.norm());
    (xi, a * w)
}

/// `Γ` extended to points near the image: the `ξ` coordinate comes from the
/// angle around the `x₂`-axis and the fiber coordinate from the nearest
/// residue at `lookup_depth`.
pub fn field_gamma_at(r: [f64; 3], sp: &SolenoidParams, lookup_depth: u32) -> Result<[f64; 3]> {
    ensure_infinite(sp.map(), "the vector field Γ")?;
    let (xi, z) = unroll(r, sp);
    let x = PAdicNumber::from_residue(sp.map().p(), decode(xi, z, sp.map(), lookup_depth));
    let y = limit_term(xi, &x, sp)?;
    Ok(combine(r, xi, y, sp.map().p()))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FlowConfig {
    pub t_end: f64,
    pub steps: usize,
    pub lookup_depth: u32,
}

impl Default for FlowConfig {
    fn default() -> Self {
        FlowConfig { t_end: 1.0, steps: 400, lookup_depth: 10 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FlowSample {
    pub t: f64,
    pub integrated: [f64; 3],
    pub exact: [f64; 3],
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FlowReport {
    pub samples: Vec<FlowSample>,
    /// Largest distance between the integrated curve and `Ω(orbit(f, t))`.
    pub max_divergence: f64,
}

/// Integrates `dr/dt = Γ(r)` from `Ω(f)` with classical RK4 and compares it
/// with the exact curve `t ↦ Ω(f + ({t}, ⌊t⌋))`.
pub fn integrate_flow(f: &SolenoidPoint, sp: &SolenoidParams, cfg: FlowConfig) -> Result<FlowReport> {
    ensure_infinite(sp.map(), "the vector field Γ")?;
    if cfg.steps == 0 || !cfg.t_end.is_finite() {
        return Err(Error::Parameter("flow needs at least one step and a finite end time".into()));
    }
    let h = cfg.t_end / cfg.steps as f64;
    let field = |r: [f64; 3]| field_gamma_at(r, sp, cfg.lookup_depth);
    let axpy = |r: [f64; 3], k: [f64; 3], c: f64| [r[0] + c * k[0], r[1] + c * k[1], r[2] + c * k[2]];
    let mut r = embed_omega(f, sp)?;
    let mut samples = vec![FlowSample { t: 0.0, integrated: r, exact: r }];
    let mut max_divergence = 0.0f64;
    for i in 1..=cfg.steps {
        let k1 = field(r)?;
        let k2 = field(axpy(r, k1, h / 2.0))?;
        let k3 = field(axpy(r, k2, h / 2.0))?;
        let k4 = field(axpy(r, k3, h))?;
        r = [0, 1, 2].map(|j| r[j] + h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]));
        let t = h * i as f64;
        let exact = embed_omega(&orbit(f, t)?, sp)?;
        max_divergence = max_divergence.max(dist(r, exact));
        samples.push(FlowSample { t, integrated: r, exact });
    }
    Ok(FlowReport { samples, max_divergence })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex_map::{s_zero, Order};

    fn fig2b() -> SolenoidParams {
        let map = MapParams::real(3, Order::Infinite, s_zero(3) - 0.02).unwrap();
        SolenoidParams::new(map, Complex64::new(2.5, 0.0)).unwrap()
    }

    #[test]
    fn closed_form_at_origin() {
        let params = MapParams::real(2, Order::Infinite, 0.3).unwrap();
        let w = omega_with_s(0.0, &PAdicNumber::zero(2), &params, params.s() / 2.0).unwrap();
        let got = Complex64::new(0.0, TAU / 2.0) * w;
        assert!((got - Complex64::new(0.0, std::f64::consts::PI / 0.85)).norm() < 1e-10);
        assert!((got.im - 3.6960).abs() < 1e-4);
    }

    #[test]
    fn omega_derivative_is_second_order() {
        let params = MapParams::new(3, Order::Infinite, Complex64::new(0.3, 0.1)).unwrap();
        let x = PAdicNumber::from_residue(3, 1234);
        let r1 = omega_derivative_residual(0.42, &x, &params, 1e-3).unwrap();
        let r2 = omega_derivative_residual(0.42, &x, &params, 1e-4).unwrap();
        assert!(r1 / r2 > 50.0, "{r1} {r2}");
    }

    #[test]
    fn gamma_matches_central_difference() {
        let sp = fig2b();
        for (xi, r) in [(0.1, 5u128), (0.7, 200), (0.0, 0), (0.9999, 77)] {
            let f = SolenoidPoint::from_residue(xi, 3, r).unwrap();
            let e1 = orbit_derivative_residual(&f, &sp, 1e-3).unwrap();
            let e2 = orbit_derivative_residual(&f, &sp, 1e-4).unwrap();
            assert!(e1 < 1e-2 && e1 / e2 > 50.0, "ξ={xi} r={r}: {e1} {e2}");
        }
    }

    #[test]
    fn finite_order_is_unsupported() {
        let map = MapParams::real(2, Order::Finite(0), 0.3).unwrap();
        let sp = SolenoidParams::new(map, Complex64::new(2.0, 0.0)).unwrap();
        assert!(matches!(field_gamma(&SolenoidPoint::zero(2), &sp), Err(Error::Unsupported(_))));
    }

    #[test]
    fn decoding_recovers_residues() {
        let sp = fig2b();
        for (xi, r) in [(0.0, 0u128), (0.3, 1000), (0.95, 2186)] {
            let x = PAdicNumber::from_residue(3, r);
            let point = embed_omega(&SolenoidPoint::new(xi, x).unwrap(), &sp).unwrap();
            let (xi2, z) = unroll(point, &sp);
            assert!((xi2 - xi).abs() < 1e-12);
            assert_eq!(decode(xi2, z, sp.map(), 7), r);
        }
    }

    #[test]
    fn extended_field_agrees_on_image() {
        let sp = fig2b();
        let f = SolenoidPoint::from_residue(0.2, 3, 51).unwrap();
        let on = field_gamma(&f, &sp).unwrap();
        let near = field_gamma_at(embed_omega(&f, &sp).unwrap(), &sp, 12).unwrap();
        assert!(dist(on, near) < 1e-4);
    }

    #[test]
    fn rk4_tracks_the_orbit() {
        let sp = fig2b();
        let f = SolenoidPoint::from_residue(0.05, 3, 14).unwrap();
        let rep = integrate_flow(&f, &sp, FlowConfig { t_end: 1.5, steps: 300, lookup_depth: 12 }).unwrap();
        assert_eq!(rep.samples.len(), 301);
        assert!(rep.max_divergence < 1e-3, "{}", rep.max_divergence);
    }
}
