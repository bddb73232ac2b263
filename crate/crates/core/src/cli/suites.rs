//! The `verify` suites. Each returns a [`Report`]; sampled suites draw from a
//! ChaCha8 stream seeded by the run seed plus a per-suite salt, so suites can
//! run in any order and still reproduce bit for bit.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::analysis::{fmt_num, kappa_divergence, KappaSampling, Report, ReportLine};
use crate::complex_map::{separation_lower_bound, upsilon, upsilon_parts, verify_scaling, MapParams, Order};
use crate::error::{Error, Result};
use crate::padic::{pow_u128, residues, sample_residue, PAdicNumber};
use crate::render::preset;
use crate::solenoid::{
    embed_j, integrate_flow, omega_derivative_residual, omega_with_s, orbit_derivative_residual, rho, FlowConfig,
    SolenoidParams, SolenoidPoint,
};

pub const SUITES: [&str; 8] = ["scaling", "sandwich", "group", "j", "eq40", "ode", "kappa", "symmetry"];

/// Largest exhaustive enumeration any suite will run.
const EXHAUSTIVE_CAP: u128 = 1 << 16;

/// Working precision for comparisons on the solenoid.
pub const SOLENOID_TOL: f64 = 1e-12;

fn rng_for(seed: u64, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

/// Floating-point allowance for one truncated series evaluation.
pub fn rounding_allowance(params: &MapParams) -> f64 {
    4.0 * (params.depth() + 1) as f64 * f64::EPSILON * (params.disk_radius() + 1.0)
}

pub fn fmt_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else {
        format!("{}{:+}i", z.re, z.im)
    }
}

fn tag(params: &MapParams) -> String {
    format!("p{}.m{}.s{}", params.p(), params.m(), fmt_complex(params.s()))
}

fn sample_points(p: u32, depth: u32, samples: usize, seed: u64, salt: u64, exhaustive: bool) -> Result<Vec<u128>> {
    if exhaustive {
        let all = residues(p, depth)?;
        if all.count() > EXHAUSTIVE_CAP {
            return Err(Error::Parameter(format!(
                "exhaustive run over {p}^{depth} residues exceeds the cap of {EXHAUSTIVE_CAP}"
            )));
        }
        return Ok(all.iter().collect());
    }
    let mut rng = rng_for(seed, salt);
    (0..samples).map(|_| sample_residue(&mut rng, p, depth)).collect()
}

/// `|Υ(px) − sΥ(x) − 1|` over sampled residues, and the polar form of `s`.
pub fn scaling(params: &MapParams, samples: usize, depth: u32, seed: u64, exhaustive: bool) -> Result<Report> {
    let xs = sample_points(params.p(), depth, samples, seed, 1, exhaustive)?;
    let checks = xs
        .par_iter()
        .map(|&r| verify_scaling(&PAdicNumber::from_residue(params.p(), r), params))
        .collect::<Result<Vec<_>>>()?;
    let worst = checks.iter().map(|c| c.residual).fold(0.0, f64::max);
    let polar = checks.first().map_or(0.0, |c| c.polar_residual);
    let bound = 2.0 * params.tail_bound() + 2.0 * rounding_allowance(params);
    let mut r = Report::new();
    r.push(ReportLine::at_most(format!("scaling.{}.max_residual", tag(params)), worst, bound));
    r.push(ReportLine::at_most(format!("scaling.{}.polar_residual", tag(params)), polar, 1e-12));
    Ok(r)
}

/// Both sides of `Δ|s|^v ≤ |Υ(x) − Υ(y)| ≤ 2|s|^v/(1−|s|)` with `v = v(x−y)`.
pub fn sandwich(params: &MapParams, pairs: usize, depth: u32, seed: u64, exhaustive: bool) -> Result<Report> {
    let p = params.p();
    let depth = depth.min(params.depth() as u32);
    let list: Vec<(u128, u128)> = if exhaustive {
        let n = residues(p, depth)?.count();
        if n * n > EXHAUSTIVE_CAP * 16 {
            return Err(Error::Parameter(format!("exhaustive pair search over {p}^{depth} residues is too large")));
        }
        (0..n).flat_map(|x| (x + 1..n).map(move |y| (x, y))).collect()
    } else {
        let mut rng = rng_for(seed, 2);
        let modulus = pow_u128(p, depth)?;
        (0..pairs)
            .map(|_| {
                let x = sample_residue(&mut rng, p, depth)?;
                let k = rng.gen_range(0..depth);
                let unit = loop {
                    let u = sample_residue(&mut rng, p, depth)?;
                    if u % p as u128 != 0 {
                        break u;
                    }
                };
                let step = (pow_u128(p, k)? * unit) % modulus;
                Ok((x, (x + step) % modulus))
            })
            .collect::<Result<_>>()?
    };
    let abs_s = params.s().norm();
    let lower = separation_lower_bound(p, abs_s);
    let allowance = 2.0 * params.tail_bound() + 2.0 * rounding_allowance(params);
    let outcomes = list
        .par_iter()
        .map(|&(x, y)| {
            let (x, y) = (PAdicNumber::from_residue(p, x), PAdicNumber::from_residue(p, y));
            let v = x.sub(&y)?.v();
            let d = (upsilon(&x, params)? - upsilon(&y, params)?).norm();
            let scale = abs_s.powi(v as i32);
            Ok((lower * scale > d + allowance, d > 2.0 * scale / (1.0 - abs_s) + allowance))
        })
        .collect::<Result<Vec<_>>>()?;
    let low = outcomes.iter().filter(|o| o.0).count();
    let high = outcomes.iter().filter(|o| o.1).count();
    let mut r = Report::new();
    r.push(ReportLine::equals(format!("sandwich.{}.lower_violations", tag(params)), low, 0));
    r.push(ReportLine::equals(format!("sandwich.{}.upper_violations", tag(params)), high, 0));
    r.push(ReportLine::at_least(format!("sandwich.{}.delta_lower", tag(params)), lower, 0.0));
    Ok(r)
}

fn random_point(rng: &mut ChaCha8Rng, p: u32, depth: u32) -> Result<SolenoidPoint> {
    let xi: f64 = rng.gen();
    SolenoidPoint::from_residue(xi, p, sample_residue(rng, p, depth)?)
}

/// Group axioms of the carry addition and metric axioms of `ρ_α`.
pub fn group(p: u32, alpha: f64, triples: usize, depth: u32, seed: u64) -> Result<Report> {
    let mut rng = rng_for(seed, 3);
    let pts = (0..triples)
        .map(|_| Ok([random_point(&mut rng, p, depth)?, random_point(&mut rng, p, depth)?, random_point(&mut rng, p, depth)?]))
        .collect::<Result<Vec<_>>>()?;
    let zero = SolenoidPoint::zero(p);
    let stats = pts
        .par_iter()
        .map(|[f, g, h]| {
            let assoc = rho(&f.add(g)?.add(h)?, &f.add(&g.add(h)?)?, alpha)?;
            let ident = rho(&f.add(&zero)?, f, alpha)?;
            let inv = rho(&f.add(&f.neg())?, &zero, alpha)?;
            let comm = rho(&f.add(g)?, &g.add(f)?, alpha)?;
            let (fg, gf, gh, fh) = (rho(f, g, alpha)?, rho(g, f, alpha)?, rho(g, h, alpha)?, rho(f, h, alpha)?);
            let sym = (fg - gf).abs();
            let tri = (fh - fg - gh).max(0.0);
            let selfd = rho(f, f, alpha)?;
            let trans = (rho(&f.add(h)?, &g.add(h)?, alpha)? - fg).abs();
            Ok([assoc, ident, inv, comm, sym, tri, selfd, trans, fg])
        })
        .collect::<Result<Vec<_>>>()?;
    let max = |i: usize| stats.iter().map(|s| s[i]).fold(0.0, f64::max);
    let min_sep = stats.iter().map(|s| s[8]).fold(f64::INFINITY, f64::min);
    let names = [
        "group.associativity",
        "group.identity",
        "group.inverse",
        "group.commutativity",
        "metric.symmetry",
        "metric.triangle_excess",
        "metric.self_distance",
        "metric.translation_invariance",
    ];
    let mut r = Report::new();
    for (i, name) in names.iter().enumerate() {
        r.push(ReportLine::at_most(format!("{name}.p{p}.max"), max(i), SOLENOID_TOL));
    }
    r.push(ReportLine::at_least(format!("metric.separation.p{p}.min_distinct"), min_sep, SOLENOID_TOL));
    Ok(r)
}

/// `j` is a homomorphism on `p^{-k} Z_p` and an isometry on `Z_p`.
pub fn j_suite(p: u32, alpha: f64, samples: usize, depth: u32, seed: u64) -> Result<Report> {
    let mut rng = rng_for(seed, 4);
    let pairs = (0..samples)
        .map(|_| {
            let kx = rng.gen_range(0..=4);
            let ky = rng.gen_range(0..=4);
            let x = PAdicNumber::from_residue(p, sample_residue(&mut rng, p, depth)?).shift(-kx);
            let y = PAdicNumber::from_residue(p, sample_residue(&mut rng, p, depth)?).shift(-ky);
            Ok((x, y))
        })
        .collect::<Result<Vec<_>>>()?;
    let stats = pairs
        .par_iter()
        .map(|(x, y)| {
            let hom = rho(&embed_j(&x.add(y)?)?, &embed_j(x)?.add(&embed_j(y)?)?, alpha)?;
            let (xi, yi) = (x.split()?.1, y.split()?.1);
            let iso = (rho(&embed_j(&xi)?, &embed_j(&yi)?, alpha)? - xi.sub(&yi)?.norm(alpha)).abs();
            Ok((hom, iso))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut r = Report::new();
    r.push(ReportLine::at_most(
        format!("j.p{p}.homomorphism_max"),
        stats.iter().map(|s| s.0).fold(0.0, f64::max),
        SOLENOID_TOL,
    ));
    r.push(ReportLine::at_most(
        format!("j.p{p}.isometry_max"),
        stats.iter().map(|s| s.1).fold(0.0, f64::max),
        SOLENOID_TOL,
    ));
    Ok(r)
}

/// `[Υ](x) = ω({x}_p, [x]_p)` on `p^{-4} Z_p` for `m = ∞`.
pub fn eq40(params: &MapParams, samples: usize, depth: u32, seed: u64) -> Result<Report> {
    let params = params.with_m(Order::Infinite);
    let p = params.p();
    let mut rng = rng_for(seed, 5);
    let xs = (0..samples)
        .map(|_| Ok(PAdicNumber::from_residue(p, sample_residue(&mut rng, p, depth)?).shift(-4)))
        .collect::<Result<Vec<_>>>()?;
    let bound = 2.0 * params.tail_bound();
    let diffs = xs
        .par_iter()
        .map(|x| {
            let int = upsilon_parts(x, &params)?.integral;
            let f = embed_j(x)?;
            Ok((int - omega_with_s(f.xi(), f.x(), &params, params.s())?).norm())
        })
        .collect::<Result<Vec<f64>>>()?;
    let violations = diffs.iter().filter(|&&d| d > bound).count();
    let mut r = Report::new();
    r.push(ReportLine::at_most(
        format!("eq40.{}.max_residual", tag(&params)),
        diffs.iter().copied().fold(0.0, f64::max),
        bound,
    ));
    r.push(ReportLine::equals(format!("eq40.{}.violations", tag(&params)), violations, 0));
    Ok(r)
}

/// Central differences of `ω` and of `Ω` along orbits against the closed
/// forms, the spot value at the origin, and an RK4 run of the field.
pub fn ode(sp: &SolenoidParams, points: usize, seed: u64) -> Result<Report> {
    let map = *sp.map();
    if !map.m().is_infinite() {
        return Err(Error::Unsupported(format!("the ode suite needs m = inf, got m = {}", map.m())));
    }
    let p = map.p();
    let mut rng = rng_for(seed, 6);
    let pts = (0..points).map(|_| random_point(&mut rng, p, 12)).collect::<Result<Vec<_>>>()?;
    let (h1, h2) = (1e-3, 1e-4);
    let stats = pts
        .par_iter()
        .map(|f| {
            let a = orbit_derivative_residual(f, sp, h1)?;
            let b = orbit_derivative_residual(f, sp, h2)?;
            let wa = omega_derivative_residual(f.xi(), f.x(), &map, h1)?;
            let wb = omega_derivative_residual(f.xi(), f.x(), &map, h2)?;
            Ok((a / b, b, wa / wb))
        })
        .collect::<Result<Vec<_>>>()?;
    let spot = Complex64::new(0.0, TAU / p as f64) * omega_with_s(0.0, &PAdicNumber::zero(p), &map, map.s() / p as f64)?;
    let closed = Complex64::new(0.0, TAU / p as f64) / (1.0 - map.s() / p as f64);
    let flow = integrate_flow(&pts[0], sp, FlowConfig { t_end: 1.0, steps: 400, lookup_depth: 14 })?;

    let t = format!("{}.a{}", tag(&map), fmt_complex(sp.a()));
    let mut r = Report::new();
    r.push(ReportLine::at_least(
        format!("ode.{t}.orbit_fd_ratio_min"),
        stats.iter().map(|s| s.0).fold(f64::INFINITY, f64::min),
        50.0,
    ));
    r.push(ReportLine::at_most(
        format!("ode.{t}.orbit_fd_residual_max"),
        stats.iter().map(|s| s.1).fold(0.0, f64::max),
        1e-4,
    ));
    r.push(ReportLine::at_least(
        format!("ode.{t}.omega_fd_ratio_min"),
        stats.iter().map(|s| s.2).fold(f64::INFINITY, f64::min),
        50.0,
    ));
    r.push(ReportLine::at_most(format!("ode.{t}.closed_form_residual"), (spot - closed).norm(), 1e-6));
    r.push(ReportLine::at_most(format!("ode.{t}.rk4_max_divergence"), flow.max_divergence, 1e-3));
    Ok(r)
}

/// `κ` between orders `m` and `∞` against its bound, and its decrease in `m`.
pub fn kappa(params: &MapParams, orders: &[u32], seed: u64) -> Result<Report> {
    let inf = params.with_m(Order::Infinite);
    let sampling = KappaSampling { seed: seed ^ 7, ..Default::default() };
    let mut r = Report::new();
    let mut values = Vec::new();
    for &m in orders {
        let res = kappa_divergence(&params.with_m(Order::Finite(m)), &inf, sampling)?;
        let t = format!("p{}.s{}.m{m}", params.p(), fmt_complex(params.s()));
        r.push(ReportLine::at_most(format!("kappa.{t}.divergence"), res.kappa, res.bound));
        r.push(ReportLine::at_most(format!("kappa.{t}.character_gap"), res.character_gap, res.character_bound));
        values.push((m, res.kappa));
    }
    if let (Some(&(m0, k0)), Some(&(m1, k1))) = (values.first(), values.last()) {
        if m1 > m0 {
            r.push(ReportLine::new(
                format!("kappa.p{}.s{}.m{m1}_below_m{m0}", params.p(), fmt_complex(params.s())),
                fmt_num(k1),
                format!("< {}", fmt_num(k0)),
                k1 < k0,
            ));
        }
    }
    Ok(r)
}

/// `Υ^(0)(x + 1·digitwise) = e^{2πi/p} Υ^(0)(x)`: adding 1 to every digit
/// without carry rotates the image of `Z_p` by `2π/p`.
pub fn symmetry(params: &MapParams, samples: usize, depth: u32, seed: u64) -> Result<Report> {
    let params = params.with_m(Order::Finite(0));
    let p = params.p();
    let xs = sample_points(p, depth, samples, seed, 8, false)?;
    let turn = Complex64::from_polar(1.0, TAU / p as f64);
    let worst = xs
        .par_iter()
        .map(|&r| {
            let x = PAdicNumber::from_residue(p, r);
            Ok((upsilon(&x.digit_rotate(1)?, &params)? - turn * upsilon(&x, &params)?).norm())
        })
        .collect::<Result<Vec<f64>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    let mut r = Report::new();
    r.push(ReportLine::at_most(
        format!("symmetry.{}.max_residual", tag(&params)),
        worst,
        2.0 * params.tail_bound() + 2.0 * rounding_allowance(&params),
    ));
    Ok(r)
}

/// Runs one suite on the given parameters.
pub fn run_suite(name: &str, params: &MapParams, a: Option<Complex64>, alpha: f64, depth: Option<u32>, seed: u64, exhaustive: bool) -> Result<Report> {
    match name {
        "scaling" => scaling(params, 1000, depth.unwrap_or(if exhaustive { 8 } else { 30 }), seed, exhaustive),
        "sandwich" => sandwich(params, 10_000, depth.unwrap_or(if exhaustive { 8 } else { 20 }), seed, exhaustive),
        "group" => group(params.p(), alpha, 10_000, depth.unwrap_or(20), seed),
        "j" => j_suite(params.p(), alpha, 1000, depth.unwrap_or(16), seed),
        "eq40" => eq40(params, 200, depth.unwrap_or(20), seed),
        "ode" => {
            let a = a.unwrap_or_else(|| Complex64::new(2.0 * params.disk_radius(), 0.0));
            ode(&SolenoidParams::new(*params, a)?, 20, seed)
        }
        "kappa" => kappa(params, &[3, 6, 9], seed),
        "symmetry" => symmetry(params, 1000, depth.unwrap_or(30), seed),
        other => Err(Error::Parameter(format!("unknown suite `{other}`; available: {}", SUITES.join(", ")))),
    }
}

/// Every suite on its reference parameters.
pub fn run_all(seed: u64) -> Result<Report> {
    let mut r = Report::new();
    let c = |re, im| Complex64::new(re, im);
    for p in [2, 3, 6] {
        for m in [Order::Finite(0), Order::Finite(2), Order::Infinite] {
            for s in [c(0.3, 0.0), c(0.25, 0.1)] {
                r.extend(scaling(&MapParams::new(p, m, s)?, 1000, 30, seed, false)?);
            }
        }
    }
    r.extend(sandwich(&MapParams::real(2, Order::Finite(0), 0.3)?, 10_000, 20, seed, false)?);
    r.extend(group(2, 1.0, 10_000, 20, seed)?);
    r.extend(group(3, 0.5, 2_000, 12, seed)?);
    r.extend(j_suite(2, 1.0, 1000, 16, seed)?);
    r.extend(j_suite(3, 1.0, 1000, 12, seed)?);
    r.extend(eq40(&MapParams::real(3, Order::Infinite, 0.2)?, 200, 20, seed)?);
    let fig = preset("fig2b-t3")?;
    r.extend(ode(&fig.solenoid_params().expect("solenoid preset"), 20, seed)?);
    r.extend(kappa(&MapParams::real(2, Order::Finite(0), 0.3)?, &[3, 6, 9], seed)?);
    r.extend(symmetry(&MapParams::real(3, Order::Finite(0), 0.3)?, 1000, 30, seed)?);
    r.extend(symmetry(&MapParams::new(4, Order::Finite(0), c(0.2, 0.15))?, 1000, 20, seed)?);
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_pass_on_reference_parameters() {
        let params = MapParams::real(2, Order::Finite(0), 0.3).unwrap();
        for name in ["scaling", "sandwich", "j", "eq40", "kappa", "symmetry"] {
            let r = run_suite(name, &params, None, 1.0, None, 11, false).unwrap();
            assert!(r.passed(), "{name}:\n{r}");
        }
        let r = group(2, 1.0, 500, 16, 3).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn ode_needs_infinite_order() {
        let params = MapParams::real(2, Order::Finite(0), 0.3).unwrap();
        assert!(run_suite("ode", &params, None, 1.0, None, 1, false).is_err());
        let inf = params.with_m(Order::Infinite);
        let r = run_suite("ode", &inf, Some(Complex64::new(3.0, 0.0)), 1.0, None, 1, false).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn exhaustive_scaling() {
        let params = MapParams::real(3, Order::Finite(1), 0.4).unwrap();
        let r = scaling(&params, 0, 6, 0, true).unwrap();
        assert!(r.passed());
        assert!(scaling(&params, 0, 20, 0, true).is_err());
    }

    #[test]
    fn unknown_suite() {
        let params = MapParams::real(2, Order::Finite(0), 0.3).unwrap();
        assert!(run_suite("nope", &params, None, 1.0, None, 1, false).is_err());
    }
}
