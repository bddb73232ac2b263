//! Property-based invariants across the public API.

use num_complex::Complex64;
use padic_fractal::analysis::moment;
use padic_fractal::complex_map::{upsilon, upsilon_parts, verify_scaling, MapParams, Order};
use padic_fractal::padic::{ball_fraction, pow_u128, PAdicNumber, Rational};
use padic_fractal::render::{pgm, Intensity, RasterConfig, Viewport};
use padic_fractal::solenoid::{embed_j, omega, rho, SolenoidPoint};
use proptest::prelude::*;

fn base() -> impl Strategy<Value = u32> {
    prop_oneof![Just(2u32), Just(3), Just(5), Just(6), Just(7)]
}

fn rational() -> impl Strategy<Value = Rational> {
    (-5000i128..5000, 1i128..400).prop_map(|(n, d)| Rational::new(n, d))
}

fn order() -> impl Strategy<Value = Order> {
    prop_oneof![(0u32..4).prop_map(Order::Finite), Just(Order::Infinite)]
}

fn small_s() -> impl Strategy<Value = Complex64> {
    (0.05f64..0.6, 0.0f64..std::f64::consts::TAU).prop_map(|(r, t)| Complex64::from_polar(r, t))
}

proptest! {
    #[test]
    fn expansion_round_trips(p in base(), q in rational()) {
        let x = PAdicNumber::expand(&q, p, 64).unwrap();
        prop_assert_eq!(x.to_rational(), Some(q));
    }

    #[test]
    fn ultrametric_inequality(p in base(), a in rational(), b in rational()) {
        let x = PAdicNumber::expand(&a, p, 64).unwrap();
        let y = PAdicNumber::expand(&b, p, 64).unwrap();
        let s = x.add(&y).unwrap();
        prop_assert!(s.norm(1.0) <= x.norm(1.0).max(y.norm(1.0)));
        prop_assert_eq!(s.to_rational(), Some(a + b));
    }

    #[test]
    fn subtraction_undoes_addition(p in base(), a in rational(), b in rational()) {
        let x = PAdicNumber::expand(&a, p, 64).unwrap();
        let y = PAdicNumber::expand(&b, p, 64).unwrap();
        prop_assert!(x.add(&y).unwrap().sub(&y).unwrap().same_value(&x));
    }

    #[test]
    fn split_recombines(p in base(), q in rational()) {
        let x = PAdicNumber::expand(&q, p, 64).unwrap();
        let (frac, int) = x.split().unwrap();
        prop_assert!(int.is_integral());
        prop_assert!(frac >= Rational::from_integer(0) && frac < Rational::from_integer(1));
        prop_assert_eq!(int.to_rational().map(|i| i + frac), Some(q));
    }

    #[test]
    fn balls_carry_haar_measure(p in prop_oneof![Just(2u32), Just(3), Just(5)], k in 0u32..4, l in 0u128..1000) {
        let f = ball_fraction(p, 5, l, k).unwrap();
        prop_assert_eq!(f, 1.0 / pow_u128(p, k).unwrap() as f64);
    }

    #[test]
    fn scaling_law_holds(p in base(), m in order(), s in small_s(), r in 0u128..1_000_000_000) {
        let params = MapParams::new(p, m, s).unwrap();
        let check = verify_scaling(&PAdicNumber::from_residue(p, r), &params).unwrap();
        prop_assert!(check.residual <= check.bound, "{} > {}", check.residual, check.bound);
    }

    #[test]
    fn image_stays_in_the_disk(p in base(), m in order(), s in small_s(), r in 0u128..1_000_000) {
        let params = MapParams::new(p, m, s).unwrap();
        let z = upsilon(&PAdicNumber::from_residue(p, r), &params).unwrap();
        prop_assert!(z.norm() <= params.disk_radius() + 1e-12);
    }

    #[test]
    fn integral_part_is_omega_of_j(s in 0.05f64..0.6, r in 0u128..100_000, k in 0i64..5) {
        let params = MapParams::real(3, Order::Infinite, s).unwrap();
        let x = PAdicNumber::from_residue(3, r).shift(-k);
        let jx = embed_j(&x).unwrap();
        let lhs = upsilon_parts(&x, &params).unwrap().integral;
        let rhs = omega(jx.xi(), jx.x(), &params).unwrap();
        prop_assert!((lhs - rhs).norm() <= 2.0 * params.tail_bound());
    }

    #[test]
    fn solenoid_group_and_metric(
        p in prop_oneof![Just(2u32), Just(3), Just(5)],
        xs in proptest::array::uniform3((0.0f64..1.0, 0u128..1_000_000)),
        alpha in 0.3f64..1.0,
    ) {
        let [f, g, h] = xs.map(|(xi, r)| SolenoidPoint::from_residue(xi, p, r).unwrap());
        let tol = 1e-12;
        prop_assert!(rho(&f.add(&g).unwrap().add(&h).unwrap(), &f.add(&g.add(&h).unwrap()).unwrap(), alpha).unwrap() <= tol);
        prop_assert!(rho(&f.add(&g).unwrap(), &g.add(&f).unwrap(), alpha).unwrap() <= tol);
        prop_assert!(rho(&f.add(&f.neg()).unwrap(), &SolenoidPoint::zero(p), alpha).unwrap() <= tol);
        let (fg, gh, fh) = (rho(&f, &g, alpha).unwrap(), rho(&g, &h, alpha).unwrap(), rho(&f, &h, alpha).unwrap());
        prop_assert!(fh <= fg + gh + tol);
        let shifted = rho(&f.add(&h).unwrap(), &g.add(&h).unwrap(), alpha).unwrap();
        prop_assert!((shifted - fg).abs() <= tol);
    }

    #[test]
    fn digit_rotation_turns_the_image(p in base(), s in small_s(), r in 0u128..1_000_000) {
        let params = MapParams::new(p, Order::Finite(0), s).unwrap();
        let x = PAdicNumber::from_residue(p, r);
        let turn = Complex64::from_polar(1.0, std::f64::consts::TAU / p as f64);
        let lhs = upsilon(&x.digit_rotate(1).unwrap(), &params).unwrap();
        let rhs = turn * upsilon(&x, &params).unwrap();
        prop_assert!((lhs - rhs).norm() <= 2.0 * params.tail_bound() + 1e-13);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn moments_conjugate(p in prop_oneof![Just(2u32), Just(3)], m in order(), s in small_s(), l in 0u32..3, lbar in 0u32..3) {
        let params = MapParams::new(p, m, s).unwrap();
        let a = moment(l, lbar, &params, 6).unwrap();
        let b = moment(lbar, l, &params, 6).unwrap();
        prop_assert!((a.value - b.value.conj()).norm() < 1e-13);
    }

    #[test]
    fn raster_ignores_thread_count(seed in 0u64..1000, n in 1usize..60_000) {
        let points: Vec<Complex64> = (0..n)
            .map(|i| {
                let t = (i as u64).wrapping_mul(seed | 1) as f64 * 1e-3;
                Complex64::new(t.sin(), (1.7 * t).cos())
            })
            .collect();
        let cfg = RasterConfig::new(97, 61, Viewport::new(-1.0, 1.0, -1.0, 1.0).unwrap(), Intensity::Density).unwrap();
        let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap().install(|| pgm(&points, &cfg));
        let four = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap().install(|| pgm(&points, &cfg));
        prop_assert_eq!(one, four);
    }
}
