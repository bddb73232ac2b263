//! Moments against closed forms derived by hand from character
//! orthogonality, independently of the coefficient counter.
//!
//! For m = ∞ the characters χ_n are the additive characters of frequency
//! p^{-n-1}. With p ≥ 3 a product χ_a χ_b conj(χ_c χ_d) integrates to 1 exactly
//! when {a, b} = {c, d}, so for real s and x = s²
//!
//!   ⟨|z|²⟩ = 1/(1 − x),   ⟨|z|⁴⟩ = 2/(1 − x)² − 1/(1 − x²).

use padic_fractal::analysis::{moment, moment_series};
use padic_fractal::complex_map::{MapParams, Order};

#[test]
fn fourth_moment_for_odd_base() {
    for (p, s) in [(3u32, 0.2f64), (5, 0.3)] {
        let x = s * s;
        let want = 2.0 / (1.0 - x).powi(2) - 1.0 / (1.0 - x * x);
        let params = MapParams::real(p, Order::Infinite, s).unwrap();
        let depth = if p == 3 { 11 } else { 7 };
        let got = moment(2, 2, &params, depth).unwrap();
        assert!((got.value.re - want).abs() <= got.error_bound + 1e-9, "p={p}: {} vs {want}", got.value);
        let series = moment_series(2, 2, p, params.s(), 30).unwrap();
        assert!((series.re - want).abs() < 1e-12);
    }
}

#[test]
fn second_moment_any_base() {
    for p in [2u32, 3, 4, 7] {
        let params = MapParams::real(p, Order::Infinite, 0.35).unwrap();
        let got = moment(1, 1, &params, 8).unwrap();
        let want = 1.0 / (1.0 - 0.35f64 * 0.35);
        assert!((got.value.re - want).abs() <= got.error_bound, "p={p}");
    }
}
