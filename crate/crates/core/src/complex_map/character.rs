use std::f64::consts::TAU;

use num_complex::Complex64;

use super::{MapParams, Order};
use crate::error::{Error, Result};
use crate::padic::PAdicNumber;

/// Phases `φ_n` (in turns) with `χ_n^(m)(x) = exp(2πi φ_n)` for `n = lo..=hi`.
///
/// `φ_n = Σ_{k=0}^{m} x_{n-k} p^{-k-1}`, where digits below the valuation are
/// zero. For `m = ∞` the sum runs down to the valuation and is accumulated by
/// Horner's rule, `φ_n = (x_n + φ_{n-1}) / p`.
pub(crate) fn phases(x: &PAdicNumber, m: Order, lo: i64, hi: i64) -> Result<Vec<f64>> {
    let len = (hi - lo + 1).max(0) as usize;
    if x.is_zero() && x.is_exact() || hi < x.v() {
        return Ok(vec![0.0; len]);
    }
    let p = x.p() as f64;
    let v = x.v();
    let dlo = match m {
        Order::Infinite => v,
        Order::Finite(m) => v.max(lo - m as i64),
    };
    let digits = x.digit_range(dlo, hi)?;
    let digit = |j: i64| digits[(j - dlo) as usize] as f64;
    let mut out = Vec::with_capacity(len);
    match m {
        Order::Infinite => {
            let mut acc = 0.0;
            for j in dlo..=hi {
                acc = (acc + digit(j)) / p;
                if j >= lo {
                    out.push(acc);
                }
            }
            // indices below dlo carry no digits
            let missing = len - out.len();
            out.splice(0..0, std::iter::repeat_n(0.0, missing));
        }
        Order::Finite(m) => {
            for n in lo..=hi {
                let start = dlo.max(n - m as i64);
                let mut acc = 0.0;
                for j in start..=n {
                    acc = (acc + digit(j)) / p;
                }
                out.push(acc);
            }
        }
    }
    Ok(out)
}

/// `χ_n^(m)(x) = exp((2πi/p) Σ_{k=0}^{m} x_{n-k} p^{-k})`.
pub fn chi(x: &PAdicNumber, n: i64, m: Order) -> Result<Complex64> {
    let phase = phases(x, m, n, n)?[0];
    Ok(Complex64::from_polar(1.0, TAU * phase))
}

/// `Υ(x)` split into `{Υ}(x)` and `[Υ](x) = Σ_{n≥0} s^n χ_n(x)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UpsilonParts {
    pub fractional: Complex64,
    pub integral: Complex64,
}

impl UpsilonParts {
    pub fn total(&self) -> Complex64 {
        self.fractional + self.integral
    }
}

fn check_s(s: Complex64) -> Result<()> {
    if s.norm() >= 1.0 {
        return Err(Error::Parameter(format!("|s| must be < 1, got |s| = {}", s.norm())));
    }
    Ok(())
}

/// Evaluates the series with an explicit `s`, keeping base, order and
/// truncation from `params`.
///
/// Uses `Υ(x) = Σ_{n=v}^{-1} s^n (χ_n(x) − 1) + Σ_{n=0}^{N} s^n χ_n(x)`, which
/// agrees with the prefix form `(1 − s^v)/(1 − s) + Σ_{n≥v} s^n χ_n(x)` and
/// needs no value for `v(0)`.
pub fn upsilon_with_s(x: &PAdicNumber, params: &MapParams, s: Complex64) -> Result<UpsilonParts> {
    check_s(s)?;
    if x.p() != params.p() {
        return Err(Error::IncompatibleBase { left: x.p(), right: params.p() });
    }
    let depth = params.depth() as i64;
    let lo = if x.is_zero() { 0 } else { x.v().min(0) };
    let ph = phases(x, params.m(), lo, depth)?;
    let mut fractional = Complex64::new(0.0, 0.0);
    if lo < 0 {
        let mut pw = s.powi(lo as i32);
        for &phi in &ph[..(-lo) as usize] {
            fractional += pw * (Complex64::from_polar(1.0, TAU * phi) - 1.0);
            pw *= s;
        }
    }
    let mut integral = Complex64::new(0.0, 0.0);
    let mut pw = Complex64::new(1.0, 0.0);
    for &phi in &ph[(-lo) as usize..] {
        integral += pw * Complex64::from_polar(1.0, TAU * phi);
        pw *= s;
    }
    Ok(UpsilonParts { fractional, integral })
}

pub fn upsilon_parts(x: &PAdicNumber, params: &MapParams) -> Result<UpsilonParts> {
    upsilon_with_s(x, params, params.s())
}

/// `Υ_s^(m)(x)` truncated at `params.depth()`; the dropped tail is at most
/// `params.tail_bound()`.
pub fn upsilon(x: &PAdicNumber, params: &MapParams) -> Result<Complex64> {
    upsilon_parts(x, params).map(|u| u.total())
}

/// Term-wise `∂Υ/∂s`.
pub fn upsilon_derivative(x: &PAdicNumber, params: &MapParams) -> Result<Complex64> {
    let s = params.s();
    let depth = params.depth() as i64;
    let lo = if x.is_zero() { 0 } else { x.v().min(0) };
    let ph = phases(x, params.m(), lo, depth)?;
    let mut acc = Complex64::new(0.0, 0.0);
    for (i, &phi) in ph.iter().enumerate() {
        let n = lo + i as i64;
        if n == 0 {
            continue;
        }
        let chi = Complex64::from_polar(1.0, TAU * phi);
        let term = if n < 0 { chi - 1.0 } else { chi };
        acc += term * (n as f64) * s.powi(n as i32 - 1);
    }
    Ok(acc)
}

/// Residuals of the scaling law `Υ(px) = sΥ(x) + 1` and of the polar form
/// `s = p^{-1/D_s} e^{i arg s}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScalingCheck {
    pub residual: f64,
    pub polar_residual: f64,
    /// `2 · tail_bound`: each side carries one truncated series.
    pub bound: f64,
}

impl ScalingCheck {
    pub fn passes(&self) -> bool {
        self.residual <= self.bound && self.polar_residual <= 1e-12
    }
}

pub fn verify_scaling(x: &PAdicNumber, params: &MapParams) -> Result<ScalingCheck> {
    let px = x.shift(1);
    let lhs = upsilon(&px, params)?;
    let rhs = params.s() * upsilon(x, params)? + 1.0;
    let s = params.s();
    let polar = Complex64::from_polar(
        (params.p() as f64).powf(-1.0 / params.scaling_dimension()),
        s.arg(),
    );
    Ok(ScalingCheck {
        residual: (lhs - rhs).norm(),
        polar_residual: (polar - s).norm(),
        bound: 2.0 * params.tail_bound(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::Rational;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn chi_of_zero_is_one() {
        let z = PAdicNumber::zero(5);
        for n in -3..4 {
            assert_eq!(chi(&z, n, Order::Finite(2)).unwrap(), c(1.0, 0.0));
            assert_eq!(chi(&z, n, Order::Infinite).unwrap(), c(1.0, 0.0));
        }
    }

    #[test]
    fn chi_unit_digit_is_minus_one() {
        let one = PAdicNumber::from_integer(2, 1);
        let v = chi(&one, 0, Order::Finite(0)).unwrap();
        assert!((v - c(-1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn chi_infinite_is_additive_character() {
        // χ_1^(∞)(1) = exp(2πi {1/4}_2) = i
        let one = PAdicNumber::from_integer(2, 1);
        let v = chi(&one, 1, Order::Infinite).unwrap();
        assert!((v - c(0.0, 1.0)).norm() < 1e-15);
        // general q ∈ Z: χ_n^(∞)(q) = exp(2πi q / p^{n+1})
        for q in [5i128, 17, 40, -7] {
            let x = PAdicNumber::from_integer(3, q);
            for n in 0..5 {
                let want = Complex64::from_polar(1.0, TAU * q as f64 / 3f64.powi(n + 1));
                let got = chi(&x, n as i64, Order::Infinite).unwrap();
                assert!((got - want).norm() < 1e-12, "q={q} n={n}");
            }
        }
    }

    #[test]
    fn chi_needs_digits_in_window() {
        let t = PAdicNumber::from_truncated(2, 0, vec![1, 0, 1]);
        assert!(matches!(chi(&t, 5, Order::Finite(0)), Err(Error::Precision { .. })));
        assert!(chi(&t, 2, Order::Infinite).is_ok());
    }

    #[test]
    fn upsilon_basic_values() {
        let s = 1.0 / 3.0;
        let params = MapParams::real(2, Order::Finite(0), s).unwrap();
        let tail = params.tail_bound();
        let zero = upsilon(&PAdicNumber::zero(2), &params).unwrap();
        assert!((zero - c(1.5, 0.0)).norm() <= tail);
        let minus_one = upsilon(&PAdicNumber::from_integer(2, -1), &params).unwrap();
        assert!((minus_one - c(-1.5, 0.0)).norm() <= tail);
        let one = upsilon(&PAdicNumber::from_integer(2, 1), &params).unwrap();
        assert!((one - c(-0.5, 0.0)).norm() <= tail);
        let two = upsilon(&PAdicNumber::from_integer(2, 2), &params).unwrap();
        assert!((two - c(5.0 / 6.0, 0.0)).norm() <= tail);
    }

    #[test]
    fn prefix_form_agrees_with_unified_form() {
        let params = MapParams::new(3, Order::Finite(1), c(0.3, 0.2)).unwrap();
        let s = params.s();
        for (n, d) in [(1i128, 9i128), (5, 3), (-7, 27), (2, 1)] {
            let x = PAdicNumber::expand(&Rational::new(n, d), 3, 40).unwrap();
            let v = x.v();
            let ph = phases(&x, params.m(), v, params.depth() as i64).unwrap();
            let mut direct = (Complex64::new(1.0, 0.0) - s.powi(v as i32)) / (1.0 - s);
            for (i, phi) in ph.iter().enumerate() {
                direct += s.powi(v as i32 + i as i32) * Complex64::from_polar(1.0, TAU * phi);
            }
            let got = upsilon(&x, &params).unwrap();
            assert!((got - direct).norm() < 1e-12, "{n}/{d}");
        }
    }

    #[test]
    fn fractional_part_of_one_half() {
        let params = MapParams::real(2, Order::Finite(0), 0.3).unwrap();
        let x = PAdicNumber::expand(&Rational::new(1, 2), 2, 8).unwrap();
        let parts = upsilon_parts(&x, &params).unwrap();
        assert!((parts.fractional - c(-2.0 / 0.3, 0.0)).norm() < 1e-12);
        let three = upsilon_parts(&PAdicNumber::from_integer(2, 3), &params).unwrap();
        assert_eq!(three.fractional, c(0.0, 0.0));
    }

    #[test]
    fn scaling_at_zero_and_one() {
        let params = MapParams::real(2, Order::Finite(0), 1.0 / 3.0).unwrap();
        let z = verify_scaling(&PAdicNumber::zero(2), &params).unwrap();
        assert!(z.residual <= z.bound);
        let one = verify_scaling(&PAdicNumber::from_integer(2, 1), &params).unwrap();
        assert!(one.passes());
    }

    #[test]
    fn rejects_mismatched_base() {
        let params = MapParams::real(2, Order::Finite(0), 0.3).unwrap();
        assert!(upsilon(&PAdicNumber::from_integer(3, 1), &params).is_err());
    }
}
