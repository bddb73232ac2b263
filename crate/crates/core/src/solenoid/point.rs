use crate::error::{Error, Result};
use crate::padic::{PAdicNumber, Rational};

/// A point `(ξ, x)` of the solenoid, realized as `[0,1) × Z_p`.
#[derive(Clone, Debug)]
pub struct SolenoidPoint {
    xi: f64,
    x: PAdicNumber,
}

impl SolenoidPoint {
    pub fn new(xi: f64, x: PAdicNumber) -> Result<Self> {
        if !(0.0..1.0).contains(&xi) {
            return Err(Error::Parameter(format!("ξ must lie in [0, 1), got {xi}")));
        }
        if !x.is_integral() {
            return Err(Error::Parameter("the Z_p coordinate must have norm ≤ 1".into()));
        }
        Ok(SolenoidPoint { xi, x })
    }

    pub fn zero(p: u32) -> Self {
        SolenoidPoint { xi: 0.0, x: PAdicNumber::zero(p) }
    }

    /// `(ξ, r)` for a non-negative integer `r`.
    pub fn from_residue(xi: f64, p: u32, r: u128) -> Result<Self> {
        Self::new(xi, PAdicNumber::from_residue(p, r))
    }

    pub fn xi(&self) -> f64 {
        self.xi
    }

    pub fn x(&self) -> &PAdicNumber {
        &self.x
    }

    pub fn p(&self) -> u32 {
        self.x.p()
    }

    /// `(ξ + η − ⌊ξ+η⌋, x + y + ⌊ξ+η⌋)`.
    pub fn add(&self, other: &Self) -> Result<Self> {
        let sum = self.xi + other.xi;
        let carry = sum.floor();
        let x = self.x.add(&other.x)?.add_integer(carry as i128);
        Ok(SolenoidPoint { xi: wrap(sum - carry), x })
    }

    /// `(1 − ξ, −x − 1)` for `ξ ≠ 0` and `(0, −x)` for `ξ = 0`.
    pub fn neg(&self) -> Self {
        let xi = 1.0 - self.xi;
        if self.xi == 0.0 || xi >= 1.0 {
            SolenoidPoint { xi: 0.0, x: self.x.neg() }
        } else {
            SolenoidPoint { xi, x: self.x.neg().add_integer(-1) }
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }
}

/// Keeps rounding from pushing a fractional part onto 1.0.
fn wrap(xi: f64) -> f64 {
    if xi >= 1.0 {
        0.0
    } else {
        xi.max(0.0)
    }
}

/// `ℓ_α(h) = max(ξ_h, |x_h|_p^α)`.
pub fn length(h: &SolenoidPoint, alpha: f64) -> f64 {
    h.xi.max(h.x.norm(alpha))
}

/// `ρ_α(f, g) = min(ℓ_α(f − g), ℓ_α(g − f))`.
pub fn rho(f: &SolenoidPoint, g: &SolenoidPoint, alpha: f64) -> Result<f64> {
    Ok(length(&f.sub(g)?, alpha).min(length(&g.sub(f)?, alpha)))
}

/// `j(x) = ({x}_p, [x]_p)`.
pub fn embed_j(x: &PAdicNumber) -> Result<SolenoidPoint> {
    let (frac, int) = x.split()?;
    Ok(SolenoidPoint { xi: rational_to_f64(&frac), x: int })
}

pub(crate) fn rational_to_f64(q: &Rational) -> f64 {
    *q.numer() as f64 / *q.denom() as f64
}

/// The flow `f ↦ f + ({t}, ⌊t⌋)`.
pub fn orbit(f: &SolenoidPoint, t: f64) -> Result<SolenoidPoint> {
    if !t.is_finite() || t.abs() > 1e15 {
        return Err(Error::Parameter(format!("orbit time must be finite and moderate, got {t}")));
    }
    let whole = t.floor();
    let shift = SolenoidPoint { xi: wrap(t - whole), x: PAdicNumber::from_integer(f.p(), whole as i128) };
    f.add(&shift)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(xi: f64, p: u32, x: i128) -> SolenoidPoint {
        SolenoidPoint::new(xi, PAdicNumber::from_integer(p, x)).unwrap()
    }

    #[test]
    fn addition_carries_into_zp() {
        let s = pt(0.7, 2, 0).add(&pt(0.6, 2, 0)).unwrap();
        assert!((s.xi() - 0.3).abs() < 1e-15);
        assert_eq!(s.x(), &PAdicNumber::from_integer(2, 1));
        let t = pt(0.0, 2, 3).add(&pt(0.0, 2, 5)).unwrap();
        assert_eq!(t.x(), &PAdicNumber::from_integer(2, 8));
    }

    #[test]
    fn inverse_cancels() {
        let f = pt(0.25, 2, 3);
        let z = f.add(&f.neg()).unwrap();
        assert_eq!(z.xi(), 0.0);
        assert!(z.x().is_zero());
        let g = pt(0.0, 3, 7);
        assert!(g.add(&g.neg()).unwrap().x().is_zero());
    }

    #[test]
    fn metric_examples() {
        let f = pt(0.9, 2, 0);
        let o = SolenoidPoint::zero(2);
        assert_eq!(rho(&f, &f, 1.0).unwrap(), 0.0);
        assert!((rho(&f, &o, 1.0).unwrap() - 0.9).abs() < 1e-15);
        // (0.1, 0) is closer through the wrap-free branch
        assert!((rho(&pt(0.1, 2, 0), &o, 1.0).unwrap() - 0.1).abs() < 1e-15);
        // integral distance is p-adic
        assert!((rho(&pt(0.0, 2, 4), &o, 1.0).unwrap() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn j_is_a_homomorphism_on_halves() {
        let half = PAdicNumber::expand(&Rational::new(1, 2), 2, 8).unwrap();
        let jh = embed_j(&half).unwrap();
        assert_eq!(jh.xi(), 0.5);
        assert!(jh.x().is_zero());
        let two = jh.add(&jh).unwrap();
        assert_eq!(two.xi(), 0.0);
        assert_eq!(two.x(), &PAdicNumber::from_integer(2, 1));
    }

    #[test]
    fn orbit_examples() {
        let f = pt(0.4, 3, 5);
        let same = orbit(&f, 0.0).unwrap();
        assert_eq!(same.xi(), 0.4);
        assert_eq!(same.x(), f.x());
        let o = orbit(&SolenoidPoint::zero(2), 1.0).unwrap();
        assert_eq!(o.xi(), 0.0);
        assert_eq!(o.x(), &PAdicNumber::from_integer(2, 1));
        let back = orbit(&SolenoidPoint::zero(2), -0.3).unwrap();
        assert!((back.xi() - 0.7).abs() < 1e-15);
        assert_eq!(back.x(), &PAdicNumber::from_integer(2, -1));
    }

    #[test]
    fn orbit_density_probe() {
        // t = x' mod p^M lands within p^{-M} of (0, x')
        let target = PAdicNumber::expand(&Rational::new(-5, 7), 3, 40).unwrap();
        for m in [2u32, 5, 9] {
            let t = target.residue_mod(m).unwrap() as f64;
            let g = orbit(&SolenoidPoint::zero(3), t).unwrap();
            let d = rho(&g, &SolenoidPoint::new(0.0, target.clone()).unwrap(), 1.0).unwrap();
            assert!(d <= 3f64.powi(-(m as i32)) + 1e-15, "M={m}: {d}");
        }
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(SolenoidPoint::new(1.0, PAdicNumber::zero(2)).is_err());
        let half = PAdicNumber::expand(&Rational::new(1, 2), 2, 4).unwrap();
        assert!(SolenoidPoint::new(0.0, half).is_err());
    }
}
