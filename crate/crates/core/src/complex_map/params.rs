use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default absolute tolerance for truncated series.
pub const DEFAULT_TOL: f64 = 1e-12;

/// Smoothing order `m` of the characters: a finite digit window or `∞`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Order {
    Finite(u32),
    Infinite,
}

impl Order {
    pub fn is_infinite(self) -> bool {
        matches!(self, Order::Infinite)
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(m) => write!(f, "{m}"),
            Order::Infinite => write!(f, "inf"),
        }
    }
}

impl std::str::FromStr for Order {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "∞" => Ok(Order::Infinite),
            other => other
                .parse::<u32>()
                .map(Order::Finite)
                .map_err(|_| Error::Parameter(format!("m must be a non-negative integer or `inf`, got `{other}`"))),
        }
    }
}

/// Parameters of `Υ_s^(m)` together with the series truncation.
///
/// `depth` is the last series index `N`; by default it is the smallest `N`
/// with `2|s|^{N+1}/(1-|s|) ≤ tol`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MapParams {
    p: u32,
    m: Order,
    s: Complex64,
    depth: usize,
    tol: f64,
}

impl MapParams {
    pub fn new(p: u32, m: Order, s: Complex64) -> Result<Self> {
        if p < 2 {
            return Err(Error::Parameter(format!("p must be at least 2, got {p}")));
        }
        validate_s(s)?;
        Ok(MapParams { p, m, s, depth: depth_for_tol(s.norm(), DEFAULT_TOL), tol: DEFAULT_TOL })
    }

    pub fn real(p: u32, m: Order, s: f64) -> Result<Self> {
        Self::new(p, m, Complex64::new(s, 0.0))
    }

    pub fn with_tol(mut self, tol: f64) -> Result<Self> {
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(Error::Parameter(format!("tolerance must be positive, got {tol}")));
        }
        self.tol = tol;
        self.depth = depth_for_tol(self.s.norm(), tol);
        Ok(self)
    }

    /// Overrides the series truncation index.
    pub fn with_depth(mut self, depth: usize) -> Self {
        self.depth = depth;
        self
    }

    /// Same base, order and truncation with a different `s`.
    pub fn with_s(mut self, s: Complex64) -> Result<Self> {
        validate_s(s)?;
        self.s = s;
        Ok(self)
    }

    pub fn with_m(mut self, m: Order) -> Self {
        self.m = m;
        self
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> Order {
        self.m
    }

    pub fn s(&self) -> Complex64 {
        self.s
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    /// `D_s = -1 / log_p |s|`.
    pub fn scaling_dimension(&self) -> f64 {
        -(self.p as f64).ln() / self.s.norm().ln()
    }

    /// `s₀ = sin(π/p) / (1 + sin(π/p))`.
    pub fn s_zero(&self) -> f64 {
        let sn = (PI / self.p as f64).sin();
        sn / (1.0 + sn)
    }

    /// `r_s = 1 / (1 - |s|)`, the radius of the disk holding the image of `Z_p`.
    pub fn disk_radius(&self) -> f64 {
        1.0 / (1.0 - self.s.norm())
    }

    /// Bound on the dropped series tail: `2|s|^{N+1} / (1 - |s|)`.
    pub fn tail_bound(&self) -> f64 {
        let a = self.s.norm();
        2.0 * a.powi(self.depth as i32 + 1) / (1.0 - a)
    }
}

fn validate_s(s: Complex64) -> Result<()> {
    let a = s.norm();
    if !a.is_finite() {
        return Err(Error::Parameter(format!("s must be finite, got {s}")));
    }
    if a >= 1.0 {
        return Err(Error::Parameter(format!("|s| must be < 1, got |s| = {a}")));
    }
    if a == 0.0 {
        return Err(Error::Parameter("s must be nonzero".into()));
    }
    Ok(())
}

fn depth_for_tol(abs_s: f64, tol: f64) -> usize {
    let mut n = 0usize;
    let mut pow = abs_s;
    while 2.0 * pow / (1.0 - abs_s) > tol {
        pow *= abs_s;
        n += 1;
    }
    n
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_quantities() {
        let p = MapParams::real(2, Order::Finite(0), 1.0 / 3.0).unwrap();
        assert!((p.scaling_dimension() - 2f64.ln() / 3f64.ln()).abs() < 1e-15);
        assert_eq!(p.s_zero(), 0.5);
        assert!((p.disk_radius() - 1.5).abs() < 1e-15);
        assert!(p.tail_bound() <= DEFAULT_TOL);
        let shorter = p.with_depth(p.depth() - 1);
        assert!(shorter.tail_bound() > DEFAULT_TOL);
    }

    #[test]
    fn rejects_bad_s() {
        assert!(MapParams::real(2, Order::Infinite, 1.0).is_err());
        assert!(MapParams::real(2, Order::Infinite, -1.5).is_err());
        assert!(MapParams::real(2, Order::Infinite, 0.0).is_err());
        assert!(MapParams::real(1, Order::Infinite, 0.3).is_err());
    }

    #[test]
    fn order_parses() {
        assert_eq!("inf".parse::<Order>().unwrap(), Order::Infinite);
        assert_eq!("3".parse::<Order>().unwrap(), Order::Finite(3));
        assert!("-1".parse::<Order>().is_err());
    }
}
