use rand::Rng;

use crate::error::{Error, Result};

/// `p^n`, or an overflow error carrying the big-integer hint.
pub fn pow_u128(p: u32, n: u32) -> Result<u128> {
    (p as u128)
        .checked_pow(n)
        .ok_or(Error::Overflow { base: p, depth: n })
}

/// The integers `0, 1, …, p^N − 1` in ascending order, each one a
/// representative of a ball of Haar measure `p^{-N}` in `Z_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Residues {
    p: u32,
    depth: u32,
    count: u128,
}

pub fn residues(p: u32, depth: u32) -> Result<Residues> {
    if p < 2 {
        return Err(Error::Parameter(format!("base must be at least 2, got {p}")));
    }
    Ok(Residues { p, depth, count: pow_u128(p, depth)? })
}

impl Residues {
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn count(&self) -> u128 {
        self.count
    }

    /// Haar weight of each residue class.
    pub fn weight(&self) -> f64 {
        1.0 / self.count as f64
    }

    pub fn iter(&self) -> std::ops::Range<u128> {
        0..self.count
    }

    /// Materializes the enumeration; refuses anything that would not fit in
    /// memory as a `Vec<u128>` on a desktop.
    pub fn to_vec(&self) -> Result<Vec<u128>> {
        if self.count > 1 << 28 {
            return Err(Error::Parameter(format!(
                "{}^{} residues is too many to materialize",
                self.p, self.depth
            )));
        }
        Ok(self.iter().collect())
    }
}

impl IntoIterator for Residues {
    type Item = u128;
    type IntoIter = std::ops::Range<u128>;

    fn into_iter(self) -> Self::IntoIter {
        self.iter()
    }
}

/// Fraction of `residues(p, depth)` that lies in the ball `l + p^k Z_p`.
pub fn ball_fraction(p: u32, depth: u32, l: u128, k: u32) -> Result<f64> {
    if k > depth {
        return Err(Error::Parameter(format!("ball level {k} exceeds depth {depth}")));
    }
    let modulus = pow_u128(p, k)?;
    let all = residues(p, depth)?;
    let hits = all.iter().filter(|r| r % modulus == l % modulus).count();
    Ok(hits as f64 / all.count() as f64)
}

/// A uniform residue modulo `p^depth`.
pub fn sample_residue<R: Rng + ?Sized>(rng: &mut R, p: u32, depth: u32) -> Result<u128> {
    let n = pow_u128(p, depth)?;
    Ok(rng.gen_range(0..n))
}
