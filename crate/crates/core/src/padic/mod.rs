//! Windowed p-adic numbers: digit expansion of rationals, valuation and norm,
//! fractional/integral split, carry arithmetic, and Haar-uniform enumeration
//! of `Z_p` at a fixed resolution.

mod number;
mod residues;

pub use number::{PAdicNumber, Tail, Valuation};
pub use residues::{ball_fraction, pow_u128, residues, sample_residue, Residues};

/// Rationals in lowest terms with a positive denominator.
pub type Rational = num_rational::Ratio<i128>;
