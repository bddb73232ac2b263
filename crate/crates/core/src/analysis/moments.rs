use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::complex_map::{upsilon, MapParams};
use crate::error::{Error, Result};
use crate::padic::{residues, PAdicNumber};

/// Compensated (Neumaier) accumulator for complex sums.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct Neumaier {
    sum: Complex64,
    comp: Complex64,
}

impl Neumaier {
    pub(crate) fn add(&mut self, x: Complex64) {
        let re = step(self.sum.re, x.re, &mut self.comp.re);
        let im = step(self.sum.im, x.im, &mut self.comp.im);
        self.sum = Complex64::new(re, im);
    }

    pub(crate) fn total(&self) -> Complex64 {
        self.sum + self.comp
    }
}

fn step(sum: f64, x: f64, comp: &mut f64) -> f64 {
    let t = sum + x;
    *comp += if sum.abs() >= x.abs() { (sum - t) + x } else { (x - t) + sum };
    t
}

/// Fixed chunk size so that the summation order, and therefore every bit of
/// the result, does not depend on the thread count.
const CHUNK: u128 = 1 << 12;

/// `⟨z^L z̄^{L̄}⟩` under the pushforward of Haar measure, with the error bound
/// that covers both the residue discretization and the series truncation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MomentResult {
    pub l: u32,
    pub lbar: u32,
    pub value: Complex64,
    pub depth: u32,
    pub error_bound: f64,
}

/// Averages `Υ(r)^L conj(Υ(r))^{L̄}` over the residues modulo `p^depth`.
///
/// Each residue stands for a ball of Haar measure `p^{-depth}` on which `Υ`
/// moves by at most `2|s|^depth/(1−|s|)`; the monomial is
/// `(L+L̄) r_s^{L+L̄−1}`-Lipschitz on the disk `|z| ≤ r_s`.
pub fn moment(l: u32, lbar: u32, params: &MapParams, depth: u32) -> Result<MomentResult> {
    let all = residues(params.p(), depth)?;
    let count = all.count();
    if count > 1 << 32 {
        return Err(Error::Parameter(format!("{}^{depth} residues is too many to average", params.p())));
    }
    let chunks = count.div_ceil(CHUNK);
    let partials = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut acc = Neumaier::default();
            for r in c * CHUNK..((c + 1) * CHUNK).min(count) {
                let z = upsilon(&PAdicNumber::from_residue(params.p(), r), params)?;
                acc.add(z.powu(l) * z.conj().powu(lbar));
            }
            Ok(acc.total())
        })
        .collect::<Result<Vec<_>>>()?;
    let mut acc = Neumaier::default();
    for part in partials {
        acc.add(part);
    }
    let value = acc.total() / count as f64;

    let abs_s = params.s().norm();
    let degree = (l + lbar) as f64;
    let rs = params.disk_radius();
    let shift = 2.0 * abs_s.powi(depth as i32) / (1.0 - abs_s) + params.tail_bound();
    let lipschitz = if l + lbar == 0 { 0.0 } else { degree * rs.powf(degree - 1.0) };
    let rounding = 4.0 * f64::EPSILON * rs.powf(degree) * (1.0 + (count as f64).log2());
    Ok(MomentResult { l, lbar, value, depth, error_bound: lipschitz * shift + rounding })
}

/// Number of index tuples contributing to the coefficient of `s^n s̄^{n̄}` in
/// `⟨z^L z̄^{L̄}⟩` for `m = ∞`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CoefficientCount {
    pub count: u64,
    /// Some tuples were skipped because an index exceeded the cutoff.
    pub partial: bool,
}

fn compositions(total: u32, parts: u32, cutoff: u32, f: &mut dyn FnMut(&[u32])) {
    fn rec(rem: u32, left: u32, cutoff: u32, buf: &mut Vec<u32>, f: &mut dyn FnMut(&[u32])) {
        if left == 0 {
            if rem == 0 {
                f(buf);
            }
            return;
        }
        for k in 0..=rem.min(cutoff) {
            buf.push(k);
            rec(rem - k, left - 1, cutoff, buf, f);
            buf.pop();
        }
    }
    rec(total, parts, cutoff, &mut Vec::with_capacity(parts as usize), f);
}

/// Counts `(n₁,…,n_L)` and `(n̄₁,…,n̄_{L̄})` with `Σn_k = n`, `Σn̄_k = n̄`,
/// every index `≤ cutoff`, and `q = Σ p^{-n_k-1} − Σ p^{-n̄_k-1} ∈ Z_p`.
///
/// `∫_{Z_p} Π χ_{n_k} Π conj(χ_{n̄_k}) dx` is 1 exactly when `q ∈ Z_p`, so
/// this is the integer coefficient `C_{n,n̄}^{L,L̄}`.
pub fn coefficient_c(l: u32, lbar: u32, n: u32, nbar: u32, p: u32, cutoff: u32) -> Result<CoefficientCount> {
    if p < 2 {
        return Err(Error::Parameter(format!("base must be at least 2, got {p}")));
    }
    let top = n.max(nbar).min(cutoff) + 1;
    let modulus = (p as i128)
        .checked_pow(top)
        .ok_or(Error::Overflow { base: p, depth: top })?;
    let scaled = |k: u32| (p as i128).pow(top - k - 1);
    let mut lefts = Vec::new();
    compositions(n, l, cutoff, &mut |t| lefts.push(t.iter().map(|&k| scaled(k)).sum::<i128>()));
    let mut rights = Vec::new();
    compositions(nbar, lbar, cutoff, &mut |t| rights.push(t.iter().map(|&k| scaled(k)).sum::<i128>()));
    let mut count = 0u64;
    for a in &lefts {
        count += rights.iter().filter(|b| (a - *b).rem_euclid(modulus) == 0).count() as u64;
    }
    let partial = (l > 0 && n > cutoff) || (lbar > 0 && nbar > cutoff);
    Ok(CoefficientCount { count, partial })
}

/// `Σ_{n, n̄ ≤ order} C_{n,n̄}^{L,L̄} s^n s̄^{n̄}`, the moment expanded in `s`.
pub fn moment_series(l: u32, lbar: u32, p: u32, s: Complex64, order: u32) -> Result<Complex64> {
    let mut acc = Neumaier::default();
    for n in 0..=order {
        for nbar in 0..=order {
            let c = coefficient_c(l, lbar, n, nbar, p, order)?;
            if c.count > 0 {
                acc.add(c.count as f64 * s.powu(n) * s.conj().powu(nbar));
            }
        }
    }
    Ok(acc.total())
}
