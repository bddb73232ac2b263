use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::Rational;
use crate::error::{Error, Result};

/// Longest cycle the exact paths will chase before giving up and falling back
/// to a truncated window.
const MAX_CYCLE: usize = 1 << 16;

/// What is known about the digits past the stored window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tail {
    /// Every digit past the window is zero: the expansion is finite.
    Zero,
    /// Digits from `preperiod` (counted from the valuation) repeat `cycle`.
    Periodic { preperiod: usize, cycle: Vec<u32> },
    /// Nothing is known past the window.
    Truncated,
}

/// The valuation `v(x)`, with a distinguished marker for zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

/// A p-adic number `Σ a_n p^n` stored as a little-endian digit window that
/// starts at the valuation, plus a description of the tail.
///
/// The base may be any integer `p ≥ 2`. Exact values (finite or eventually
/// periodic expansions, i.e. rationals) are kept in a canonical form, so two
/// exact values are equal iff their fields are equal.
#[derive(Clone, Debug)]
pub struct PAdicNumber {
    p: u32,
    v: i64,
    digits: Vec<u32>,
    tail: Tail,
}

impl PAdicNumber {
    pub fn zero(p: u32) -> Self {
        assert!(p >= 2, "base must be at least 2");
        PAdicNumber {
            p,
            v: 0,
            digits: Vec::new(),
            tail: Tail::Zero,
        }
    }

    /// The non-negative integer `r` as an element of `Z_p`.
    pub fn from_residue(p: u32, mut r: u128) -> Self {
        assert!(p >= 2, "base must be at least 2");
        let pb = p as u128;
        let mut digits = Vec::new();
        while r > 0 {
            digits.push((r % pb) as u32);
            r /= pb;
        }
        Self::from_exact_parts(p, 0, digits, vec![0], 0)
    }

    pub fn from_integer(p: u32, n: i128) -> Self {
        if n >= 0 {
            Self::from_residue(p, n as u128)
        } else {
            Self::from_residue(p, n.unsigned_abs()).neg()
        }
    }

    /// Expands the rational `q` in base `p`, keeping at least `window` digits.
    ///
    /// Powers of `p` are pulled out of the denominator first; for composite
    /// bases this also absorbs denominators that only share some prime factors
    /// with `p` (e.g. `1/2 = 3·6^{-1}` in base 6).
    pub fn expand(q: &Rational, p: u32, window: usize) -> Result<Self> {
        if p < 2 {
            return Err(Error::Parameter(format!("base must be at least 2, got {p}")));
        }
        if window == 0 {
            return Err(Error::Parameter("digit window must be at least 1".into()));
        }
        if q.is_zero() {
            return Ok(Self::zero(p));
        }
        let pb = p as i128;
        let mut num = *q.numer();
        let mut den = *q.denom();
        let mut v = 0i64;

        loop {
            let g = den.gcd(&pb);
            if g == 1 {
                break;
            }
            num = num
                .checked_mul(pb / g)
                .ok_or(Error::NonExpandableDenominator { denominator: *q.denom(), base: p })?;
            den /= g;
            let h = num.gcd(&den);
            num /= h;
            den /= h;
            v -= 1;
        }
        while num % pb == 0 {
            num /= pb;
            v += 1;
        }

        let den_inv = mod_inverse((den % pb) as u64, p as u64)
            .ok_or(Error::NonExpandableDenominator { denominator: *q.denom(), base: p })?
            as i128;

        // Long division from the bottom digit; the numerator is the state.
        let mut seen: HashMap<i128, usize> = HashMap::new();
        let mut seq = Vec::new();
        let mut state = num;
        let limit = window + MAX_CYCLE;
        while seq.len() < limit {
            if let Some(&start) = seen.get(&state) {
                let cycle = seq[start..].to_vec();
                seq.truncate(start);
                let mut out = Self::from_exact_parts(p, v, seq, cycle, window);
                out.pad_window(window);
                return Ok(out);
            }
            seen.insert(state, seq.len());
            let d = (state.rem_euclid(pb) * den_inv).rem_euclid(pb);
            seq.push(d as u32);
            state = (state - d * den) / pb;
        }
        seq.truncate(window);
        Ok(Self::from_truncated(p, v, seq))
    }

    /// A truncated expansion: `digits[i]` is the digit at index `v + i` and
    /// nothing is known beyond the last one. Leading zeros are absorbed into
    /// the valuation.
    pub fn from_truncated(p: u32, v: i64, digits: Vec<u32>) -> Self {
        assert!(p >= 2, "base must be at least 2");
        assert!(digits.iter().all(|&d| d < p), "digit out of range");
        let lead = digits.iter().take_while(|&&d| d == 0).count();
        PAdicNumber {
            p,
            v: v + lead as i64,
            digits: digits[lead..].to_vec(),
            tail: Tail::Truncated,
        }
    }

    /// Builds an exact value from `prefix` digits followed by a repeating
    /// `cycle`, then normalizes it.
    fn from_exact_parts(p: u32, v: i64, prefix: Vec<u32>, cycle: Vec<u32>, window: usize) -> Self {
        let (v, prefix, cycle) = canonicalize(v, prefix, cycle);
        if prefix.is_empty() && cycle == [0] {
            return Self::zero(p);
        }
        let preperiod = prefix.len();
        let mut out = PAdicNumber {
            p,
            v,
            digits: prefix,
            tail: if cycle == [0] {
                Tail::Zero
            } else {
                Tail::Periodic { preperiod, cycle }
            },
        };
        out.pad_window(window.max(1));
        out
    }

    fn pad_window(&mut self, window: usize) {
        if self.digits.is_empty() && self.tail == Tail::Zero {
            return;
        }
        while self.digits.len() < window {
            let idx = self.digits.len();
            let d = self.tail_digit(idx).unwrap_or(0);
            self.digits.push(d);
        }
    }

    /// Digit at relative position `idx` (from the valuation) taken from the
    /// tail description.
    fn tail_digit(&self, idx: usize) -> Option<u32> {
        match &self.tail {
            Tail::Zero => Some(0),
            Tail::Periodic { preperiod, cycle } => {
                if idx < *preperiod {
                    self.digits.get(idx).copied()
                } else {
                    Some(cycle[(idx - preperiod) % cycle.len()])
                }
            }
            Tail::Truncated => None,
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Index of the lowest stored digit. For the canonical zero this is 0.
    pub fn v(&self) -> i64 {
        self.v
    }

    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    pub fn tail(&self) -> &Tail {
        &self.tail
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self.tail, Tail::Truncated)
    }

    /// True for the canonical zero and for truncated values whose known digits
    /// all vanish (zero to working precision).
    pub fn is_zero(&self) -> bool {
        self.digits.iter().all(|&d| d == 0)
    }

    pub fn valuation(&self) -> Valuation {
        if self.is_zero() {
            Valuation::Infinite
        } else {
            Valuation::Finite(self.v)
        }
    }

    /// `p^{-α v(x)}`, with `norm(0) = 0`.
    pub fn norm(&self, alpha: f64) -> f64 {
        match self.valuation() {
            Valuation::Infinite => 0.0,
            Valuation::Finite(v) => (self.p as f64).powf(-alpha * v as f64),
        }
    }

    pub fn is_integral(&self) -> bool {
        self.is_zero() || self.v >= 0
    }

    /// Absolute precision: digits at indices `>= precision` are unknown.
    /// `None` for exact values.
    pub fn precision(&self) -> Option<i64> {
        match self.tail {
            Tail::Truncated => Some(self.v + self.digits.len() as i64),
            _ => None,
        }
    }

    /// The digit `a_n`, or `None` if it lies beyond a truncated window.
    pub fn digit(&self, n: i64) -> Option<u32> {
        if self.is_zero() && self.tail != Tail::Truncated {
            return Some(0);
        }
        if n < self.v {
            return Some(0);
        }
        let idx = (n - self.v) as usize;
        match self.digits.get(idx) {
            Some(&d) => Some(d),
            None => self.tail_digit(idx),
        }
    }

    /// Digits `a_lo, …, a_hi` (inclusive).
    pub fn digit_range(&self, lo: i64, hi: i64) -> Result<Vec<u32>> {
        (lo..=hi)
            .map(|n| self.digit(n).ok_or(Error::Precision { index: n }))
            .collect()
    }

    /// `x · p^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() && self.tail != Tail::Truncated {
            return self.clone();
        }
        let mut out = self.clone();
        out.v += k;
        out
    }

    /// The integer `Σ_{n=0}^{k-1} a_n p^n`, i.e. `x mod p^k` for `x ∈ Z_p`.
    pub fn residue_mod(&self, k: u32) -> Result<u128> {
        let mut r: u128 = 0;
        for n in (0..k as i64).rev() {
            let d = self.digit(n).ok_or(Error::Precision { index: n })?;
            r = r
                .checked_mul(self.p as u128)
                .and_then(|r| r.checked_add(d as u128))
                .ok_or(Error::Overflow { base: self.p, depth: k })?;
        }
        Ok(r)
    }

    /// The exact value as a rational, when the tail is known and the reduced
    /// value fits in 128 bits.
    ///
    /// Long cycles pass through huge intermediates (`p^L − 1` for a cycle of
    /// length `L`), so the sum is formed over big integers and narrowed at the
    /// end.
    pub fn to_rational(&self) -> Option<Rational> {
        if self.is_zero() && self.is_exact() {
            return Some(Rational::zero());
        }
        let (prefix, cycle) = self.exact_parts()?;
        let p = BigInt::from(self.p);
        let mut acc = BigRational::zero();
        let mut weight = BigRational::from_integer(p.clone()).pow(self.v as i32);
        for &d in &prefix {
            acc += &weight * BigInt::from(d);
            weight *= &p;
        }
        if cycle != [0] {
            // weight · C / (1 − p^L)
            let mut c = BigInt::zero();
            let mut pl = BigInt::one();
            for &d in &cycle {
                c += &pl * d;
                pl *= &p;
            }
            acc += weight * BigRational::new(c, BigInt::one() - pl);
        }
        let num = i128::try_from(acc.numer()).ok()?;
        let den = i128::try_from(acc.denom()).ok()?;
        Some(Rational::new(num, den))
    }

    /// `(prefix, cycle)` with the prefix starting at the valuation.
    fn exact_parts(&self) -> Option<(Vec<u32>, Vec<u32>)> {
        match &self.tail {
            Tail::Zero => {
                let used = self.digits.iter().rposition(|&d| d != 0).map_or(0, |i| i + 1);
                Some((self.digits[..used].to_vec(), vec![0]))
            }
            Tail::Periodic { preperiod, cycle } => {
                Some((self.digits[..*preperiod].to_vec(), cycle.clone()))
            }
            Tail::Truncated => None,
        }
    }

    fn check_base(&self, other: &Self) -> Result<()> {
        if self.p != other.p {
            return Err(Error::IncompatibleBase { left: self.p, right: other.p });
        }
        Ok(())
    }

    /// Digit-wise addition with carry.
    ///
    /// Exact operands give an exact result (the carry chain over the common
    /// period is followed until it repeats); otherwise the result is valid up
    /// to the smaller absolute precision of the two.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_base(other)?;
        if self.is_zero() && self.is_exact() {
            return Ok(other.clone());
        }
        if other.is_zero() && other.is_exact() {
            return Ok(self.clone());
        }
        if self.is_exact() && other.is_exact() {
            if let Some(sum) = self.add_exact(other) {
                return Ok(sum);
            }
        }
        Ok(self.add_truncated(other))
    }

    fn add_exact(&self, other: &Self) -> Option<Self> {
        let p = self.p;
        let (xp, xc) = self.exact_parts()?;
        let (yp, yc) = other.exact_parts()?;
        let lo = self.v.min(other.v);
        let start = (self.v + xp.len() as i64).max(other.v + yp.len() as i64);
        let period = xc.len().lcm(&yc.len());
        if period > MAX_CYCLE {
            return None;
        }
        let gen = |v: i64, pre: &[u32], cyc: &[u32], n: i64| -> u32 {
            if n < v {
                return 0;
            }
            let idx = (n - v) as usize;
            if idx < pre.len() {
                pre[idx]
            } else {
                cyc[(idx - pre.len()) % cyc.len()]
            }
        };
        let window = self.digits.len().max(other.digits.len());
        let mut out = Vec::new();
        let mut seen: HashMap<(usize, u32), usize> = HashMap::new();
        let mut carry = 0u32;
        let mut n = lo;
        loop {
            if n >= start {
                let key = (((n - start) as usize) % period, carry);
                if let Some(&first) = seen.get(&key) {
                    let cycle = out[first..].to_vec();
                    out.truncate(first);
                    return Some(Self::from_exact_parts(p, lo, out, cycle, window));
                }
                seen.insert(key, out.len());
            }
            let s = gen(self.v, &xp, &xc, n) + gen(other.v, &yp, &yc, n) + carry;
            out.push(s % p);
            carry = s / p;
            n += 1;
        }
    }

    fn add_truncated(&self, other: &Self) -> Self {
        let lo = self.v.min(other.v);
        let hi = match (self.precision(), other.precision()) {
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) | (None, Some(a)) => a,
            (None, None) => {
                lo + self.digits.len().max(other.digits.len()) as i64 + MAX_CYCLE as i64
            }
        };
        let mut out = Vec::with_capacity((hi - lo).max(0) as usize);
        let mut carry = 0u32;
        for n in lo..hi {
            let s = self.digit(n).unwrap_or(0) + other.digit(n).unwrap_or(0) + carry;
            out.push(s % self.p);
            carry = s / self.p;
        }
        Self::from_truncated(self.p, lo, out)
    }

    /// Additive inverse.
    pub fn neg(&self) -> Self {
        let p = self.p;
        if self.is_zero() {
            return self.clone();
        }
        match self.exact_parts() {
            Some((prefix, cycle)) => {
                let comp = |d: u32| p - 1 - d;
                let (new_prefix, new_cycle) = if prefix.is_empty() {
                    let mut rot = cycle.clone();
                    rot.rotate_left(1);
                    (vec![p - cycle[0]], rot.into_iter().map(comp).collect())
                } else {
                    let mut np = vec![p - prefix[0]];
                    np.extend(prefix[1..].iter().map(|&d| comp(d)));
                    (np, cycle.iter().map(|&d| comp(d)).collect())
                };
                Self::from_exact_parts(p, self.v, new_prefix, new_cycle, self.digits.len())
            }
            None => {
                let mut out = Vec::with_capacity(self.digits.len());
                out.push(p - self.digits[0]);
                out.extend(self.digits[1..].iter().map(|&d| p - 1 - d));
                Self::from_truncated(p, self.v, out)
            }
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// `x + n` for an ordinary integer `n`.
    pub fn add_integer(&self, n: i128) -> Self {
        if n == 0 {
            return self.clone();
        }
        self.add(&Self::from_integer(self.p, n))
            .expect("same base by construction")
    }

    /// Splits `x` into its fractional part `Σ_{n<0} a_n p^n ∈ [0,1)` and its
    /// integral part `Σ_{n≥0} a_n p^n`.
    pub fn split(&self) -> Result<(Rational, Self)> {
        if self.is_zero() || self.v >= 0 {
            return Ok((Rational::zero(), self.clone()));
        }
        let k = (-self.v) as usize;
        let overflow = || Error::Overflow { base: self.p, depth: k as u32 };
        // Σ_{n=v}^{-1} a_n p^n = (Σ a_n p^{n-v}) / p^{-v}; a_{-1} is the most significant.
        let mut num = 0i128;
        for n in (self.v..0).rev() {
            let d = self.digit(n).ok_or(Error::Precision { index: n })?;
            num = num
                .checked_mul(self.p as i128)
                .and_then(|x| x.checked_add(d as i128))
                .ok_or_else(overflow)?;
        }
        let den = checked_pow_int(self.p as i128, k as u32).ok_or_else(overflow)?;
        let frac = Rational::new(num, den);

        let int = match self.exact_parts() {
            Some((prefix, cycle)) => {
                let (prefix, cycle) = if k <= prefix.len() {
                    (prefix[k..].to_vec(), cycle)
                } else {
                    let mut rot = cycle;
                    let r = (k - prefix.len()) % rot.len();
                    rot.rotate_left(r);
                    (Vec::new(), rot)
                };
                let window = self.digits.len().saturating_sub(k);
                Self::from_exact_parts(self.p, 0, prefix, cycle, window)
            }
            None => {
                let digits = self.digits.get(k..).map(<[u32]>::to_vec).unwrap_or_default();
                Self::from_truncated(self.p, 0, digits)
            }
        };
        Ok((frac, int))
    }

    /// Adds `shift` to every digit of index `≥ 0` modulo `p`, without carry.
    /// Only meaningful on `Z_p`.
    pub fn digit_rotate(&self, shift: u32) -> Result<Self> {
        if !self.is_integral() {
            return Err(Error::Parameter("digit rotation is defined on Z_p only".into()));
        }
        let p = self.p;
        let rot = |d: u32| (d + shift) % p;
        match self.exact_parts() {
            Some((prefix, cycle)) => {
                let lead = if self.is_zero() { 0 } else { self.v as usize };
                let mut full = vec![0; lead];
                full.extend(prefix);
                let window = lead + self.digits.len();
                Ok(Self::from_exact_parts(
                    p,
                    0,
                    full.into_iter().map(rot).collect(),
                    cycle.into_iter().map(rot).collect(),
                    window,
                ))
            }
            None => {
                let hi = self.precision().unwrap_or(0);
                let digits = (0..hi).map(|n| rot(self.digit(n).unwrap_or(0))).collect();
                Ok(Self::from_truncated(p, 0, digits))
            }
        }
    }

    /// Compares values. Exact values compare by canonical form; if either side
    /// is truncated, digits are compared up to the shared precision.
    pub fn same_value(&self, other: &Self) -> bool {
        if self.p != other.p {
            return false;
        }
        match (self.exact_parts(), other.exact_parts()) {
            (Some(a), Some(b)) => {
                (self.is_zero() && other.is_zero()) || (self.v == other.v && a == b)
            }
            _ => {
                let hi = match (self.precision(), other.precision()) {
                    (Some(a), Some(b)) => a.min(b),
                    (Some(a), None) | (None, Some(a)) => a,
                    (None, None) => unreachable!(),
                };
                let lo = self.v.min(other.v);
                (lo..hi).all(|n| self.digit(n) == other.digit(n))
            }
        }
    }
}

impl PartialEq for PAdicNumber {
    fn eq(&self, other: &Self) -> bool {
        self.same_value(other)
    }
}

impl fmt::Display for PAdicNumber {
    /// Most significant digit first, with `.` separating negative indices and
    /// `…` marking an unknown or periodic tail: `…0101.1` in base 2.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() && self.is_exact() {
            return write!(f, "0");
        }
        let known = match self.tail {
            Tail::Zero => self.digits.iter().rposition(|&d| d != 0).map_or(0, |i| i + 1),
            _ => self.digits.len(),
        };
        let top = (self.v + known as i64).max(1);
        let lo = self.v.min(0);
        match self.tail {
            Tail::Zero => {}
            _ => write!(f, "…")?,
        }
        for n in (lo..top).rev() {
            let d = self.digit(n).unwrap_or(0);
            if self.p <= 10 {
                write!(f, "{d}")?;
            } else {
                write!(f, "[{d}]")?;
            }
            if n == 0 && lo < 0 {
                write!(f, ".")?;
            }
        }
        write!(f, "_{}", self.p)
    }
}

/// Minimal cycle, shortest preperiod, then leading zeros folded into `v`.
fn canonicalize(mut v: i64, mut prefix: Vec<u32>, mut cycle: Vec<u32>) -> (i64, Vec<u32>, Vec<u32>) {
    debug_assert!(!cycle.is_empty());
    let len = cycle.len();
    for d in 1..=len {
        if len.is_multiple_of(d) && (d..len).all(|i| cycle[i] == cycle[i - d]) {
            cycle.truncate(d);
            break;
        }
    }
    while let Some(&last) = prefix.last() {
        if last != *cycle.last().unwrap() {
            break;
        }
        prefix.pop();
        cycle.rotate_right(1);
    }
    let lead = prefix.iter().take_while(|&&d| d == 0).count();
    prefix.drain(..lead);
    v += lead as i64;
    if prefix.is_empty() && cycle.iter().any(|&d| d != 0) {
        while cycle[0] == 0 {
            cycle.rotate_left(1);
            v += 1;
        }
    }
    (v, prefix, cycle)
}

fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

fn checked_pow_int(base: i128, exp: u32) -> Option<i128> {
    let mut out = 1i128;
    for _ in 0..exp {
        out = out.checked_mul(base)?;
    }
    Some(out)
}
