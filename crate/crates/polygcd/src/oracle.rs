//! Naive reference implementations, kept deliberately separate from the
//! optimized paths (their own evaluation loop, their own gcd) so that
//! agreement between the two is meaningful evidence. Also the bounded
//! search for polynomial pairs realizing a given pattern.

use std::collections::BTreeSet;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{is_prime_u64, valuation_big};
use crate::error::{Error, Result};
use crate::patterns::{extract_pattern, Pattern, SCAN_CAP};
use crate::poly::IntPoly;
use crate::sylvester::resultant;

/// A contiguous window of gcd values G(start), G(start+1), ...
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceWindow {
    pub start: i64,
    pub values: Vec<BigInt>,
}

/// Term-by-term evaluation with an explicit running power; intentionally
/// not Horner so this path shares nothing with `IntPoly::eval`.
fn eval_naive(poly: &IntPoly, n: &BigInt) -> BigInt {
    let mut power = BigInt::one();
    let mut acc = BigInt::zero();
    for c in poly.coeffs() {
        acc += c * &power;
        power *= n;
    }
    acc
}

/// Plain remainder-loop gcd, independent of the library gcd.
fn gcd_naive(a: &BigInt, b: &BigInt) -> BigInt {
    let mut a = a.abs();
    let mut b = b.abs();
    while !b.is_zero() {
        let r = &a % &b;
        a = b;
        b = r;
    }
    a
}

/// Direct gcd evaluations over a window, no pattern logic involved.
pub fn brute_g_window(a: &IntPoly, b: &IntPoly, start: i64, len: usize) -> Result<SequenceWindow> {
    let mut values = Vec::with_capacity(len);
    for k in 0..len {
        let n = BigInt::from(start + k as i64);
        let va = eval_naive(a, &n);
        let vb = eval_naive(b, &n);
        if va.is_zero() && vb.is_zero() {
            return Err(Error::BothZero { n });
        }
        values.push(gcd_naive(&va, &vb));
    }
    Ok(SequenceWindow { start, values })
}

/// Smallest divisor of |resultant| that is an exact period of the window.
/// The window must span at least two full periods of the worst case, i.e.
/// 2 * |resultant| values.
pub fn brute_minimal_period(window: &SequenceWindow, delta_abs: &BigInt) -> Result<u64> {
    let len = window.values.len();
    let delta = delta_abs
        .to_u64()
        .filter(|&d| d > 0 && 2 * d <= len as u64)
        .ok_or(Error::WindowTooShort {
            len,
            needed: (delta_abs * 2u32).to_u64().unwrap_or(u64::MAX),
        })?;
    let mut divisors: Vec<u64> = Vec::new();
    let mut d = 1u64;
    while d * d <= delta {
        if delta % d == 0 {
            divisors.push(d);
            if d != delta / d {
                divisors.push(delta / d);
            }
        }
        d += 1;
    }
    divisors.sort_unstable();
    for t in divisors {
        let t = t as usize;
        if (0..len - t).all(|i| window.values[i] == window.values[i + t]) {
            return Ok(t as u64);
        }
    }
    Err(Error::Internal(
        "no divisor of the resultant is a period of the window".into(),
    ))
}

/// Every value the gcd sequence attains, by scanning one full period
/// (bounded by |resultant|, which is always a period).
pub fn brute_value_set(a: &IntPoly, b: &IntPoly) -> Result<BTreeSet<BigInt>> {
    let delta = resultant(a, b)?.abs();
    if delta.is_zero() {
        return Err(Error::NotCoprime);
    }
    let bound = delta.to_u64().filter(|&d| d <= SCAN_CAP).ok_or_else(|| {
        Error::ScanCapExceeded {
            needed: delta.to_u64().unwrap_or(u64::MAX),
            cap: SCAN_CAP,
        }
    })?;
    let mut set = BTreeSet::new();
    for n in 0..bound {
        let n = BigInt::from(n);
        set.insert(gcd_naive(&eval_naive(a, &n), &eval_naive(b, &n)));
    }
    Ok(set)
}

/// How a candidate pattern is compared against the target.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatchMode {
    Exact,
    Rotation,
    Permutation,
}

impl FromStr for MatchMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(MatchMode::Exact),
            "rotation" => Ok(MatchMode::Rotation),
            "permutation" => Ok(MatchMode::Permutation),
            other => Err(Error::PrereqViolated(format!(
                "unknown equivalence mode {other:?}, expected exact, rotation or permutation"
            ))),
        }
    }
}

fn pattern_matches(pattern: &Pattern, target: &[BigInt], mode: MatchMode) -> bool {
    let len = target.len();
    if pattern.len() != len {
        return false;
    }
    let values = pattern.values();
    match mode {
        MatchMode::Exact => values == target,
        MatchMode::Rotation => {
            (0..len).any(|shift| (0..len).all(|i| values[(i + shift) % len] == target[i]))
        }
        MatchMode::Permutation => {
            let mut lhs: Vec<&BigInt> = values.iter().collect();
            let mut rhs: Vec<&BigInt> = target.iter().collect();
            lhs.sort();
            rhs.sort();
            lhs == rhs
        }
    }
}

/// All monic polynomials with degree in [1, deg_bound] and free coefficients
/// in [-coeff_bound, coeff_bound], ordered by degree and then by coefficient
/// tuple (constant term varying fastest) so search results are reproducible.
fn monic_candidates(deg_bound: usize, coeff_bound: i64) -> Vec<IntPoly> {
    let span = (2 * coeff_bound + 1) as usize;
    let mut out = Vec::new();
    for deg in 1..=deg_bound {
        let mut idx = vec![0usize; deg];
        loop {
            let coeffs: Vec<BigInt> = idx
                .iter()
                .map(|&i| BigInt::from(i as i64 - coeff_bound))
                .chain([BigInt::one()])
                .collect();
            out.push(IntPoly::new(coeffs));
            let mut pos = 0;
            loop {
                if pos == deg {
                    break;
                }
                idx[pos] += 1;
                if idx[pos] < span {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
            if pos == deg {
                break;
            }
        }
    }
    out
}

/// Exhaustive search for a monic coprime pair whose pattern for p matches
/// `target` under the given equivalence. Returns the first hit in
/// enumeration order, or None when the bounded space is exhausted — an
/// empty result is a valid answer, not an error.
pub fn search_realizing_pair(
    p: u64,
    target: &[BigInt],
    mode: MatchMode,
    deg_bound: usize,
    coeff_bound: i64,
) -> Result<Option<(IntPoly, IntPoly)>> {
    if !is_prime_u64(p) {
        return Err(Error::NotPrime { n: p });
    }
    if target.is_empty() {
        return Err(Error::PrereqViolated("target pattern is empty".into()));
    }
    let big_p = BigInt::from(p);
    for v in target {
        let mut rest = v.clone();
        while (&rest % &big_p).is_zero() {
            rest /= &big_p;
        }
        if !rest.is_one() {
            return Err(Error::PrereqViolated(format!(
                "target entry {v} is not a power of {p}"
            )));
        }
    }
    if deg_bound == 0 {
        return Ok(None);
    }

    let candidates = monic_candidates(deg_bound, coeff_bound.abs());
    let trivial = Pattern::new(p, vec![BigInt::one()])?;
    for a in &candidates {
        for b in &candidates {
            let delta = resultant(a, b).expect("candidates are nonconstant");
            if delta.is_zero() {
                continue;
            }
            let omega = valuation_big(&delta, p);
            let pattern = if omega == 0 {
                trivial.clone()
            } else {
                match extract_pattern(a, b, p, omega) {
                    Ok(pat) => pat,
                    Err(Error::ScanCapExceeded { .. }) => continue,
                    Err(e) => return Err(e),
                }
            };
            if pattern_matches(&pattern, target, mode) {
                return Ok(Some((a.clone(), b.clone())));
            }
        }
    }
    Ok(None)
}
