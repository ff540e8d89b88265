//! Per-prime periodic patterns of the gcd sequence G(n) = gcd(A(n), B(n)),
//! their assembly into a full profile, and the structural checks the theory
//! imposes on them (divisibility constraints, valuation gaps, closed forms
//! for degree-one and split-simple inputs).

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{self, checked_pow_u64, is_prime_u64, mod_inverse_u64};
use crate::error::{Error, Result};
use crate::modular::{is_split_simple, lift_factorization, SplitFactorization};
use crate::poly::IntPoly;
use crate::sylvester::{minimal_delta, resultant, BezoutCertificate, ResultantReport};

/// Hard cap on the number of gcd evaluations any single scan may perform.
pub const SCAN_CAP: u64 = 1_000_000;

/// gcd(|A(n)|, |B(n)|). Errors when both values vanish, which can only
/// happen for pairs with a common integer root (resultant zero).
pub fn gcd_value(a: &IntPoly, b: &IntPoly, n: &BigInt) -> Result<BigInt> {
    let va = a.eval(n);
    let vb = b.eval(n);
    if va.is_zero() && vb.is_zero() {
        return Err(Error::BothZero { n: n.clone() });
    }
    Ok(va.gcd(&vb))
}

/// Largest power of p dividing N (N >= 1).
pub fn p_part(n: &BigInt, p: u64) -> BigInt {
    assert!(n.is_positive(), "p_part requires a positive integer");
    arith::p_part_big(n, p)
}

/// The minimal-period list of p-parts of G(n), anchored at n = 0: entry `i`
/// is `G(n) /\ p^inf` for every `n` congruent to `i` modulo the length. The
/// length is always a power of p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pattern {
    p: u64,
    mu: u32,
    values: Vec<BigInt>,
}

impl Pattern {
    /// Build a pattern from a window of p-part values whose length is a
    /// power of p, shrinking it to its minimal p-power period.
    pub fn new(p: u64, mut values: Vec<BigInt>) -> Result<Self> {
        if !is_prime_u64(p) {
            return Err(Error::NotPrime { n: p });
        }
        let mut mu = 0u32;
        loop {
            match checked_pow_u64(p, mu) {
                Some(l) if (l as usize) == values.len() => break,
                Some(l) if (l as usize) < values.len() => mu += 1,
                _ => {
                    return Err(Error::PrereqViolated(format!(
                        "pattern length {} is not a power of {p}",
                        values.len()
                    )))
                }
            }
        }
        for v in &values {
            let mut rest = v.clone();
            let big_p = BigInt::from(p);
            while rest.is_multiple_of(&big_p) {
                rest /= &big_p;
            }
            if !rest.is_one() {
                return Err(Error::PrereqViolated(format!(
                    "pattern entry {v} is not a power of {p}"
                )));
            }
        }
        // shrink to the minimal period among the p-power divisors
        for m in 0..=mu {
            let len = checked_pow_u64(p, m).expect("divisor of a u64 power") as usize;
            if (0..values.len()).all(|i| values[i] == values[i % len]) {
                values.truncate(len);
                mu = m;
                break;
            }
        }
        Ok(Pattern { p, mu, values })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Exponent of the minimal period: the length is p^mu.
    pub fn mu(&self) -> u32 {
        self.mu
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false // a pattern always has at least one entry
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    /// Entry for an arbitrary integer index, negative indices included
    /// (mathematical modulo, so the two-sided sequence is covered).
    pub fn value_at(&self, n: &BigInt) -> &BigInt {
        let idx = n.mod_floor(&BigInt::from(self.values.len()));
        &self.values[usize::try_from(idx).expect("reduced index fits")]
    }

    pub fn value_at_i64(&self, n: i64) -> &BigInt {
        self.value_at(&BigInt::from(n))
    }

    pub fn max_value(&self) -> &BigInt {
        self.values.iter().max().expect("pattern is nonempty")
    }

    pub fn value_set(&self) -> BTreeSet<BigInt> {
        self.values.iter().cloned().collect()
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]_{}", self.values.len())
    }
}

/// Coefficients of both polynomials as i128, when every evaluation over
/// `[0, max_n]` provably fits. Long scans run natively on the fast path and
/// fall back to big integers otherwise.
fn narrow_coeffs(a: &IntPoly, b: &IntPoly, max_n: u64) -> Option<(Vec<i128>, Vec<i128>)> {
    let fits = |poly: &IntPoly| -> Option<Vec<i128>> {
        let mut bound = BigInt::zero();
        let mut power = BigInt::one();
        let n = BigInt::from(max_n.max(1));
        for c in poly.coeffs() {
            bound += c.abs() * &power;
            power *= &n;
        }
        if bound >= BigInt::from(i128::MAX / 2) {
            return None;
        }
        poly.coeffs().iter().map(|c| i128::try_from(c).ok()).collect()
    };
    Some((fits(a)?, fits(b)?))
}

fn horner_i128(coeffs: &[i128], x: i128) -> i128 {
    coeffs.iter().rev().fold(0i128, |acc, c| acc * x + c)
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn valuation_u128(mut n: u128, p: u64) -> u32 {
    let mut v = 0;
    while n.is_multiple_of(p as u128) {
        n /= p as u128;
        v += 1;
    }
    v
}

/// Extract the pattern of `G(n) /\ p^inf` for a prime p with
/// `omega = nu_p(resultant) >= 1`, by scanning one window of length
/// p^omega and shrinking to the minimal period.
pub fn extract_pattern(a: &IntPoly, b: &IntPoly, p: u64, omega: u32) -> Result<Pattern> {
    if !is_prime_u64(p) {
        return Err(Error::NotPrime { n: p });
    }
    if omega == 0 {
        return Err(Error::PrereqViolated(
            "extract_pattern needs nu_p(resultant) >= 1".into(),
        ));
    }
    let window = checked_pow_u64(p, omega)
        .filter(|&w| w <= SCAN_CAP)
        .ok_or(Error::ScanCapExceeded {
            needed: checked_pow_u64(p, omega).unwrap_or(u64::MAX),
            cap: SCAN_CAP,
        })?;
    let powers: Vec<BigInt> = (0..=omega).map(|k| BigInt::from(p).pow(k)).collect();
    let mut values = Vec::with_capacity(window as usize);
    if let Some((ac, bc)) = narrow_coeffs(a, b, window) {
        for n in 0..window {
            let va = horner_i128(&ac, n as i128);
            let vb = horner_i128(&bc, n as i128);
            let nu = match (va == 0, vb == 0) {
                (true, true) => return Err(Error::BothZero { n: BigInt::from(n) }),
                (true, false) => valuation_u128(vb.unsigned_abs(), p),
                (false, true) => valuation_u128(va.unsigned_abs(), p),
                (false, false) => {
                    valuation_u128(va.unsigned_abs(), p).min(valuation_u128(vb.unsigned_abs(), p))
                }
            };
            // nu_p(G(n)) <= omega whenever p^omega exactly divides the
            // resultant; the cap only matters for the zero-value branches
            values.push(powers[(nu).min(omega) as usize].clone());
        }
    } else {
        for n in 0..window {
            let g = gcd_value(a, b, &BigInt::from(n))?;
            values.push(p_part(&g, p));
        }
    }
    Pattern::new(p, values)
}

/// One named self-check recorded while assembling a profile.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProfileCheck {
    pub name: &'static str,
    pub holds: bool,
}

/// The complete analysis of a coprime pair: resultant report, minimal
/// Bézout constant, all per-prime patterns, the global period and the set
/// of values the gcd sequence attains.
#[derive(Clone, Debug)]
pub struct GcdProfile {
    pub a: IntPoly,
    pub b: IntPoly,
    pub resultant: ResultantReport,
    pub delta: BezoutCertificate,
    pub patterns: BTreeMap<u64, Pattern>,
    pub global_period: u64,
    pub value_set: BTreeSet<BigInt>,
    pub checks: Vec<ProfileCheck>,
}

impl GcdProfile {
    /// G(n) reconstructed as the product of pattern entries at n.
    pub fn reconstruct(&self, n: &BigInt) -> BigInt {
        self.patterns
            .values()
            .fold(BigInt::one(), |acc, pat| acc * pat.value_at(n))
    }

    pub fn all_checks_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn max_value(&self) -> BigInt {
        self.value_set
            .iter()
            .max()
            .cloned()
            .unwrap_or_else(BigInt::one)
    }
}

/// Build the full profile of a coprime pair and self-verify the structural
/// claims on one full period: the product reconstruction of G, the equality
/// of the value set with the set product of the patterns, the divisibility
/// of the period, and the agreement of the two delta routes.
pub fn build_profile(a: &IntPoly, b: &IntPoly) -> Result<GcdProfile> {
    let resultant_report = ResultantReport::compute(a, b)?;
    let delta = minimal_delta(a, b)?;

    let mut patterns = BTreeMap::new();
    for (&p, &omega) in &resultant_report.factorization {
        patterns.insert(p, extract_pattern(a, b, p, omega)?);
    }

    let mut global_period = 1u64;
    for pat in patterns.values() {
        global_period = global_period
            .checked_mul(pat.len() as u64)
            .filter(|&t| t <= SCAN_CAP)
            .ok_or(Error::ScanCapExceeded {
                needed: u64::MAX,
                cap: SCAN_CAP,
            })?;
    }

    // Set product of the per-pattern value sets.
    let mut value_set = BTreeSet::from([BigInt::one()]);
    for pat in patterns.values() {
        let mut next = BTreeSet::new();
        for v in &value_set {
            for w in pat.value_set() {
                next.insert(v * &w);
            }
        }
        value_set = next;
    }

    // One scan over a full period: check the product reconstruction
    // entry-by-entry and collect the realized values.
    let mut scanned = BTreeSet::new();
    let mut reconstruction_ok = true;
    let narrow_patterns: Option<Vec<Vec<u128>>> = patterns
        .values()
        .map(|pat| {
            pat.values()
                .iter()
                .map(|v| u128::try_from(v).ok())
                .collect()
        })
        .collect();
    match (
        narrow_coeffs(a, b, global_period),
        narrow_patterns,
        resultant_report.delta_abs.to_u128(),
    ) {
        (Some((ac, bc)), Some(entries), Some(_)) => {
            let mut idx = vec![0usize; entries.len()];
            let mut fast_set: BTreeSet<u128> = BTreeSet::new();
            for n in 0..global_period {
                let va = horner_i128(&ac, n as i128).unsigned_abs();
                let vb = horner_i128(&bc, n as i128).unsigned_abs();
                if va == 0 && vb == 0 {
                    return Err(Error::BothZero { n: BigInt::from(n) });
                }
                let g = gcd_u128(va, vb);
                // entry products divide the resultant, so u128 cannot overflow
                let product: u128 = idx
                    .iter()
                    .zip(&entries)
                    .map(|(&i, vals)| vals[i])
                    .product();
                if g != product {
                    reconstruction_ok = false;
                }
                fast_set.insert(g);
                for (i, vals) in idx.iter_mut().zip(&entries) {
                    *i += 1;
                    if *i == vals.len() {
                        *i = 0;
                    }
                }
            }
            scanned = fast_set.into_iter().map(BigInt::from).collect();
        }
        _ => {
            for n in 0..global_period {
                let n = BigInt::from(n);
                let g = gcd_value(a, b, &n)?;
                let product = patterns
                    .values()
                    .fold(BigInt::one(), |acc, pat| acc * pat.value_at(&n));
                if g != product {
                    reconstruction_ok = false;
                }
                scanned.insert(g);
            }
        }
    }

    let lattice = crate::sylvester::delta_lattice_oracle(a, b)?;
    let checks = vec![
        ProfileCheck {
            name: "pattern-product-reconstruction",
            holds: reconstruction_ok,
        },
        ProfileCheck {
            name: "value-set-product-vs-scan",
            holds: scanned == value_set,
        },
        ProfileCheck {
            name: "global-period-divides-resultant",
            holds: resultant_report
                .delta_abs
                .is_multiple_of(&BigInt::from(global_period)),
        },
        ProfileCheck {
            name: "delta-routes-agree",
            holds: delta.value == lattice,
        },
        ProfileCheck {
            name: "every-value-divides-delta",
            holds: value_set.iter().all(|v| delta.value.is_multiple_of(v)),
        },
        ProfileCheck {
            name: "bezout-identity",
            holds: resultant_report
                .certificate
                .as_ref()
                .is_some_and(|c| c.verify(a, b))
                && delta.verify(a, b),
        },
    ];

    Ok(GcdProfile {
        a: a.clone(),
        b: b.clone(),
        resultant: resultant_report,
        delta,
        patterns,
        global_period,
        value_set,
        checks,
    })
}

/// Divisibility constraint on a tuple of divisors of gcd values: if q_i
/// divides G(n_i) for distinct n_i, i = 1..l with l <= deg(A)+deg(B), then
/// the product of the q_i divides `|resultant| * prod |n_j - n_i|`.
#[derive(Clone, Debug)]
pub struct ConstraintReport {
    pub lhs: BigInt,
    pub rhs: BigInt,
    pub holds: bool,
}

pub fn verify_constraint(
    a: &IntPoly,
    b: &IntPoly,
    pairs: &[(BigInt, BigInt)],
) -> Result<ConstraintReport> {
    if !a.is_monic() || !b.is_monic() {
        return Err(Error::NotMonic);
    }
    let delta = resultant(a, b)?;
    if delta.is_zero() {
        return Err(Error::NotCoprime);
    }
    let d = a.degree().unwrap();
    let e = b.degree().unwrap();
    if pairs.len() > d + e {
        return Err(Error::PrereqViolated(format!(
            "tuple length {} exceeds deg(A)+deg(B) = {}",
            pairs.len(),
            d + e
        )));
    }
    let points: HashSet<&BigInt> = pairs.iter().map(|(n, _)| n).collect();
    if points.len() != pairs.len() {
        return Err(Error::PrereqViolated(
            "evaluation points must be pairwise distinct".into(),
        ));
    }
    for (n, q) in pairs {
        if !q.is_positive() {
            return Err(Error::PrereqViolated(format!("divisor {q} is not positive")));
        }
        let g = gcd_value(a, b, n)?;
        if !g.is_multiple_of(q) {
            return Err(Error::PrereqViolated(format!(
                "{q} does not divide G({n}) = {g}"
            )));
        }
    }
    let lhs: BigInt = pairs.iter().map(|(_, q)| q).product();
    let mut rhs = delta.abs();
    for i in 0..pairs.len() {
        for j in i + 1..pairs.len() {
            rhs *= (&pairs[j].0 - &pairs[i].0).abs();
        }
    }
    Ok(ConstraintReport {
        holds: rhs.is_multiple_of(&lhs),
        lhs,
        rhs,
    })
}

/// The two-point valuation gap:
/// `nu_p(n2 - n1) >= nu_p(G(n1)) + nu_p(G(n2)) - nu_p(resultant)`.
#[derive(Clone, Debug)]
pub struct ValuationGapReport {
    pub omega1: u32,
    pub omega2: u32,
    pub gap: u32,
    pub omega_delta: u32,
    pub holds: bool,
}

pub fn valuation_gap_check(
    a: &IntPoly,
    b: &IntPoly,
    n1: &BigInt,
    n2: &BigInt,
    p: u64,
) -> Result<ValuationGapReport> {
    if !a.is_monic() || !b.is_monic() {
        return Err(Error::NotMonic);
    }
    if !is_prime_u64(p) {
        return Err(Error::NotPrime { n: p });
    }
    if n1 == n2 {
        return Err(Error::PrereqViolated("points must differ".into()));
    }
    let delta = resultant(a, b)?;
    if delta.is_zero() {
        return Err(Error::NotCoprime);
    }
    let omega1 = arith::valuation_big(&gcd_value(a, b, n1)?, p);
    let omega2 = arith::valuation_big(&gcd_value(a, b, n2)?, p);
    let gap = arith::valuation_big(&(n2 - n1), p);
    let omega_delta = arith::valuation_big(&delta, p);
    Ok(ValuationGapReport {
        omega1,
        omega2,
        gap,
        omega_delta,
        holds: gap as i64 >= omega1 as i64 + omega2 as i64 - omega_delta as i64,
    })
}

/// Shape check for primes with resultant valuation exactly one: the pattern
/// must be `[p, 1, ..., 1]` of length p, up to permutation.
pub fn validate_valuation_one(pattern: &Pattern, omega: u32) -> Result<bool> {
    if omega != 1 {
        return Err(Error::WrongValuation { omega });
    }
    let p = pattern.p();
    if pattern.len() != p as usize {
        return Ok(false);
    }
    let big_p = BigInt::from(p);
    let spikes = pattern.values().iter().filter(|v| **v == big_p).count();
    let ones = pattern.values().iter().filter(|v| v.is_one()).count();
    Ok(spikes == 1 && ones == pattern.len() - 1)
}

/// Pattern of a degree-one A computed by closed form when the hypotheses
/// hold, or by plain extraction (flagged) when they do not.
#[derive(Clone, Debug)]
pub struct DegreeOnePattern {
    pub pattern: Pattern,
    /// True when the closed form applied; false marks the fallback to
    /// empirical extraction.
    pub closed_form: bool,
    /// The residue where the maximal entry p^omega sits, when the closed
    /// form applied.
    pub anchor: Option<u64>,
}

/// For `A = a1*x + a0` with coprime coefficients and monic B, the pattern of
/// p is `[(n - anchor) /\ p^omega]` with `anchor = -a0 * inv(a1) mod p^omega`
/// and `omega = nu_p(resultant)` — no gcd evaluations needed. When the
/// coefficient hypotheses fail the result may be more complicated, so the
/// pattern is extracted empirically instead and flagged.
pub fn degree_one_pattern(a: &IntPoly, b: &IntPoly, p: u64) -> Result<DegreeOnePattern> {
    if a.degree() != Some(1) {
        return Err(Error::PrereqViolated("A must have degree exactly 1".into()));
    }
    if !is_prime_u64(p) {
        return Err(Error::NotPrime { n: p });
    }
    let delta = resultant(a, b)?;
    if delta.is_zero() {
        return Err(Error::NotCoprime);
    }
    let omega = arith::valuation_big(&delta, p);
    if omega == 0 {
        return Err(Error::PrereqViolated(format!(
            "{p} does not divide the resultant {delta}"
        )));
    }

    let hypotheses_hold = a.coeff(0).gcd(&a.coeff(1)).is_one() && b.is_monic();
    if !hypotheses_hold {
        let pattern = extract_pattern(a, b, p, omega)?;
        return Ok(DegreeOnePattern {
            pattern,
            closed_form: false,
            anchor: None,
        });
    }

    let modulus = checked_pow_u64(p, omega)
        .filter(|&m| m <= SCAN_CAP)
        .ok_or(Error::ScanCapExceeded {
            needed: u64::MAX,
            cap: SCAN_CAP,
        })?;
    let big_modulus = BigInt::from(modulus);
    let a1 = u64::try_from(a.coeff(1).mod_floor(&big_modulus)).expect("residue fits");
    let a0 = u64::try_from(a.coeff(0).mod_floor(&big_modulus)).expect("residue fits");
    // p divides the resultant and gcd(a0, a1) = 1 force p not to divide a1.
    let inv = mod_inverse_u64(a1, modulus).ok_or_else(|| {
        Error::Internal(format!("{a1} not invertible modulo {modulus}"))
    })?;
    let anchor = ((modulus - a0) as u128 * inv as u128 % modulus as u128) as u64;

    let values: Vec<BigInt> = (0..modulus)
        .map(|n| {
            let mut r = (n + modulus - anchor) % modulus;
            let mut k = 0u32;
            while k < omega && r.is_multiple_of(p) {
                // r == 0 exhausts the loop at k == omega, the capped value
                r /= p;
                if r == 0 {
                    k = omega;
                    break;
                }
                k += 1;
            }
            BigInt::from(p).pow(k)
        })
        .collect();
    Ok(DegreeOnePattern {
        pattern: Pattern::new(p, values)?,
        closed_form: true,
        anchor: Some(anchor),
    })
}

/// Direct gcd p-part from lifted factorizations: when n falls in a common
/// root class, `G(n) /\ p^omega = (n - r_i) /\ (r_i - s_j) /\ p^omega`;
/// otherwise the p-part is 1.
pub fn split_roots_gcd(
    fa: &SplitFactorization,
    fb: &SplitFactorization,
    n: &BigInt,
) -> Result<BigInt> {
    if fa.pp != fb.pp {
        return Err(Error::ModulusMismatch);
    }
    let p = fa.pp.p;
    let omega = fa.pp.k;
    let big_p = BigInt::from(p);
    let class_of = |roots: &[BigInt]| {
        roots
            .iter()
            .find(|r| (n - *r).mod_floor(&big_p).is_zero())
            .cloned()
    };
    let (Some(r), Some(s)) = (class_of(&fa.roots), class_of(&fb.roots)) else {
        return Ok(BigInt::one());
    };
    let capped_valuation = |x: &BigInt| {
        if x.is_zero() {
            omega
        } else {
            arith::valuation_big(x, p).min(omega)
        }
    };
    let nu = capped_valuation(&(n - &r)).min(capped_valuation(&(&r - &s)));
    Ok(big_p.pow(nu))
}

/// For monic coprime polynomials that are split with simple roots modulo p,
/// `nu_p(delta)` equals the largest mu such that A and B have a common root
/// modulo p^mu. Found by Hensel-lifting both factorizations and intersecting
/// root classes; the result is checked against the Ayad route and against
/// the pattern (length and maximum must both be p^mu).
pub fn delta_valuation_split(a: &IntPoly, b: &IntPoly, p: u64) -> Result<u32> {
    if !a.is_monic() || !b.is_monic() {
        return Err(Error::NotMonic);
    }
    if !is_split_simple(a, p)? || !is_split_simple(b, p)? {
        return Err(Error::NotSplitSimple { p });
    }
    let delta = resultant(a, b)?;
    if delta.is_zero() {
        return Err(Error::NotCoprime);
    }
    let omega = arith::valuation_big(&delta, p);

    let mu = if omega == 0 {
        0
    } else {
        let fa = lift_factorization(a, p, omega)?;
        let fb = lift_factorization(b, p, omega)?;
        let mut best = 0u32;
        for r in &fa.roots {
            for s in &fb.roots {
                let diff = r - s;
                let nu = if diff.is_zero() {
                    omega
                } else {
                    arith::valuation_big(&diff, p).min(omega)
                };
                best = best.max(nu);
            }
        }
        best
    };

    // Checked postconditions: both characterizations of mu must agree.
    let delta_min = minimal_delta(a, b)?;
    let nu_delta_min = arith::valuation_big(&delta_min.value, p);
    if nu_delta_min != mu {
        return Err(Error::Internal(format!(
            "common-root depth {mu} disagrees with nu_{p}(delta) = {nu_delta_min}"
        )));
    }
    if omega > 0 {
        let pattern = extract_pattern(a, b, p, omega)?;
        let expected = BigInt::from(p).pow(mu);
        if pattern.len() as u64 != checked_pow_u64(p, mu).unwrap_or(u64::MAX)
            || *pattern.max_value() != expected
        {
            return Err(Error::Internal(format!(
                "pattern {pattern} does not have length and maximum p^{mu}"
            )));
        }
    }
    Ok(mu)
}

/// Analysis of the pair `x^a + 1`, `x^b + 1`: either they share the factor
/// `x^gcd(a,b) + 1` (both reduced exponents odd), or they are coprime, the
/// gcd sequence has pattern [1, 2], and 2 is their minimal Bézout constant.
#[derive(Clone, Debug)]
pub struct XPowPlusOneReport {
    pub a_exp: u64,
    pub b_exp: u64,
    pub coprime: bool,
    pub common_factor: Option<IntPoly>,
    /// For the coprime case: the window check that the gcd sequence is 2 at
    /// odd n and 1 at even n.
    pub pattern_verified: Option<bool>,
    /// For the coprime case: the minimal Bézout constant (membership of 2
    /// in the ideal generated by the pair).
    pub delta: Option<BigInt>,
}

pub fn analyze_xpow_plus_one(a_exp: u64, b_exp: u64) -> Result<XPowPlusOneReport> {
    if a_exp == 0 || b_exp == 0 {
        return Err(Error::PrereqViolated("exponents must be positive".into()));
    }
    let d = a_exp.gcd(&b_exp);
    let a = &IntPoly::monomial(1, a_exp as usize) + &IntPoly::constant(1);
    let b = &IntPoly::monomial(1, b_exp as usize) + &IntPoly::constant(1);

    if (a_exp / d) % 2 == 1 && (b_exp / d) % 2 == 1 {
        let factor = &IntPoly::monomial(1, d as usize) + &IntPoly::constant(1);
        if !a.is_divisible_by(&factor)? || !b.is_divisible_by(&factor)? {
            return Err(Error::Internal(format!(
                "{factor} expected to divide both {a} and {b}"
            )));
        }
        return Ok(XPowPlusOneReport {
            a_exp,
            b_exp,
            coprime: false,
            common_factor: Some(factor),
            pattern_verified: None,
            delta: None,
        });
    }

    let mut pattern_verified = true;
    for n in 0..64i64 {
        let g = gcd_value(&a, &b, &BigInt::from(n))?;
        let expected = if n % 2 == 1 { 2 } else { 1 };
        if g != BigInt::from(expected) {
            pattern_verified = false;
        }
    }
    let delta = minimal_delta(&a, &b)?.value;
    Ok(XPowPlusOneReport {
        a_exp,
        b_exp,
        coprime: true,
        common_factor: None,
        pattern_verified: Some(pattern_verified),
        delta: Some(delta),
    })
}

/// Number of functions Z/mZ -> Z/mZ induced by integer polynomials:
/// the product over k = 0..=m of m / gcd(m, k!).
pub fn count_poly_functions(m: u64) -> BigInt {
    assert!(m >= 1);
    let mut fact_mod = 1 % m; // k! mod m, starting at 0! = 1
    let mut product = BigInt::one();
    for k in 0..=m {
        if k > 0 {
            fact_mod = fact_mod * (k % m) % m;
        }
        let g = gcd_u64(m, fact_mod);
        product *= BigInt::from(m / g);
    }
    product
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

/// Number of distinct tuples `[f(0)/\4, f(1)/\4, f(2)/\4, f(3)/\4]` over all
/// 64 polynomial functions modulo 4, enumerated through the falling
/// factorial basis `c0 + c1*x + c2*x(x-1) + c3*x(x-1)(x-2)` with
/// c0, c1 mod 4 and c2, c3 mod 2.
pub fn count_gcd_tuples_mod4() -> usize {
    let mut tuples = HashSet::new();
    let part = |v: u64| -> u8 {
        match v % 4 {
            0 => 4,
            2 => 2,
            _ => 1,
        }
    };
    for c0 in 0..4u64 {
        for c1 in 0..4u64 {
            for c2 in 0..2u64 {
                for c3 in 0..2u64 {
                    let tuple: [u8; 4] = std::array::from_fn(|i| {
                        let n = i as u64;
                        let falling2 = n * n.wrapping_sub(1);
                        let falling3 = falling2 * n.wrapping_sub(2);
                        let value = c0 + c1 * n + c2 * falling2 + c3 * falling3;
                        part(value)
                    });
                    tuples.insert(tuple);
                }
            }
        }
    }
    tuples.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPoly {
        s.parse().unwrap()
    }

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn pattern_of(values: &[i64], p: u64) -> Pattern {
        Pattern::new(p, values.iter().map(|&v| big(v)).collect()).unwrap()
    }

    #[test]
    fn gcd_value_examples() {
        let a = p("x^3-5x^2+10x-12");
        let b = p("x^2+3");
        assert_eq!(gcd_value(&a, &b, &big(7)).unwrap(), big(52));
        let a = IntPoly::from_roots([5, 27]);
        let b = p("x^2+3x+9");
        assert_eq!(gcd_value(&a, &b, &big(27)).unwrap(), big(819));
        assert_eq!(gcd_value(&p("x"), &p("x-1"), &big(10)).unwrap(), big(1));
    }

    #[test]
    fn gcd_value_both_zero() {
        assert!(matches!(
            gcd_value(&p("x-3"), &p("x^2-9"), &big(3)),
            Err(Error::BothZero { .. })
        ));
    }

    #[test]
    fn p_part_examples() {
        assert_eq!(p_part(&big(12), 2), big(4));
        assert_eq!(p_part(&big(819), 13), big(13));
        assert_eq!(p_part(&big(1), 5), big(1));
    }

    #[test]
    fn pattern_shrinks_to_minimal_period() {
        let pat = pattern_of(&[1, 2, 1, 2], 2);
        assert_eq!(pat.values(), &[big(1), big(2)]);
        assert_eq!(pat.mu(), 1);
        // constant windows collapse all the way
        let pat = pattern_of(&[3, 3, 3, 3, 3, 3, 3, 3, 3], 3);
        assert_eq!(pat.len(), 1);
    }

    #[test]
    fn pattern_rejects_bad_input() {
        assert!(Pattern::new(2, vec![big(1), big(2), big(1)]).is_err()); // length 3
        assert!(Pattern::new(2, vec![big(1), big(6)]).is_err()); // 6 not a 2-power
        assert!(Pattern::new(4, vec![big(1)]).is_err()); // 4 not prime
    }

    #[test]
    fn pattern_indexing_is_two_sided() {
        let pat = pattern_of(&[1, 2, 1, 4], 2);
        assert_eq!(*pat.value_at_i64(-1), big(4));
        assert_eq!(*pat.value_at_i64(-4), big(1));
        assert_eq!(*pat.value_at_i64(5), big(2));
        assert_eq!(pat.to_string(), "[1,2,1,4]_4");
    }

    #[test]
    fn extract_pattern_running_example() {
        let a = p("x^3-5x^2+10x-12");
        let b = p("x^2+3");
        let m2 = extract_pattern(&a, &b, 2, 2).unwrap();
        assert_eq!(m2, pattern_of(&[1, 2, 1, 4], 2));
        let m3 = extract_pattern(&a, &b, 3, 1).unwrap();
        assert_eq!(m3, pattern_of(&[3, 1, 1], 3));
    }

    #[test]
    fn extract_pattern_example_pair() {
        let a = IntPoly::from_roots([5, 27]);
        let b = p("x^2+3x+9");
        let m3 = extract_pattern(&a, &b, 3, 2).unwrap();
        assert_eq!(m3, pattern_of(&[9, 1, 1, 3, 1, 1, 3, 1, 1], 3));
    }

    #[test]
    fn build_profile_running_example() {
        let profile = build_profile(&p("x^3-5x^2+10x-12"), &p("x^2+3")).unwrap();
        assert_eq!(profile.global_period, 156);
        assert_eq!(profile.max_value(), big(156));
        for v in [1, 2, 3, 4, 6, 12, 13, 52, 156] {
            assert!(profile.value_set.contains(&big(v)), "missing {v}");
        }
        assert!(profile.all_checks_hold());
        // the 13-pattern has its spike at index 7
        let m13 = &profile.patterns[&13];
        assert_eq!(m13.len(), 13);
        assert_eq!(*m13.value_at_i64(7), big(13));
    }

    #[test]
    fn build_profile_example_pair() {
        let profile = build_profile(&IntPoly::from_roots([5, 27]), &p("x^2+3x+9")).unwrap();
        assert_eq!(profile.global_period, 5733);
        let expected: BTreeSet<BigInt> = [
            1, 3, 7, 9, 13, 21, 39, 49, 63, 91, 117, 147, 273, 441, 637, 819, 1911, 5733,
        ]
        .into_iter()
        .map(big)
        .collect();
        assert_eq!(profile.value_set, expected);
        assert!(profile.all_checks_hold());
    }

    #[test]
    fn build_profile_trivial_pair() {
        let profile = build_profile(&p("x"), &p("x-1")).unwrap();
        assert_eq!(profile.resultant.delta_abs, big(1));
        assert!(profile.patterns.is_empty());
        assert_eq!(profile.global_period, 1);
        assert_eq!(profile.value_set, BTreeSet::from([big(1)]));
        assert!(profile.all_checks_hold());
    }

    #[test]
    fn build_profile_rejects_common_factor() {
        assert_eq!(
            build_profile(&p("x^2-1"), &p("x-1")).unwrap_err(),
            Error::NotCoprime
        );
    }

    #[test]
    fn reconstruction_covers_negative_indices() {
        let profile = build_profile(&p("x^3-5x^2+10x-12"), &p("x^2+3")).unwrap();
        let period = profile.global_period as i64;
        for n in -3 * period..=3 * period {
            let n = big(n);
            assert_eq!(
                gcd_value(&profile.a, &profile.b, &n).unwrap(),
                profile.reconstruct(&n),
                "n = {n}"
            );
        }
    }

    #[test]
    fn verify_constraint_examples() {
        let a = p("x^2-9x+16");
        let b = p("x^2-7x+12");
        let r = verify_constraint(&a, &b, &[(big(0), big(4)), (big(4), big(4))]).unwrap();
        assert_eq!(r.lhs, big(16));
        assert_eq!(r.rhs, big(32));
        assert!(r.holds);

        // l = 1 reduces to G(n) | resultant
        let g = gcd_value(&a, &b, &big(6)).unwrap();
        let r = verify_constraint(&a, &b, &[(big(6), g)]).unwrap();
        assert!(r.holds);

        let a = IntPoly::from_roots([5, 27]);
        let b = p("x^2+3x+9");
        let r = verify_constraint(
            &a,
            &b,
            &[(big(5), big(7)), (big(12), big(7)), (big(13), big(7))],
        )
        .unwrap();
        assert!(r.holds);
    }

    #[test]
    fn verify_constraint_prerequisites() {
        let a = p("x^2-9x+16");
        let b = p("x^2-7x+12");
        // q does not divide G(n)
        assert!(matches!(
            verify_constraint(&a, &b, &[(big(1), big(3))]),
            Err(Error::PrereqViolated(_))
        ));
        // too many points
        let pairs: Vec<_> = (0..5).map(|n| (big(n), big(1))).collect();
        assert!(matches!(
            verify_constraint(&a, &b, &pairs),
            Err(Error::PrereqViolated(_))
        ));
        // repeated points
        assert!(matches!(
            verify_constraint(&a, &b, &[(big(0), big(1)), (big(0), big(2))]),
            Err(Error::PrereqViolated(_))
        ));
    }

    #[test]
    fn valuation_gap_examples() {
        let r = valuation_gap_check(&p("x^3-5x^2+10x-12"), &p("x^2+3"), &big(3), &big(7), 2)
            .unwrap();
        assert_eq!((r.omega1, r.omega2, r.gap, r.omega_delta), (2, 2, 2, 2));
        assert!(r.holds);

        let a = IntPoly::from_roots([5, 27]);
        let r = valuation_gap_check(&a, &p("x^2+3x+9"), &big(5), &big(12), 7).unwrap();
        assert_eq!((r.omega1, r.omega2, r.omega_delta), (2, 1, 3));
        assert!(r.holds);

        // rhs <= 0 holds trivially
        let r = valuation_gap_check(&p("x"), &p("x-1"), &big(2), &big(5), 3).unwrap();
        assert!(r.holds);
    }

    #[test]
    fn valuation_one_shape() {
        let m3 = pattern_of(&[3, 1, 1], 3);
        assert!(validate_valuation_one(&m3, 1).unwrap());

        let mut values = vec![1i64; 13];
        values[7] = 13;
        let m13 = pattern_of(&values, 13);
        assert!(validate_valuation_one(&m13, 1).unwrap());

        let bad = pattern_of(&[5, 5, 1, 1, 1], 5);
        assert!(!validate_valuation_one(&bad, 1).unwrap());

        assert!(matches!(
            validate_valuation_one(&m3, 2),
            Err(Error::WrongValuation { omega: 2 })
        ));
    }

    #[test]
    fn degree_one_closed_form() {
        let r = degree_one_pattern(&p("x"), &p("x^2+3"), 3).unwrap();
        assert!(r.closed_form);
        assert_eq!(r.anchor, Some(0));
        assert_eq!(r.pattern, pattern_of(&[3, 1, 1], 3));

        // resultant of (2x-1, x^2+x+1) is 7; the root of A mod 7 is 4
        let a = p("2x-1");
        let b = p("x^2+x+1");
        assert_eq!(resultant(&a, &b).unwrap(), big(7));
        let r = degree_one_pattern(&a, &b, 7).unwrap();
        assert!(r.closed_form);
        assert_eq!(r.anchor, Some(4));
        assert_eq!(r.pattern, extract_pattern(&a, &b, 7, 1).unwrap());
        assert_eq!(*r.pattern.value_at_i64(4), big(7));
    }

    #[test]
    fn degree_one_closed_form_matches_extraction() {
        // extended check across several degree-one pairs
        let cases = [
            ("x", "x^2+3", 3u64),
            ("2x-1", "x^2+x+1", 7),
            ("3x+1", "x^2+1", 2),
            ("x-2", "x^2+1", 5),
            ("5x+2", "x^3+x+1", 11),
        ];
        for (a, b, prime) in cases {
            let (a, b) = (p(a), p(b));
            let delta = resultant(&a, &b).unwrap();
            if arith::valuation_big(&delta, prime) == 0 {
                continue;
            }
            let r = degree_one_pattern(&a, &b, prime).unwrap();
            assert!(r.closed_form, "a = {a}, b = {b}");
            let omega = arith::valuation_big(&delta, prime);
            assert_eq!(
                r.pattern,
                extract_pattern(&a, &b, prime, omega).unwrap(),
                "a = {a}, b = {b}, p = {prime}"
            );
        }
    }

    #[test]
    fn degree_one_fallback_is_flagged() {
        // gcd(a0, a1) = 2 breaks the closed-form hypotheses
        let a = p("2x-4");
        let b = p("x^2+3");
        let delta = resultant(&a, &b).unwrap();
        assert_eq!(delta, big(28));
        let r = degree_one_pattern(&a, &b, 7).unwrap();
        assert!(!r.closed_form);
        assert_eq!(r.anchor, None);
        assert_eq!(r.pattern, extract_pattern(&a, &b, 7, 1).unwrap());
    }

    #[test]
    fn degree_one_rejects_wrong_degree_or_prime() {
        assert!(matches!(
            degree_one_pattern(&p("x^2+1"), &p("x^2+3"), 2),
            Err(Error::PrereqViolated(_))
        ));
        assert!(matches!(
            degree_one_pattern(&p("x-1"), &p("x"), 5),
            Err(Error::PrereqViolated(_)) // resultant is -1, 5 does not divide
        ));
    }

    #[test]
    fn split_roots_gcd_examples() {
        let a = p("x^2-9x+16");
        let b = p("x^2-7x+12");
        let fa = lift_factorization(&a, 2, 2).unwrap();
        let fb = lift_factorization(&b, 2, 2).unwrap();
        assert_eq!(split_roots_gcd(&fa, &fb, &big(0)).unwrap(), big(4));

        let a = IntPoly::from_roots([5, 27]);
        let b = p("x^2+3x+9");
        let fa = lift_factorization(&a, 13, 1).unwrap();
        let fb = lift_factorization(&b, 13, 1).unwrap();
        assert_eq!(split_roots_gcd(&fa, &fb, &big(1)).unwrap(), big(13));
        // n = 2 hits no root class of A modulo 13: G(2) = 1
        assert_eq!(split_roots_gcd(&fa, &fb, &big(2)).unwrap(), big(1));
    }

    #[test]
    fn split_roots_gcd_agrees_with_direct_gcd() {
        let a = p("x^2-9x+16");
        let b = p("x^2-7x+12");
        let fa = lift_factorization(&a, 2, 2).unwrap();
        let fb = lift_factorization(&b, 2, 2).unwrap();
        for n in -40..=40i64 {
            let n = big(n);
            let direct = p_part(&gcd_value(&a, &b, &n).unwrap(), 2);
            assert_eq!(split_roots_gcd(&fa, &fb, &n).unwrap(), direct, "n = {n}");
        }
    }

    #[test]
    fn split_roots_gcd_modulus_mismatch() {
        let a = p("x^2-9x+16");
        let b = p("x^2-7x+12");
        let fa = lift_factorization(&a, 2, 2).unwrap();
        let fb = lift_factorization(&b, 2, 3).unwrap();
        assert_eq!(
            split_roots_gcd(&fa, &fb, &big(0)).unwrap_err(),
            Error::ModulusMismatch
        );
    }

    #[test]
    fn delta_valuation_split_examples() {
        assert_eq!(
            delta_valuation_split(&p("x^2-9x+16"), &p("x^2-7x+12"), 2).unwrap(),
            2
        );
        assert_eq!(delta_valuation_split(&p("x"), &p("x-1"), 2).unwrap(), 0);

        let a = IntPoly::from_roots([-1, -7]);
        let b = IntPoly::from_roots([-3, -5]);
        assert!(matches!(
            delta_valuation_split(&a, &b, 2),
            Err(Error::NotSplitSimple { p: 2 })
        ));
    }

    #[test]
    fn xpow_plus_one_cases() {
        let r = analyze_xpow_plus_one(1, 2).unwrap();
        assert!(r.coprime);
        assert_eq!(r.pattern_verified, Some(true));
        assert_eq!(r.delta, Some(big(2)));

        let r = analyze_xpow_plus_one(3, 5).unwrap();
        assert!(!r.coprime);
        assert_eq!(r.common_factor, Some(p("x+1")));

        let r = analyze_xpow_plus_one(2, 4).unwrap();
        assert!(r.coprime);
        assert_eq!(r.pattern_verified, Some(true));
        assert_eq!(r.delta, Some(big(2)));

        // both exponents even but quotients 1 and 3: common factor x^2+1
        let r = analyze_xpow_plus_one(2, 6).unwrap();
        assert!(!r.coprime);
        assert_eq!(r.common_factor, Some(p("x^2+1")));
    }

    #[test]
    fn count_poly_functions_examples() {
        assert_eq!(count_poly_functions(4), big(64));
        assert_eq!(count_poly_functions(1), big(1));
        assert_eq!(count_poly_functions(2), big(4));
        assert_eq!(count_poly_functions(3), big(27));
    }

    #[test]
    fn count_poly_functions_brute_oracle() {
        // All polynomial maps mod m are induced by polynomials of degree
        // < 2m with coefficients mod m (x^k cycles as a function for k >= m
        // in the small moduli used here), so enumerating those coefficient
        // vectors and collecting distinct value tables is an independent
        // count.
        for m in [2u64, 3, 4] {
            let deg = (2 * m) as usize;
            let mut maps = HashSet::new();
            let mut coeffs = vec![0u64; deg];
            loop {
                let table: Vec<u64> = (0..m)
                    .map(|x| {
                        let mut acc = 0u64;
                        for &c in coeffs.iter().rev() {
                            acc = (acc * x + c) % m;
                        }
                        acc
                    })
                    .collect();
                maps.insert(table);
                // odometer increment over [0, m)^deg
                let mut i = 0;
                loop {
                    if i == deg {
                        break;
                    }
                    coeffs[i] += 1;
                    if coeffs[i] < m {
                        break;
                    }
                    coeffs[i] = 0;
                    i += 1;
                }
                if i == deg {
                    break;
                }
            }
            assert_eq!(
                BigInt::from(maps.len()),
                count_poly_functions(m),
                "m = {m}"
            );
        }
    }

    #[test]
    fn gcd_tuples_mod4() {
        let count = count_gcd_tuples_mod4();
        assert_eq!(count, 25);
        assert!(count <= 81);
        assert!(count <= 64);
    }
}
