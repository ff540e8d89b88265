//! The resultant machinery: Sylvester matrices, exact determinants by
//! fraction-free elimination, integer Bézout certificates, and the minimal
//! Bézout constant delta computed by two independent routes.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::miller_rabin_u64;
use crate::error::{Error, Result};
use crate::poly::IntPoly;

/// The (d+e) x (d+e) Sylvester matrix of two nonconstant polynomials.
///
/// Column `j` (for `j < e`) holds the coefficients of `A` shifted down by
/// `j` rows, leading coefficient on top; column `e + j` (for `j < d`) holds
/// the coefficients of `B` the same way.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SylvesterMatrix {
    d: usize,
    e: usize,
    entries: Vec<BigInt>, // row-major, (d+e)^2 entries
}

impl SylvesterMatrix {
    pub fn new(a: &IntPoly, b: &IntPoly) -> Result<Self> {
        let d = a.degree().filter(|&d| d >= 1).ok_or(Error::DegreeTooSmall)?;
        let e = b.degree().filter(|&e| e >= 1).ok_or(Error::DegreeTooSmall)?;
        let n = d + e;
        let mut entries = vec![BigInt::zero(); n * n];
        for j in 0..e {
            for i in 0..=d {
                entries[(i + j) * n + j] = a.coeff(d - i);
            }
        }
        for j in 0..d {
            for i in 0..=e {
                entries[(i + j) * n + e + j] = b.coeff(e - i);
            }
        }
        Ok(SylvesterMatrix { d, e, entries })
    }

    pub fn size(&self) -> usize {
        self.d + self.e
    }

    pub fn deg_a(&self) -> usize {
        self.d
    }

    pub fn deg_b(&self) -> usize {
        self.e
    }

    pub fn entry(&self, row: usize, col: usize) -> &BigInt {
        &self.entries[row * self.size() + col]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        let n = self.size();
        (0..n)
            .map(|i| self.entries[i * n..(i + 1) * n].to_vec())
            .collect()
    }

    /// Exact determinant by Bareiss fraction-free elimination.
    pub fn determinant(&self) -> BigInt {
        bareiss_determinant(self.to_rows())
    }
}

/// Bareiss fraction-free elimination: every division below is exact, so the
/// computation stays in the integers with polynomially bounded entry sizes.
pub(crate) fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, r);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let det = std::mem::take(&mut m[n - 1][n - 1]);
    if negate {
        -det
    } else {
        det
    }
}

/// The resultant of `a` and `b`: the determinant of their Sylvester matrix,
/// sign included. Zero exactly when the polynomials share a root in an
/// algebraic closure.
pub fn resultant(a: &IntPoly, b: &IntPoly) -> Result<BigInt> {
    Ok(SylvesterMatrix::new(a, b)?.determinant())
}

/// Integer cofactors `u`, `v` with `a*u + b*v = value` as an exact
/// polynomial identity, with `deg(u) < deg(b)` and `deg(v) < deg(a)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BezoutCertificate {
    pub u: IntPoly,
    pub v: IntPoly,
    pub value: BigInt,
}

impl BezoutCertificate {
    /// Check the identity `a*u + b*v = value` by exact polynomial arithmetic.
    pub fn verify(&self, a: &IntPoly, b: &IntPoly) -> bool {
        &(a * &self.u) + &(b * &self.v) == IntPoly::new(vec![self.value.clone()])
    }
}

/// Bézout certificate at the resultant: solves `S * W = |det S| * E` where
/// `E = (0, ..., 0, 1)`, i.e. extracts the last adjugate column without
/// forming the full adjugate. Each entry of `W` is a single determinant by
/// Cramer's rule. When the resultant is negative the cofactors are negated
/// so that the certified value is positive.
pub fn bezout_certificate(a: &IntPoly, b: &IntPoly) -> Result<BezoutCertificate> {
    let s = SylvesterMatrix::new(a, b)?;
    let delta = s.determinant();
    if delta.is_zero() {
        return Err(Error::NotCoprime);
    }
    let n = s.size();
    let e = s.deg_b();
    // W_i = det(S with column i replaced by E); then S*W = det(S)*E.
    let mut w = Vec::with_capacity(n);
    for i in 0..n {
        let mut m = s.to_rows();
        for (r, row) in m.iter_mut().enumerate() {
            row[i] = if r == n - 1 {
                BigInt::one()
            } else {
                BigInt::zero()
            };
        }
        w.push(bareiss_determinant(m));
    }
    // The first e entries are the coefficients of U from x^(e-1) down to the
    // constant; the remaining d entries are V the same way.
    let mut u = IntPoly::new(w[..e].iter().rev().cloned().collect());
    let mut v = IntPoly::new(w[e..].iter().rev().cloned().collect());
    if delta.is_negative() {
        u = -&u;
        v = -&v;
    }
    let cert = BezoutCertificate {
        u,
        v,
        value: delta.abs(),
    };
    debug_assert!(cert.verify(a, b), "Bezout identity failed");
    Ok(cert)
}

/// The minimal Bézout constant by Ayad's content formula: divide the
/// resultant certificate by the gcd of the contents of its cofactors.
pub fn minimal_delta(a: &IntPoly, b: &IntPoly) -> Result<BezoutCertificate> {
    let cert = bezout_certificate(a, b)?;
    let g = cert.u.content().gcd(&cert.v.content());
    // g divides every coefficient of a*u + b*v, hence the constant value.
    let (value, rem) = cert.value.div_rem(&g);
    debug_assert!(rem.is_zero());
    let cert = BezoutCertificate {
        u: cert.u.div_exact(&g),
        v: cert.v.div_exact(&g),
        value,
    };
    debug_assert!(cert.verify(a, b));
    Ok(cert)
}

/// Independent route to the minimal Bézout constant: the rows of coefficient
/// vectors of `x^i * a` (i < deg b) and `x^j * b` (j < deg a) span an integer
/// lattice of rank d+e; the smallest positive constant polynomial it contains
/// is the last pivot of its row-style Hermite normal form.
pub fn delta_lattice_oracle(a: &IntPoly, b: &IntPoly) -> Result<BigInt> {
    let d = a.degree().filter(|&d| d >= 1).ok_or(Error::DegreeTooSmall)?;
    let e = b.degree().filter(|&e| e >= 1).ok_or(Error::DegreeTooSmall)?;
    let n = d + e;
    // Columns ordered by descending power, so constant terms live in the
    // last column and the final HNF pivot is the minimal positive constant.
    let mut m = vec![vec![BigInt::zero(); n]; n];
    for i in 0..e {
        for k in 0..=d {
            m[i][n - 1 - (i + k)] = a.coeff(k);
        }
    }
    for j in 0..d {
        for k in 0..=e {
            m[e + j][n - 1 - (j + k)] = b.coeff(k);
        }
    }
    hermite_last_pivot(m).ok_or(Error::NotCoprime)
}

/// Row-style Hermite reduction of a square integer matrix; returns the last
/// diagonal pivot (normalized positive), or None when the matrix is singular.
fn hermite_last_pivot(mut m: Vec<Vec<BigInt>>) -> Option<BigInt> {
    let n = m.len();
    for col in 0..n {
        loop {
            // pick the smallest nonzero entry at or below the pivot row
            let mut best: Option<usize> = None;
            for r in col..n {
                if !m[r][col].is_zero()
                    && best.is_none_or(|b| m[r][col].abs() < m[b][col].abs())
                {
                    best = Some(r);
                }
            }
            let pivot_row = best?;
            m.swap(col, pivot_row);
            let mut reduced_all = true;
            for r in col + 1..n {
                if m[r][col].is_zero() {
                    continue;
                }
                let q = m[r][col].div_floor(&m[col][col]);
                if !q.is_zero() {
                    let (upper, lower) = m.split_at_mut(r);
                    let pivot_row = &upper[col];
                    for (entry, pivot) in lower[0][col..].iter_mut().zip(&pivot_row[col..]) {
                        *entry -= &q * pivot;
                    }
                }
                if !m[r][col].is_zero() {
                    reduced_all = false;
                }
            }
            if reduced_all {
                break;
            }
        }
        if m[col][col].is_negative() {
            for entry in m[col][col..].iter_mut() {
                *entry = -std::mem::take(entry);
            }
        }
    }
    Some(std::mem::take(&mut m[n - 1][n - 1]))
}

/// Default bound for trial division when factorizing resultants.
pub const DEFAULT_TRIAL_BOUND: u64 = 1_000_000;

/// Prime factorization of a positive integer by trial division up to
/// [`DEFAULT_TRIAL_BOUND`].
pub fn factorize(n: &BigInt) -> Result<BTreeMap<u64, u32>> {
    factorize_with_bound(n, DEFAULT_TRIAL_BOUND)
}

/// Prime factorization by trial division up to `bound`. A cofactor left over
/// after trial division is accepted only when it is provably prime: either
/// it is below `bound^2` (no prime factor up to its square root remains), or
/// it fits in a u64 and passes deterministic Miller-Rabin. Anything else is
/// reported as incomplete rather than guessed at.
pub fn factorize_with_bound(n: &BigInt, bound: u64) -> Result<BTreeMap<u64, u32>> {
    if !n.is_positive() {
        return Err(Error::PrereqViolated(format!(
            "factorization requires a positive integer, got {n}"
        )));
    }
    let mut rest = n.clone();
    let mut factors = BTreeMap::new();
    let mut divide_out = |rest: &mut BigInt, p: u64| {
        let big_p = BigInt::from(p);
        let mut k = 0u32;
        loop {
            let (q, r) = rest.div_rem(&big_p);
            if !r.is_zero() {
                break;
            }
            *rest = q;
            k += 1;
        }
        if k > 0 {
            factors.insert(p, k);
        }
    };
    let mut p = 2u64;
    while BigInt::from(p) * BigInt::from(p) <= rest {
        if p > bound {
            // trial bound exhausted with a composite-sized cofactor left
            return match rest.to_u64() {
                Some(r) if miller_rabin_u64(r) => {
                    factors.insert(r, 1);
                    Ok(factors)
                }
                _ => Err(Error::FactorizationIncomplete { remaining: rest }),
            };
        }
        divide_out(&mut rest, p);
        p = if p == 2 { 3 } else { p + 2 };
    }
    if rest > BigInt::one() {
        // no prime factor up to sqrt(rest): rest itself is prime
        let r = rest.to_u64().expect("cofactor below bound^2 fits in u64");
        factors.insert(r, 1);
    }
    Ok(factors)
}

/// Everything the analysis needs to know about the resultant of a coprime
/// pair: its signed value, the prime factorization of its absolute value,
/// and the Bézout certificate that witnesses it.
#[derive(Clone, Debug)]
pub struct ResultantReport {
    pub delta_signed: BigInt,
    pub delta_abs: BigInt,
    /// p -> nu_p(|delta|), every prime dividing the resultant.
    pub factorization: BTreeMap<u64, u32>,
    /// Present exactly when the resultant is nonzero (always, for reports
    /// built by [`ResultantReport::compute`]).
    pub certificate: Option<BezoutCertificate>,
}

impl ResultantReport {
    pub fn compute(a: &IntPoly, b: &IntPoly) -> Result<Self> {
        let delta_signed = resultant(a, b)?;
        if delta_signed.is_zero() {
            return Err(Error::NotCoprime);
        }
        let delta_abs = delta_signed.abs();
        let factorization = factorize(&delta_abs)?;
        let certificate = Some(bezout_certificate(a, b)?);
        Ok(ResultantReport {
            delta_signed,
            delta_abs,
            factorization,
            certificate,
        })
    }

    /// nu_p(|delta|), zero for primes not dividing the resultant.
    pub fn omega(&self, p: u64) -> u32 {
        self.factorization.get(&p).copied().unwrap_or(0)
    }
}
