//! Arithmetic modulo p and p^k: root finding by exhaustive scan, detection
//! of split polynomials with simple roots, Hensel lifting of simple roots
//! and of full linear factorizations, and polynomial gcd in F_p.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::arith::{is_prime_u64, mod_inverse_u64, valuation_big};
use crate::error::{Error, Result};
use crate::poly::IntPoly;
use crate::sylvester::resultant;

/// A checked prime power p^k, k >= 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimePower {
    pub p: u64,
    pub k: u32,
    pub modulus: BigInt,
}

impl PrimePower {
    pub fn new(p: u64, k: u32) -> Result<Self> {
        if !is_prime_u64(p) {
            return Err(Error::NotPrime { n: p });
        }
        if k == 0 {
            return Err(Error::PrereqViolated(
                "prime power exponent must be at least 1".into(),
            ));
        }
        Ok(PrimePower {
            p,
            k,
            modulus: BigInt::from(p).pow(k),
        })
    }
}

/// A factorization `poly == (x - r_1) ... (x - r_d)  (mod p^k)` into linear
/// factors whose roots are pairwise distinct modulo p. Residues are
/// normalized to `[0, p^k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitFactorization {
    pub poly: IntPoly,
    pub pp: PrimePower,
    pub roots: Vec<BigInt>,
}

/// Ascending coefficients reduced into `[0, p)`.
fn reduce_coeffs(poly: &IntPoly, p: u64) -> Vec<u64> {
    let big_p = BigInt::from(p);
    let mut coeffs: Vec<u64> = poly
        .coeffs()
        .iter()
        .map(|c| {
            let r = c.mod_floor(&big_p);
            u64::try_from(r).expect("residue fits in u64")
        })
        .collect();
    while coeffs.last() == Some(&0) {
        coeffs.pop();
    }
    coeffs
}

/// Horner evaluation of reduced coefficients at `x` modulo `p`.
fn eval_mod(coeffs: &[u64], x: u64, p: u64) -> u64 {
    let mut acc: u64 = 0;
    for &c in coeffs.iter().rev() {
        acc = ((acc as u128 * x as u128 + c as u128) % p as u128) as u64;
    }
    acc
}

/// All residues rho in `[0, p)` with `P(rho) == 0 (mod p)`, by exhaustive
/// scan. Fine for the small primes the analysis meets; callers feeding in
/// large primes pay the linear cost.
pub fn roots_mod_p(poly: &IntPoly, p: u64) -> Result<Vec<u64>> {
    if !is_prime_u64(p) {
        return Err(Error::NotPrime { n: p });
    }
    let coeffs = reduce_coeffs(poly, p);
    if coeffs.is_empty() {
        return Err(Error::ZeroModP { p });
    }
    Ok((0..p).filter(|&x| eval_mod(&coeffs, x, p) == 0).collect())
}

/// True when the monic polynomial splits into pairwise distinct linear
/// factors modulo p, i.e. it has exactly deg(P) distinct roots in F_p.
pub fn is_split_simple(poly: &IntPoly, p: u64) -> Result<bool> {
    if !poly.is_monic() {
        return Err(Error::NotMonic);
    }
    let deg = poly.degree().expect("monic polynomial is nonzero");
    Ok(roots_mod_p(poly, p)?.len() == deg)
}

/// Lift a simple root of `P` modulo p to a root modulo p^omega.
///
/// One Newton-style step per power: with `r` a root modulo p^k, the next
/// correction is `h = -(P(r)/p^k) * inv(P'(rho)) (mod p)` and the lift is
/// `r + h*p^k`. The inverse of the derivative is computed once, modulo p.
pub fn hensel_lift_root(poly: &IntPoly, rho: u64, p: u64, omega: u32) -> Result<BigInt> {
    if !is_prime_u64(p) {
        return Err(Error::NotPrime { n: p });
    }
    if omega == 0 {
        return Err(Error::PrereqViolated("omega must be at least 1".into()));
    }
    let rho = rho % p;
    let coeffs = reduce_coeffs(poly, p);
    if coeffs.is_empty() {
        return Err(Error::ZeroModP { p });
    }
    if eval_mod(&coeffs, rho, p) != 0 {
        return Err(Error::NotARoot { rho, p });
    }
    if omega == 1 {
        // nothing to lift; the simple-root hypothesis is only needed for
        // the correction steps below
        return Ok(BigInt::from(rho));
    }
    let deriv = reduce_coeffs(&poly.derivative(), p);
    let dval = eval_mod(&deriv, rho, p);
    if dval == 0 {
        return Err(Error::NotSimpleRoot { rho, p });
    }
    let inv = mod_inverse_u64(dval, p).expect("derivative value is a unit mod p");

    let big_p = BigInt::from(p);
    let mut r = BigInt::from(rho);
    let mut pk = big_p.clone(); // p^k, with P(r) == 0 (mod p^k)
    for _ in 1..omega {
        let t = poly.eval(&r) / &pk; // exact: p^k divides P(r)
        let t_mod = t.mod_floor(&big_p);
        let t_u = u64::try_from(t_mod).expect("residue fits in u64");
        let h = (p - (t_u * inv) % p) % p;
        r += BigInt::from(h) * &pk;
        pk *= p;
    }
    debug_assert!(poly.eval(&r).mod_floor(&pk).is_zero());
    Ok(r)
}

/// Hensel-lift the full linear factorization of a split-simple polynomial
/// to modulus p^omega. Each root lifts independently; the product identity
/// `(x - r_1) ... (x - r_d) == P (mod p^omega)` is re-checked exactly before
/// returning.
pub fn lift_factorization(poly: &IntPoly, p: u64, omega: u32) -> Result<SplitFactorization> {
    if !is_split_simple(poly, p)? {
        return Err(Error::NotSplitSimple { p });
    }
    let pp = PrimePower::new(p, omega)?;
    let roots: Vec<BigInt> = roots_mod_p(poly, p)?
        .into_iter()
        .map(|rho| hensel_lift_root(poly, rho, p, omega))
        .collect::<Result<_>>()?;

    let product = IntPoly::from_roots(roots.iter().cloned());
    let diff = &product - poly;
    let exact = diff
        .coeffs()
        .iter()
        .all(|c| c.mod_floor(&pp.modulus).is_zero());
    if !exact {
        return Err(Error::Internal(format!(
            "lifted factorization of {poly} does not reproduce it modulo {}",
            pp.modulus
        )));
    }
    Ok(SplitFactorization {
        poly: poly.clone(),
        pp,
        roots,
    })
}

/// Monic gcd of two monic polynomials in F_p, by the Euclidean algorithm.
/// Returns the constant 1 when they are coprime modulo p. Coefficients of
/// the result are normalized into `[0, p)`.
pub fn poly_gcd_mod_p(a: &IntPoly, b: &IntPoly, p: u64) -> Result<IntPoly> {
    if !is_prime_u64(p) {
        return Err(Error::NotPrime { n: p });
    }
    if !a.is_monic() || !b.is_monic() {
        return Err(Error::NotMonic);
    }
    let mut f = reduce_coeffs(a, p);
    let mut g = reduce_coeffs(b, p);
    while !g.is_empty() {
        let r = poly_rem_mod(&f, &g, p);
        f = g;
        g = r;
    }
    // normalize monic
    let lead = *f.last().expect("gcd of monic polynomials is nonzero");
    if lead != 1 {
        let inv = mod_inverse_u64(lead, p).expect("leading coefficient is a unit");
        for c in &mut f {
            *c = ((*c as u128 * inv as u128) % p as u128) as u64;
        }
    }
    Ok(IntPoly::from_coeffs(f))
}

/// Remainder of `f` by nonzero `g` in F_p, on reduced coefficient vectors.
fn poly_rem_mod(f: &[u64], g: &[u64], p: u64) -> Vec<u64> {
    let mut rem: Vec<u64> = f.to_vec();
    let dg = g.len() - 1;
    let lead_inv = mod_inverse_u64(*g.last().unwrap(), p).expect("unit leading coefficient");
    while rem.len() > dg {
        let q = ((rem.last().copied().unwrap() as u128 * lead_inv as u128) % p as u128) as u64;
        let shift = rem.len() - 1 - dg;
        if q != 0 {
            for (j, &gc) in g.iter().enumerate() {
                let sub = (q as u128 * gc as u128) % p as u128;
                let idx = shift + j;
                rem[idx] = ((rem[idx] as u128 + p as u128 - sub) % p as u128) as u64;
            }
        }
        rem.pop();
        while rem.last() == Some(&0) {
            rem.pop();
        }
    }
    rem
}

/// Degree bound linking the gcd modulo p to the resultant valuation:
/// `deg(gcd(A, B) mod p) <= nu_p(resultant)`.
#[derive(Clone, Debug)]
pub struct GcdDegreeReport {
    pub gcd_mod_p: IntPoly,
    pub deg_d: usize,
    pub omega: u32,
    pub holds: bool,
}

pub fn check_gcd_degree_bound(a: &IntPoly, b: &IntPoly, p: u64) -> Result<GcdDegreeReport> {
    let delta = resultant(a, b)?;
    if delta.is_zero() {
        return Err(Error::NotCoprime);
    }
    let omega = valuation_big(&delta, p);
    let gcd_mod_p = poly_gcd_mod_p(a, b, p)?;
    let deg_d = gcd_mod_p.degree().expect("gcd is nonzero");
    Ok(GcdDegreeReport {
        holds: deg_d <= omega as usize,
        gcd_mod_p,
        deg_d,
        omega,
    })
}
