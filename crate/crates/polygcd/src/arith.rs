//! Small integer helpers shared across the crate: primality by trial
//! division, p-adic valuations, deterministic Miller-Rabin for u64.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Trial-division primality test. Intended for the small primes that occur
/// as factors of resultants; not for cryptographic sizes.
pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Deterministic Miller-Rabin for u64 (the first twelve primes are a
/// complete witness set below 3.3 * 10^24).
pub(crate) fn miller_rabin_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let pow = |mut base: u64, mut exp: u64| {
        let mut acc = 1u64;
        base %= n;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mul(acc, base);
            }
            base = mul(base, base);
            exp >>= 1;
        }
        acc
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// p-adic valuation of a nonzero integer.
pub(crate) fn valuation_big(n: &BigInt, p: u64) -> u32 {
    assert!(!n.is_zero(), "valuation of zero is infinite");
    let p = BigInt::from(p);
    let mut rest = n.abs();
    let mut v = 0u32;
    loop {
        let (q, r) = num_integer::Integer::div_rem(&rest, &p);
        if !r.is_zero() {
            return v;
        }
        rest = q;
        v += 1;
    }
}

/// Largest power of p dividing n (n >= 1), as a big integer.
pub(crate) fn p_part_big(n: &BigInt, p: u64) -> BigInt {
    BigInt::from(p).pow(valuation_big(n, p))
}

/// p^k as u64, or None on overflow.
pub(crate) fn checked_pow_u64(p: u64, k: u32) -> Option<u64> {
    p.checked_pow(k)
}

/// Modular inverse of a modulo m (m >= 2), when gcd(a, m) = 1.
pub(crate) fn mod_inverse_u64(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r.abs() != 1 {
        return None;
    }
    // old_r may be -1 when the loop exits on a negative remainder chain
    if old_r == -1 {
        old_s = -old_s;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn trial_division_primality() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(primes, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]);
    }

    #[test]
    fn miller_rabin_agrees_with_trial_division() {
        for n in 0..2000u64 {
            assert_eq!(miller_rabin_u64(n), is_prime_u64(n), "n = {n}");
        }
        assert!(miller_rabin_u64(1_000_003));
        assert!(!miller_rabin_u64(1_000_003u64 * 1_000_033));
    }

    #[test]
    fn valuations() {
        assert_eq!(valuation_big(&BigInt::from(40131), 7), 3);
        assert_eq!(valuation_big(&BigInt::from(-12), 2), 2);
        assert_eq!(valuation_big(&BigInt::from(5), 2), 0);
        assert_eq!(p_part_big(&BigInt::from(819), 13), BigInt::from(13));
    }

    #[test]
    fn modular_inverse() {
        assert_eq!(mod_inverse_u64(2, 3), Some(2));
        assert_eq!(mod_inverse_u64(3, 7), Some(5));
        assert_eq!(mod_inverse_u64(4, 8), None);
        for m in 2..50u64 {
            for a in 1..m {
                if let Some(inv) = mod_inverse_u64(a, m) {
                    assert_eq!(a * inv % m, 1, "a = {a}, m = {m}");
                }
            }
        }
    }
}
