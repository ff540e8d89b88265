//! Dense arbitrary-precision integer polynomials: parsing, printing,
//! evaluation and the elementary algebra every other module builds on.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A polynomial with integer coefficients.
///
/// Coefficients are stored in ascending order of degree: `coeffs[k]` is the
/// coefficient of `x^k`. The vector never has a trailing zero; the zero
/// polynomial is the empty vector, and its degree is `None` rather than a
/// sentinel integer.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    /// Build a polynomial from ascending coefficients, trimming trailing zeros.
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::new(vec![c.into()])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::from_coeffs([0, 1])
    }

    /// Convenience constructor from small ascending coefficients.
    pub fn from_coeffs<I>(coeffs: I) -> Self
    where
        I: IntoIterator,
        I::Item: Into<BigInt>,
    {
        Self::new(coeffs.into_iter().map(Into::into).collect())
    }

    /// The monic polynomial with the given integer roots.
    pub fn from_roots<I>(roots: I) -> Self
    where
        I: IntoIterator,
        I::Item: Into<BigInt>,
    {
        let mut acc = Self::constant(1);
        for r in roots {
            acc = &acc * &Self::new(vec![-r.into(), BigInt::one()]);
        }
        acc
    }

    /// `c * x^k`.
    pub fn monomial(c: impl Into<BigInt>, k: usize) -> Self {
        let c = c.into();
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        IntPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` standing in for the degree of the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Ascending coefficients, without trailing zeros.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(|c| c.is_one())
    }

    /// Exact value at an integer point, by Horner's rule.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_i64(&self, x: i64) -> BigInt {
        self.eval(&BigInt::from(x))
    }

    /// Formal derivative.
    pub fn derivative(&self) -> IntPoly {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    /// Content: the gcd of the coefficients, with content(0) = 0.
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Multiply every coefficient by `c`.
    pub fn scale(&self, c: &BigInt) -> IntPoly {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Divide every coefficient by `d` exactly. Panics if some coefficient
    /// is not divisible; callers are expected to divide by the content or a
    /// divisor of it.
    pub fn div_exact(&self, d: &BigInt) -> IntPoly {
        assert!(!d.is_zero(), "division by zero");
        Self::new(
            self.coeffs
                .iter()
                .map(|a| {
                    let (q, r) = a.div_rem(d);
                    assert!(r.is_zero(), "inexact coefficient division");
                    q
                })
                .collect(),
        )
    }

    /// Euclidean division by a monic divisor, exact over the integers.
    pub fn div_rem_monic(&self, divisor: &IntPoly) -> Result<(IntPoly, IntPoly)> {
        if !divisor.is_monic() {
            return Err(Error::NotMonic);
        }
        let dd = divisor.degree().expect("monic polynomial is nonzero");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let q = std::mem::take(&mut rem[k]);
            if q.is_zero() {
                continue;
            }
            for (j, b) in divisor.coeffs.iter().enumerate().take(dd) {
                let idx = k - dd + j;
                rem[idx] = std::mem::take(&mut rem[idx]) - &q * b;
            }
            quot[k - dd] = q;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// True when `divisor` divides `self` exactly (divisor monic).
    pub fn is_divisible_by(&self, divisor: &IntPoly) -> Result<bool> {
        Ok(self.div_rem_monic(divisor)?.1.is_zero())
    }
}

/// gcd(x^a - 1, x^b - 1) = x^gcd(a,b) - 1, computed by running the integer
/// Euclidean algorithm on the exponents: the polynomial remainder of
/// x^a - 1 by x^b - 1 is x^(a mod b) - 1, so the two recursions coincide.
pub fn pow_minus_one_gcd(a: u64, b: u64) -> IntPoly {
    assert!(a >= 1 && b >= 1, "exponents must be positive");
    let (mut a, mut b) = (a, b);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    let mut coeffs = vec![BigInt::zero(); a as usize + 1];
    coeffs[0] = BigInt::from(-1);
    coeffs[a as usize] = BigInt::one();
    IntPoly::new(coeffs)
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPoly::new(coeffs)
    }
}

impl fmt::Display for IntPoly {
    /// Prints descending powers in the compact form the parser accepts,
    /// e.g. `x^3-5x^2+10x-12`; the zero polynomial prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            first = false;
            let mag = c.abs();
            if k == 0 {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}")?;
                }
                write!(f, "x")?;
                if k >= 2 {
                    write!(f, "^{k}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

impl FromStr for IntPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<IntPoly> {
        parse_poly(s)
    }
}

const MAX_EXPONENT: usize = 10_000;

/// Parse the ASCII polynomial grammar:
///
/// ```text
/// poly := ['+'|'-'] term (('+'|'-') term)*
/// term := integer ['*'] [var] | var
/// var  := 'x' ['^' nonneg-integer]
/// ```
///
/// Whitespace is ignored, implicit coefficients and exponents are supported
/// and repeated powers are summed. Errors carry the byte offset into the
/// original string.
fn parse_poly(text: &str) -> Result<IntPoly> {
    let toks: Vec<(usize, char)> = text
        .char_indices()
        .filter(|(_, c)| !c.is_whitespace())
        .collect();
    let err = |position: usize, message: &str| Error::Parse {
        position,
        message: message.to_string(),
    };
    let end = text.len();
    if toks.is_empty() {
        return Err(err(0, "empty polynomial"));
    }

    let mut coeffs: Vec<BigInt> = Vec::new();
    let mut i = 0usize;
    loop {
        // sign
        let mut negative = false;
        if let Some(&(_, c)) = toks.get(i) {
            if c == '+' || c == '-' {
                negative = c == '-';
                i += 1;
            }
        }

        // optional integer part
        let mut digits = String::new();
        while let Some(&(_, c)) = toks.get(i) {
            if c.is_ascii_digit() {
                digits.push(c);
                i += 1;
            } else {
                break;
            }
        }
        let has_number = !digits.is_empty();

        // optional '*', only meaningful between a number and 'x'
        let mut starred = false;
        if has_number {
            if let Some(&(_, '*')) = toks.get(i) {
                starred = true;
                i += 1;
            }
        }

        // optional variable part
        let mut exponent: Option<usize> = None;
        if let Some(&(_, 'x')) = toks.get(i) {
            i += 1;
            if let Some(&(_, '^')) = toks.get(i) {
                i += 1;
                let exp_pos = toks.get(i).map_or(end, |&(p, _)| p);
                let mut exp_digits = String::new();
                while let Some(&(_, c)) = toks.get(i) {
                    if c.is_ascii_digit() {
                        exp_digits.push(c);
                        i += 1;
                    } else {
                        break;
                    }
                }
                if exp_digits.is_empty() {
                    return Err(err(exp_pos, "expected exponent digits after '^'"));
                }
                let e: usize = exp_digits
                    .parse()
                    .map_err(|_| err(exp_pos, "exponent too large"))?;
                if e > MAX_EXPONENT {
                    return Err(err(exp_pos, "exponent too large"));
                }
                exponent = Some(e);
            } else {
                exponent = Some(1);
            }
        } else if starred {
            let pos = toks.get(i).map_or(end, |&(p, _)| p);
            return Err(err(pos, "expected 'x' after '*'"));
        }

        if !has_number && exponent.is_none() {
            let pos = toks.get(i).map_or(end, |&(p, _)| p);
            return Err(err(pos, "expected a term"));
        }

        let mut coeff = if has_number {
            BigInt::parse_bytes(digits.as_bytes(), 10).expect("digits are valid")
        } else {
            BigInt::one()
        };
        if negative {
            coeff = -coeff;
        }
        let k = exponent.unwrap_or(0);
        if coeffs.len() <= k {
            coeffs.resize(k + 1, BigInt::zero());
        }
        coeffs[k] += coeff;

        match toks.get(i) {
            None => break,
            Some(&(_, '+')) | Some(&(_, '-')) => continue,
            Some(&(p, _)) => return Err(err(p, "expected '+' or '-'")),
        }
    }
    Ok(IntPoly::new(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> IntPoly {
        s.parse().unwrap()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(p("x^3-5x^2+10x-12"), IntPoly::from_coeffs([-12, 10, -5, 1]));
        assert_eq!(p("0"), IntPoly::zero());
        assert_eq!(p("x^2 - 18x + 108"), IntPoly::from_coeffs([108, -18, 1]));
    }

    #[test]
    fn parse_forms() {
        assert_eq!(p("3*x^2"), IntPoly::from_coeffs([0, 0, 3]));
        assert_eq!(p("-x"), IntPoly::from_coeffs([0, -1]));
        assert_eq!(p("+x^2+3"), IntPoly::from_coeffs([3, 0, 1]));
        assert_eq!(p("x + x"), IntPoly::from_coeffs([0, 2])); // repeated powers sum
        assert_eq!(p("2x - 2x + 7"), IntPoly::constant(7));
        assert_eq!(p("  42  "), IntPoly::constant(42));
        assert_eq!(p("x^10"), IntPoly::monomial(1, 10));
    }

    #[test]
    fn parse_error_positions() {
        let pos = |s: &str| match s.parse::<IntPoly>() {
            Err(Error::Parse { position, .. }) => position,
            other => panic!("expected parse error for {s:?}, got {other:?}"),
        };
        assert_eq!(pos(""), 0);
        assert_eq!(pos("x^"), 2);
        assert_eq!(pos("3*y"), 2);
        assert_eq!(pos("x+"), 2);
        assert_eq!(pos("x^2y"), 3);
        assert_eq!(pos("x ^ &"), 4);
    }

    #[test]
    fn display_examples() {
        assert_eq!(p("x^3-5x^2+10x-12").to_string(), "x^3-5x^2+10x-12");
        assert_eq!(IntPoly::zero().to_string(), "0");
        assert_eq!(IntPoly::from_coeffs([14, -2]).to_string(), "-2x+14");
        assert_eq!(IntPoly::from_coeffs([0, -1]).to_string(), "-x");
        assert_eq!(IntPoly::from_coeffs([-7]).to_string(), "-7");
    }

    #[test]
    fn eval_examples() {
        assert_eq!(p("x^3-5x^2+10x-12").eval_i64(0), BigInt::from(-12));
        assert_eq!(p("x^2+3").eval_i64(7), BigInt::from(52));
        assert_eq!(p("x^2-9x+16").eval_i64(0), BigInt::from(16));
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(p("x^2+3").derivative(), p("2x"));
        assert_eq!(IntPoly::constant(7).derivative(), IntPoly::zero());
        assert_eq!(p("x^3-5x^2+10x-12").derivative(), p("3x^2-10x+10"));
    }

    #[test]
    fn content_examples() {
        assert_eq!(p("2x-10").content(), BigInt::from(2));
        assert_eq!(p("-2x+14").content(), BigInt::from(2));
        assert_eq!(IntPoly::zero().content(), BigInt::zero());
    }

    #[test]
    fn pow_minus_one_gcd_examples() {
        assert_eq!(pow_minus_one_gcd(6, 4), p("x^2-1"));
        assert_eq!(pow_minus_one_gcd(5, 5), p("x^5-1"));
        assert_eq!(pow_minus_one_gcd(7, 3), p("x-1"));
    }

    #[test]
    fn pow_minus_one_gcd_divides_both() {
        for (a, b) in [(6u64, 4u64), (12, 8), (9, 6), (10, 15), (7, 3)] {
            let g = pow_minus_one_gcd(a, b);
            let xa = &IntPoly::monomial(1, a as usize) - &IntPoly::constant(1);
            let xb = &IntPoly::monomial(1, b as usize) - &IntPoly::constant(1);
            assert!(xa.is_divisible_by(&g).unwrap());
            assert!(xb.is_divisible_by(&g).unwrap());
        }
    }

    #[test]
    fn from_roots_expands() {
        assert_eq!(IntPoly::from_roots([5, 27]), p("x^2-32x+135"));
        assert_eq!(IntPoly::from_roots::<[i64; 0]>([]), IntPoly::constant(1));
    }

    #[test]
    fn monic_division() {
        let a = p("x^3-5x^2+10x-12");
        let b = p("x^2+3");
        let (q, r) = a.div_rem_monic(&b).unwrap();
        assert_eq!(&(&q * &b) + &r, a);
        assert_eq!(q, p("x-5"));
        assert_eq!(r, p("7x+3"));
        assert!(p("x^2-1").div_rem_monic(&p("2x")).is_err());
    }

    fn arb_poly(max_deg: usize, max_coeff: i64) -> impl Strategy<Value = IntPoly> {
        prop::collection::vec(-max_coeff..=max_coeff, 0..=max_deg + 1)
            .prop_map(IntPoly::from_coeffs)
    }

    proptest! {
        #[test]
        fn format_parse_round_trip(poly in arb_poly(8, 1_000_000)) {
            let reparsed: IntPoly = poly.to_string().parse().unwrap();
            prop_assert_eq!(reparsed, poly);
        }

        #[test]
        fn eval_is_a_ring_homomorphism(
            a in arb_poly(6, 50),
            b in arb_poly(6, 50),
            n in -100i64..=100,
        ) {
            let x = BigInt::from(n);
            prop_assert_eq!((&a + &b).eval(&x), a.eval(&x) + b.eval(&x));
            prop_assert_eq!((&a * &b).eval(&x), a.eval(&x) * b.eval(&x));
        }

        #[test]
        fn content_scales(poly in arb_poly(6, 100), c in -20i64..=20) {
            let scaled = poly.scale(&BigInt::from(c));
            prop_assert_eq!(scaled.content(), BigInt::from(c).abs() * poly.content());
        }
    }
}
