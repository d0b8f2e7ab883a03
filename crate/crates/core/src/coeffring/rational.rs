use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::field::Field;
use super::integers::bit_size;
use crate::error::{domain, Result};

/// The field of rational numbers.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

/// Parses `"n"` or `"n/d"` with optional sign; the result is in lowest terms.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || domain(format!("malformed rational number `{s}`"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let valid = |t: &str, signed: bool| {
        let t = if signed {
            t.strip_prefix(['-', '+']).unwrap_or(t)
        } else {
            t
        };
        !t.is_empty() && t.bytes().all(|c| c.is_ascii_digit())
    };
    if !valid(n, true) || !valid(d, false) {
        return Err(bad());
    }
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(domain(format!("zero denominator in `{s}`")));
    }
    Ok(BigRational::new(n, d))
}

pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Bits of numerator plus bits of denominator.
pub fn rational_bits(q: &BigRational) -> u64 {
    bit_size(q.numer().magnitude()) + bit_size(q.denom().magnitude())
}

/// Clears denominators and content: the primitive integer vector
/// proportional to `coeffs`, first nonzero entry positive.
pub fn primitive_integer_vector(coeffs: &[BigRational]) -> Vec<BigInt> {
    let lcm = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coeffs.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return ints;
    }
    let sign = ints
        .iter()
        .find(|c| !c.is_zero())
        .map(|c| c.sign())
        .unwrap_or(Sign::Plus);
    ints.into_iter()
        .map(|c| {
            let c = c / &g;
            if sign == Sign::Minus {
                -c
            } else {
                c
            }
        })
        .collect()
}

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn from_bigint(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }
    fn characteristic(&self) -> BigUint {
        BigUint::zero()
    }
    fn size_bits(&self, a: &BigRational) -> u64 {
        rational_bits(a)
    }
    fn canonical_scale(&self, coeffs: &[BigRational]) -> Vec<BigRational> {
        primitive_integer_vector(coeffs)
            .into_iter()
            .map(BigRational::from_integer)
            .collect()
    }
    fn format_elem(&self, a: &BigRational) -> String {
        format_rational(a)
    }
    fn parse_elem(&self, s: &str) -> Result<BigRational> {
        parse_rational(s)
    }
    fn pow(&self, a: &BigRational, e: &BigUint) -> BigRational {
        if a.is_one() || a.is_zero() && !e.is_zero() {
            return a.clone();
        }
        if -a == BigRational::one() {
            return if e.bit(0) { a.clone() } else { BigRational::one() };
        }
        let e = u32::try_from(e).expect("rational power with exponent beyond u32");
        num_traits::pow::Pow::pow(a, e)
    }
}

/// Sign of a rational as -1, 0 or 1.
pub fn signum(q: &BigRational) -> i8 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}
