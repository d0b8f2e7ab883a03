use std::fmt;
use std::hash::Hash;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::coeffring::integers::binomial_big;
use crate::error::Result;

/// A coefficient field together with its element type.
///
/// Field values are cheap to clone (zero-sized or reference counted) and all
/// element operations go through `&self`, so a runtime description such as a
/// modulus can travel with the arithmetic.
#[allow(clippy::wrong_self_convention)]
pub trait Field: Clone + fmt::Debug + PartialEq + Send + Sync {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Hash + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// Image of an integer under the canonical ring map.
    fn from_bigint(&self, n: &BigInt) -> Self::Elem;
    /// `0` for characteristic zero.
    fn characteristic(&self) -> BigUint;

    /// Bits needed to write the element down.
    fn size_bits(&self, a: &Self::Elem) -> u64;

    /// Scales `coeffs` by the unique nonzero constant that makes the vector
    /// canonical; vectors differing by a nonzero scalar map to the same output.
    fn canonical_scale(&self, coeffs: &[Self::Elem]) -> Vec<Self::Elem>;

    fn format_elem(&self, a: &Self::Elem) -> String;
    fn parse_elem(&self, s: &str) -> Result<Self::Elem>;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_bigint(&BigInt::from(n))
    }

    fn from_biguint(&self, n: &BigUint) -> Self::Elem {
        self.from_bigint(&BigInt::from(n.clone()))
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    /// Square-and-multiply. Over the rationals the caller is responsible for
    /// keeping the exponent small.
    fn pow(&self, a: &Self::Elem, e: &BigUint) -> Self::Elem {
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    fn pow_u64(&self, a: &Self::Elem, e: u64) -> Self::Elem {
        self.pow(a, &BigUint::from(e))
    }

    /// `C(n, k)` mapped into the field.
    fn binomial(&self, n: &BigUint, k: u64) -> Self::Elem {
        self.from_biguint(&binomial_big(n, k))
    }

    fn is_char_zero(&self) -> bool {
        self.characteristic().is_zero()
    }

    /// `0^0 = 1`, `0^e = 0` for `e > 0`; otherwise [`Field::pow`].
    fn pow_with_zero(&self, a: &Self::Elem, e: &BigUint) -> Self::Elem {
        if self.is_zero(a) {
            if e.is_zero() {
                self.one()
            } else {
                self.zero()
            }
        } else if e.is_one() {
            a.clone()
        } else {
            self.pow(a, e)
        }
    }
}
