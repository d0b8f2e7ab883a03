//! Finite fields `F_{p^s} = F_p[xi]/<phi>` with an arbitrary-precision prime `p`.

use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::field::Field;
use super::integers::{bit_size, factorize, is_probable_prime, lucas_binomial_unchecked};
use crate::error::{domain, Error, Result};

/// An element of `F_{p^s}`: coordinates in the basis `1, xi, ..., xi^{s-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GfElem(pub Vec<BigUint>);

#[derive(Debug, PartialEq, Eq)]
struct GfInner {
    p: BigUint,
    s: usize,
    /// Monic, `s + 1` coefficients, lowest degree first.
    phi: Vec<BigUint>,
}

/// The field `F_p[xi]/<phi>`.
#[derive(Clone, PartialEq, Eq)]
pub struct GaloisField {
    inner: Arc<GfInner>,
}

impl fmt::Debug for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.inner.p, self.inner.s)
    }
}

impl GaloisField {
    /// The prime field `F_p`. Fails if `p` is not a probable prime.
    pub fn prime(p: BigUint) -> Result<Self> {
        if !is_probable_prime(&p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self::prime_unchecked(p))
    }

    pub(crate) fn prime_unchecked(p: BigUint) -> Self {
        GaloisField {
            inner: Arc::new(GfInner {
                p,
                s: 1,
                phi: vec![BigUint::zero(), BigUint::one()],
            }),
        }
    }

    /// `F_p[xi]/<phi>` with `phi` given lowest degree first. `phi` must be
    /// monic of degree at least one; its irreducibility is verified.
    pub fn new(p: BigUint, phi: Vec<BigUint>) -> Result<Self> {
        if !is_probable_prime(&p) {
            return Err(Error::NotPrime(p));
        }
        let phi: Vec<BigUint> = phi.into_iter().map(|c| c % &p).collect();
        let phi = fp::trim(phi);
        if phi.len() < 2 {
            return Err(domain("defining polynomial must have degree at least 1"));
        }
        if !phi.last().unwrap().is_one() {
            return Err(domain("defining polynomial must be monic"));
        }
        if !fp::is_irreducible(&phi, &p) {
            return Err(Error::Reducible { p });
        }
        let s = phi.len() - 1;
        Ok(GaloisField {
            inner: Arc::new(GfInner { p, s, phi }),
        })
    }

    pub fn p(&self) -> &BigUint {
        &self.inner.p
    }

    pub fn degree(&self) -> usize {
        self.inner.s
    }

    pub fn phi(&self) -> &[BigUint] {
        &self.inner.phi
    }

    /// Field order `q = p^s`.
    pub fn order(&self) -> BigUint {
        num_traits::pow(self.inner.p.clone(), self.inner.s)
    }

    /// Embeds a residue of the prime subfield.
    pub fn from_residue(&self, r: &BigUint) -> GfElem {
        let mut v = vec![BigUint::zero(); self.inner.s];
        v[0] = r % &self.inner.p;
        GfElem(v)
    }

    /// The generator `xi` (equal to the residue of `-phi_0` when `s = 1`).
    pub fn generator(&self) -> GfElem {
        if self.inner.s == 1 {
            let c = &self.inner.phi[0];
            return self.from_residue(&((&self.inner.p - c) % &self.inner.p));
        }
        let mut v = vec![BigUint::zero(); self.inner.s];
        v[1] = BigUint::one();
        GfElem(v)
    }

    /// A uniformly random element.
    pub fn random_elem<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> GfElem {
        use num_bigint::RandBigInt;
        GfElem(
            (0..self.inner.s)
                .map(|_| rng.gen_biguint_below(&self.inner.p))
                .collect(),
        )
    }

    /// Enumerates all elements; only sensible for tiny fields.
    pub fn elements(&self) -> Vec<GfElem> {
        let p = self.inner.p.to_u64().expect("field too large to enumerate");
        let mut out = vec![vec![]];
        for _ in 0..self.inner.s {
            out = out
                .into_iter()
                .flat_map(|v: Vec<BigUint>| {
                    (0..p).map(move |c| {
                        let mut w = v.clone();
                        w.push(BigUint::from(c));
                        w
                    })
                })
                .collect();
        }
        out.into_iter().map(GfElem).collect()
    }

    fn reduce(&self, mut prod: Vec<BigUint>) -> GfElem {
        let p = &self.inner.p;
        let s = self.inner.s;
        let phi = &self.inner.phi;
        for d in (s..prod.len()).rev() {
            let c = std::mem::take(&mut prod[d]) % p;
            if c.is_zero() {
                continue;
            }
            for (i, ph) in phi.iter().enumerate().take(s) {
                let sub = &c * ph % p;
                let slot = &mut prod[d - s + i];
                *slot = (&*slot + p - sub) % p;
            }
        }
        prod.truncate(s);
        prod.resize(s, BigUint::zero());
        GfElem(prod.into_iter().map(|c| c % p).collect())
    }
}

impl Field for GaloisField {
    type Elem = GfElem;

    fn zero(&self) -> GfElem {
        GfElem(vec![BigUint::zero(); self.inner.s])
    }

    fn one(&self) -> GfElem {
        self.from_residue(&BigUint::one())
    }

    fn is_zero(&self, a: &GfElem) -> bool {
        a.0.iter().all(Zero::is_zero)
    }

    fn add(&self, a: &GfElem, b: &GfElem) -> GfElem {
        let p = &self.inner.p;
        GfElem(
            a.0.iter()
                .zip(&b.0)
                .map(|(x, y)| {
                    let s = x + y;
                    if &s >= p {
                        s - p
                    } else {
                        s
                    }
                })
                .collect(),
        )
    }

    fn sub(&self, a: &GfElem, b: &GfElem) -> GfElem {
        let p = &self.inner.p;
        GfElem(
            a.0.iter()
                .zip(&b.0)
                .map(|(x, y)| if x >= y { x - y } else { x + p - y })
                .collect(),
        )
    }

    fn neg(&self, a: &GfElem) -> GfElem {
        let p = &self.inner.p;
        GfElem(
            a.0.iter()
                .map(|x| if x.is_zero() { x.clone() } else { p - x })
                .collect(),
        )
    }

    fn mul(&self, a: &GfElem, b: &GfElem) -> GfElem {
        let p = &self.inner.p;
        if self.inner.s == 1 {
            return GfElem(vec![&a.0[0] * &b.0[0] % p]);
        }
        let mut prod = vec![BigUint::zero(); 2 * self.inner.s - 1];
        for (i, x) in a.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.0.iter().enumerate() {
                prod[i + j] += x * y;
            }
        }
        self.reduce(prod)
    }

    fn inv(&self, a: &GfElem) -> Option<GfElem> {
        if self.is_zero(a) {
            return None;
        }
        let p = &self.inner.p;
        if self.inner.s == 1 {
            let e = BigInt::from(a.0[0].clone()).extended_gcd(&BigInt::from(p.clone()));
            let x = e.x.mod_floor(&BigInt::from(p.clone()));
            return Some(GfElem(vec![x.to_biguint().unwrap()]));
        }
        let e = self.order() - 2u32;
        Some(self.pow(a, &e))
    }

    fn from_bigint(&self, n: &BigInt) -> GfElem {
        let p = BigInt::from(self.inner.p.clone());
        let r = n.mod_floor(&p).to_biguint().unwrap();
        self.from_residue(&r)
    }

    fn characteristic(&self) -> BigUint {
        self.inner.p.clone()
    }

    fn size_bits(&self, a: &GfElem) -> u64 {
        a.0.iter().map(bit_size).sum()
    }

    fn canonical_scale(&self, coeffs: &[GfElem]) -> Vec<GfElem> {
        match coeffs.iter().find(|c| !self.is_zero(c)) {
            None => coeffs.to_vec(),
            Some(lead) => {
                let inv = self.inv(lead).unwrap();
                coeffs.iter().map(|c| self.mul(c, &inv)).collect()
            }
        }
    }

    fn format_elem(&self, a: &GfElem) -> String {
        if self.inner.s == 1 {
            a.0[0].to_string()
        } else {
            let parts: Vec<String> = a.0.iter().map(ToString::to_string).collect();
            format!("[{}]", parts.join(","))
        }
    }

    fn parse_elem(&self, s: &str) -> Result<GfElem> {
        let s = s.trim();
        if let Some(body) = s.strip_prefix('[').and_then(|b| b.strip_suffix(']')) {
            let coords: Vec<&str> = body.split(',').map(str::trim).collect();
            if coords.len() != self.inner.s {
                return Err(domain(format!(
                    "field element `{s}` needs exactly {} coordinates",
                    self.inner.s
                )));
            }
            let mut out = Vec::with_capacity(coords.len());
            for c in coords {
                let q = super::rational::parse_rational(c)?;
                out.push(self.rational_to_residue(&q)?);
            }
            return Ok(GfElem(out));
        }
        let q = super::rational::parse_rational(s)?;
        Ok(self.from_residue(&self.rational_to_residue(&q)?))
    }

    fn pow(&self, a: &GfElem, e: &BigUint) -> GfElem {
        if self.inner.s == 1 {
            return GfElem(vec![a.0[0].modpow(e, &self.inner.p)]);
        }
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    fn binomial(&self, n: &BigUint, k: u64) -> GfElem {
        self.from_residue(&lucas_binomial_unchecked(n, &BigUint::from(k), &self.inner.p))
    }
}

impl GaloisField {
    fn rational_to_residue(&self, q: &num_rational::BigRational) -> Result<BigUint> {
        let p = BigInt::from(self.inner.p.clone());
        let d = q.denom().mod_floor(&p);
        if d.is_zero() {
            return Err(domain(format!("denominator of {q} vanishes mod {p}")));
        }
        let n = q.numer().mod_floor(&p);
        let dinv = d.extended_gcd(&p).x.mod_floor(&p);
        Ok((n * dinv).mod_floor(&p).to_biguint().unwrap())
    }

    /// Residue of a rational in the prime field, if its denominator is a unit.
    pub fn residue_of(&self, q: &num_rational::BigRational) -> Option<GfElem> {
        self.rational_to_residue(q).ok().map(|r| self.from_residue(&r))
    }
}

/// Dense polynomial arithmetic over `F_p` on coefficient vectors, lowest
/// degree first. Used to validate defining polynomials.
mod fp {
    use super::*;

    pub fn trim(mut a: Vec<BigUint>) -> Vec<BigUint> {
        while a.last().is_some_and(Zero::is_zero) {
            a.pop();
        }
        a
    }

    fn inv(a: &BigUint, p: &BigUint) -> BigUint {
        a.modpow(&(p - 2u32), p)
    }

    pub fn rem(a: &[BigUint], b: &[BigUint], p: &BigUint) -> Vec<BigUint> {
        let mut r = trim(a.to_vec());
        let lead_inv = inv(b.last().unwrap(), p);
        let db = b.len() - 1;
        while r.len() > db {
            let shift = r.len() - 1 - db;
            let c = r.last().unwrap() * &lead_inv % p;
            for (i, bc) in b.iter().enumerate() {
                let sub = &c * bc % p;
                let slot = &mut r[shift + i];
                *slot = (&*slot + p - sub) % p;
            }
            r = trim(r);
        }
        r
    }

    fn mulmod(a: &[BigUint], b: &[BigUint], m: &[BigUint], p: &BigUint) -> Vec<BigUint> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut prod = vec![BigUint::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                prod[i + j] = (&prod[i + j] + x * y) % p;
            }
        }
        rem(&prod, m, p)
    }

    fn powmod(base: &[BigUint], e: &BigUint, m: &[BigUint], p: &BigUint) -> Vec<BigUint> {
        let mut acc = vec![BigUint::one()];
        for i in (0..e.bits()).rev() {
            acc = mulmod(&acc, &acc, m, p);
            if e.bit(i) {
                acc = mulmod(&acc, base, m, p);
            }
        }
        acc
    }

    fn gcd(a: &[BigUint], b: &[BigUint], p: &BigUint) -> Vec<BigUint> {
        let mut a = trim(a.to_vec());
        let mut b = trim(b.to_vec());
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    fn sub(a: &[BigUint], b: &[BigUint], p: &BigUint) -> Vec<BigUint> {
        let n = a.len().max(b.len());
        let zero = BigUint::zero();
        let out = (0..n)
            .map(|i| {
                let x = a.get(i).unwrap_or(&zero);
                let y = b.get(i).unwrap_or(&zero);
                (x + p - y) % p
            })
            .collect();
        trim(out)
    }

    /// X^(p^i) mod phi.
    fn frobenius_power(phi: &[BigUint], p: &BigUint, i: usize) -> Vec<BigUint> {
        let mut x = rem(&[BigUint::zero(), BigUint::one()], phi, p);
        for _ in 0..i {
            x = powmod(&x, p, phi, p);
        }
        x
    }

    /// Rabin's test: `X^{p^s} = X mod phi` and `gcd(X^{p^{s/q}} - X, phi) = 1`
    /// for every prime `q | s`.
    pub fn is_irreducible(phi: &[BigUint], p: &BigUint) -> bool {
        let s = phi.len() - 1;
        if s == 1 {
            return true;
        }
        let x = rem(&[BigUint::zero(), BigUint::one()], phi, p);
        if !sub(&frobenius_power(phi, p, s), &x, p).is_empty() {
            return false;
        }
        for (q, _) in factorize(&BigUint::from(s)) {
            let q = q.to_usize().unwrap();
            let h = sub(&frobenius_power(phi, p, s / q), &x, p);
            let g = gcd(&h, phi, p);
            if g.len() != 1 {
                return false;
            }
        }
        true
    }
}

impl From<GfElem> for Vec<BigUint> {
    fn from(e: GfElem) -> Self {
        e.0
    }
}

/// Sign-aware residue helper used by tests and callers holding integers.
pub fn residue_of_bigint(n: &BigInt, p: &BigUint) -> BigUint {
    let pb = BigInt::from_biguint(Sign::Plus, p.clone());
    n.mod_floor(&pb).to_biguint().unwrap()
}
