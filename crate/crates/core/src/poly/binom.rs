use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::coeffring::Field;
use crate::error::{Error, Result};
use crate::poly::dense::DensePoly;
use crate::poly::lacunary::{normalize_terms, Term};

/// Default degree cap of the expansion oracle.
pub const DEFAULT_ORACLE_CAP: u64 = 1_000_000;

/// `sum_j a_j X^alpha_j (u X^d + v)^beta_j` over a declared base `(u, v, d)`.
#[derive(Clone, Debug, PartialEq)]
pub struct BinomExprPoly<F: Field> {
    field: F,
    u: F::Elem,
    v: F::Elem,
    d: BigUint,
    terms: Vec<Term<F::Elem>>,
}

impl<F: Field> BinomExprPoly<F> {
    /// Base `uX + v`; terms are normalized.
    pub fn new(field: F, u: F::Elem, v: F::Elem, terms: Vec<Term<F::Elem>>) -> Self {
        Self::with_degree(field, u, v, BigUint::one(), terms)
    }

    /// Base `uX^d + v` with `d >= 1`.
    pub fn with_degree(field: F, u: F::Elem, v: F::Elem, d: BigUint, terms: Vec<Term<F::Elem>>) -> Self {
        assert!(!d.is_zero(), "base exponent must be at least one");
        BinomExprPoly { field, u, v, d, terms }.normalize()
    }

    /// Keeps the term list untouched.
    pub fn from_raw_terms(field: F, u: F::Elem, v: F::Elem, d: BigUint, terms: Vec<Term<F::Elem>>) -> Self {
        BinomExprPoly { field, u, v, d, terms }
    }

    /// Merges duplicate exponent pairs, drops zero coefficients, sorts by
    /// `(alpha, beta)`. With a zero base (`u = v = 0`) every term with
    /// `beta > 0` vanishes (`0^0 = 1`).
    pub fn normalize(&self) -> Self {
        let f = &self.field;
        let mut terms = normalize_terms(f, &self.terms);
        if f.is_zero(&self.u) && f.is_zero(&self.v) {
            terms.retain(|t| t.beta.is_zero());
        }
        BinomExprPoly {
            field: f.clone(),
            u: self.u.clone(),
            v: self.v.clone(),
            d: self.d.clone(),
            terms,
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn u(&self) -> &F::Elem {
        &self.u
    }
    pub fn v(&self) -> &F::Elem {
        &self.v
    }
    pub fn base_degree(&self) -> &BigUint {
        &self.d
    }
    pub fn terms(&self) -> &[Term<F::Elem>] {
        &self.terms
    }
    pub fn len(&self) -> usize {
        self.terms.len()
    }
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Same base, different terms.
    pub fn with_terms(&self, terms: Vec<Term<F::Elem>>) -> Self {
        BinomExprPoly {
            field: self.field.clone(),
            u: self.u.clone(),
            v: self.v.clone(),
            d: self.d.clone(),
            terms,
        }
        .normalize()
    }

    pub fn alphas(&self) -> Vec<BigUint> {
        self.terms.iter().map(|t| t.alpha.clone()).collect()
    }

    /// `max_j (alpha_j + d * beta_j)`, the degree of the expansion when no
    /// cancellation occurs.
    pub fn max_degree(&self) -> BigUint {
        self.terms
            .iter()
            .map(|t| &t.alpha + &self.d * &t.beta)
            .max()
            .unwrap_or_default()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert!(
            self.u == other.u && self.v == other.v && self.d == other.d,
            "adding expressions over different bases"
        );
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        self.with_terms(terms)
    }

    pub fn neg(&self) -> Self {
        let f = &self.field;
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                coeff: f.neg(&t.coeff),
                alpha: t.alpha.clone(),
                beta: t.beta.clone(),
            })
            .collect();
        self.with_terms(terms)
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = &self.field;
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                coeff: f.mul(&t.coeff, c),
                alpha: t.alpha.clone(),
                beta: t.beta.clone(),
            })
            .collect();
        self.with_terms(terms)
    }
}

/// Dense expansion of `sum_j a_j X^alpha_j (uX^d + v)^beta_j` by direct
/// binomial expansion. Refuses (never truncates) when the degree would exceed
/// `cap`.
pub fn expand_oracle<F: Field>(p: &BinomExprPoly<F>, cap: u64) -> Result<DensePoly<F>> {
    let f = p.field();
    let max = p.max_degree();
    if max > BigUint::from(cap) {
        return Err(Error::DegreeCap { degree: max, cap });
    }
    let n = max.to_usize().unwrap();
    let d = p.base_degree().to_usize().unwrap();
    let mut out = vec![f.zero(); n + 1];
    for t in p.terms() {
        let alpha = t.alpha.to_usize().unwrap();
        let beta = t.beta.to_u64().unwrap();
        // row of C(beta, i) u^i v^(beta - i), built iteratively
        let mut binom_int = BigUint::one();
        let mut upow = f.one();
        let vpows: Vec<F::Elem> = {
            let mut v = Vec::with_capacity(beta as usize + 1);
            let mut acc = f.one();
            for _ in 0..=beta {
                v.push(acc.clone());
                acc = f.mul(&acc, p.v());
            }
            v
        };
        for i in 0..=beta {
            let binom = f.from_biguint(&binom_int);
            let c = f.mul(&f.mul(&binom, &upow), &vpows[(beta - i) as usize]);
            let idx = alpha + d * i as usize;
            out[idx] = f.add(&out[idx], &f.mul(&t.coeff, &c));
            upow = f.mul(&upow, p.u());
            binom_int = binom_int * (beta - i) / (i + 1);
        }
    }
    Ok(DensePoly::new(f.clone(), out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffring::{GaloisField, Rationals};

    fn q(n: i64) -> num_rational::BigRational {
        Rationals.from_i64(n)
    }

    fn bp(u: i64, v: i64, terms: &[(i64, u64, u64)]) -> BinomExprPoly<Rationals> {
        BinomExprPoly::new(
            Rationals,
            q(u),
            q(v),
            terms.iter().map(|&(a, al, be)| Term::new(q(a), al, be)).collect(),
        )
    }

    #[test]
    fn expansion_examples() {
        let p = bp(1, 1, &[(1, 1, 1)]);
        assert_eq!(
            expand_oracle(&p, 100).unwrap(),
            DensePoly::from_i64s(Rationals, &[0, 1, 1])
        );
        let p = bp(1, 1, &[(1, 0, 2)]);
        assert_eq!(
            expand_oracle(&p, 100).unwrap(),
            DensePoly::from_i64s(Rationals, &[1, 2, 1])
        );
        // -X^2 + (1+X)^2 - 2(1+X) + 1 = 0
        let p = bp(1, 1, &[(-1, 2, 0), (1, 0, 2), (-2, 0, 1), (1, 0, 0)]);
        assert!(expand_oracle(&p, 100).unwrap().is_zero());
    }

    #[test]
    fn oracle_refuses_beyond_cap() {
        let p = bp(1, 1, &[(1, 10, 5)]);
        assert!(matches!(expand_oracle(&p, 14), Err(Error::DegreeCap { .. })));
        assert!(expand_oracle(&p, 15).is_ok());
    }

    #[test]
    fn base_degree_expansion() {
        // X^2 (2X^3 - 1)^2 = 4X^8 - 4X^5 + X^2
        let p = BinomExprPoly::with_degree(
            Rationals,
            q(2),
            q(-1),
            BigUint::from(3u32),
            vec![Term::new(q(1), 2u32, 2u32)],
        );
        assert_eq!(
            expand_oracle(&p, 100).unwrap(),
            DensePoly::from_i64s(Rationals, &[0, 0, 1, 0, 0, -4, 0, 0, 4])
        );
    }

    #[test]
    fn zero_base_convention() {
        let p = bp(0, 0, &[(3, 1, 0), (5, 2, 4)]);
        assert_eq!(p.len(), 1);
        assert_eq!(expand_oracle(&p, 10).unwrap(), DensePoly::from_i64s(Rationals, &[0, 3]));
    }

    #[test]
    fn char_two_identity() {
        // (1+X)^8 + (1+X)^16 = X^8 + X^16 = X^8 (1+X)^8 mod 2
        let f2 = GaloisField::prime(BigUint::from(2u32)).unwrap();
        let one = f2.one();
        let p = BinomExprPoly::new(
            f2.clone(),
            one.clone(),
            one.clone(),
            vec![Term::new(one.clone(), 0u32, 8u32), Term::new(one.clone(), 0u32, 16u32)],
        );
        let e = expand_oracle(&p, 100).unwrap();
        let mut expected = vec![0i64; 17];
        expected[8] = 1;
        expected[16] = 1;
        assert_eq!(e, DensePoly::from_i64s(f2, &expected));
    }
}
