use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::coeffring::Field;
use crate::error::{domain, Error, Result};
use crate::poly::bivariate::DensePolyBi;
use crate::poly::dense::DensePoly;

/// One term `coeff * X^alpha * Y^beta` (or `coeff * X^alpha * B^beta` for a
/// binomial base `B`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term<E> {
    pub coeff: E,
    pub alpha: BigUint,
    pub beta: BigUint,
}

impl<E> Term<E> {
    pub fn new(coeff: E, alpha: impl Into<BigUint>, beta: impl Into<BigUint>) -> Self {
        Term {
            coeff,
            alpha: alpha.into(),
            beta: beta.into(),
        }
    }
}

/// Merges equal exponent pairs, drops zero coefficients and sorts by
/// `(alpha, beta)`.
pub(crate) fn normalize_terms<F: Field>(field: &F, terms: &[Term<F::Elem>]) -> Vec<Term<F::Elem>> {
    let mut acc: BTreeMap<(BigUint, BigUint), F::Elem> = BTreeMap::new();
    for t in terms {
        let slot = acc
            .entry((t.alpha.clone(), t.beta.clone()))
            .or_insert_with(|| field.zero());
        *slot = field.add(slot, &t.coeff);
    }
    acc.into_iter()
        .filter(|(_, c)| !field.is_zero(c))
        .map(|((alpha, beta), coeff)| Term { coeff, alpha, beta })
        .collect()
}

/// A bivariate polynomial `sum_j a_j X^alpha_j Y^beta_j` with arbitrary-
/// precision exponents.
#[derive(Clone, Debug, PartialEq)]
pub struct LacunaryPoly<F: Field> {
    field: F,
    terms: Vec<Term<F::Elem>>,
}

impl<F: Field> LacunaryPoly<F> {
    /// Builds and normalizes.
    pub fn new(field: F, terms: Vec<Term<F::Elem>>) -> Self {
        let terms = normalize_terms(&field, &terms);
        LacunaryPoly { field, terms }
    }

    /// Keeps the term list as given; call [`LacunaryPoly::normalize`] before
    /// handing the value to algorithms.
    pub fn from_raw_terms(field: F, terms: Vec<Term<F::Elem>>) -> Self {
        LacunaryPoly { field, terms }
    }

    pub fn normalize(&self) -> Self {
        LacunaryPoly {
            field: self.field.clone(),
            terms: normalize_terms(&self.field, &self.terms),
        }
    }

    pub fn is_normalized(&self) -> bool {
        self.terms == normalize_terms(&self.field, &self.terms)
    }

    pub fn field(&self) -> &F {
        &self.field
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

    /// True for the zero polynomial (after normalization).
    pub fn is_zero(&self) -> bool {
        self.normalize().terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        LacunaryPoly::new(self.field.clone(), terms)
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
        LacunaryPoly::new(f.clone(), terms)
    }

    /// Term-by-term product (`len(self) * len(other)` terms before merging);
    /// meant for building small test instances such as planted factors.
    pub fn naive_product(&self, other: &Self) -> Self {
        let f = &self.field;
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for s in &self.terms {
            for t in &other.terms {
                terms.push(Term {
                    coeff: f.mul(&s.coeff, &t.coeff),
                    alpha: &s.alpha + &t.alpha,
                    beta: &s.beta + &t.beta,
                });
            }
        }
        LacunaryPoly::new(f.clone(), terms)
    }

    /// Exchanges the roles of `X` and `Y`.
    pub fn swap_xy(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                coeff: t.coeff.clone(),
                alpha: t.beta.clone(),
                beta: t.alpha.clone(),
            })
            .collect();
        LacunaryPoly::new(self.field.clone(), terms)
    }

    /// `max_j (alpha_j + beta_j)`, zero for the empty polynomial.
    pub fn total_degree(&self) -> BigUint {
        self.terms.iter().map(|t| &t.alpha + &t.beta).max().unwrap_or_default()
    }

    /// Dense materialisation; refuses when a partial degree exceeds `cap`.
    pub fn to_dense(&self, cap: u64) -> Result<DensePolyBi<F>> {
        let mut max_a = 0usize;
        let mut max_b = 0usize;
        let mut small = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            for e in [&t.alpha, &t.beta] {
                if e > &BigUint::from(cap) {
                    return Err(Error::DegreeCap { degree: e.clone(), cap });
                }
            }
            let a = t.alpha.to_usize().unwrap();
            let b = t.beta.to_usize().unwrap();
            max_a = max_a.max(a);
            max_b = max_b.max(b);
            small.push((t.coeff.clone(), a, b));
        }
        Ok(DensePolyBi::from_terms(self.field.clone(), &small))
    }
}

/// A univariate lacunary polynomial `sum_j a_j X^e_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct LacunaryUni<F: Field> {
    field: F,
    /// Sorted by exponent, no zero coefficients, exponents distinct.
    terms: Vec<(F::Elem, BigUint)>,
}

impl<F: Field> LacunaryUni<F> {
    pub fn new(field: F, terms: Vec<(F::Elem, BigUint)>) -> Self {
        let mut acc: BTreeMap<BigUint, F::Elem> = BTreeMap::new();
        for (c, e) in terms {
            let slot = acc.entry(e).or_insert_with(|| field.zero());
            *slot = field.add(slot, &c);
        }
        let terms = acc
            .into_iter()
            .filter(|(_, c)| !field.is_zero(c))
            .map(|(e, c)| (c, e))
            .collect();
        LacunaryUni { field, terms }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn terms(&self) -> &[(F::Elem, BigUint)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lowest exponent; `None` for the zero polynomial.
    pub fn valuation(&self) -> Option<&BigUint> {
        self.terms.first().map(|(_, e)| e)
    }

    pub fn degree(&self) -> Option<&BigUint> {
        self.terms.last().map(|(_, e)| e)
    }

    /// Formal derivative `a X^e -> e a X^(e-1)`. Requires characteristic zero
    /// or a characteristic exceeding the degree.
    pub fn derivative(&self) -> Result<Self> {
        let f = &self.field;
        let p = f.characteristic();
        if !p.is_zero() {
            if let Some(deg) = self.degree() {
                if &p <= deg {
                    return Err(domain(format!("derivative needs characteristic {p} > degree {deg}")));
                }
            }
        }
        let terms = self
            .terms
            .iter()
            .filter(|(_, e)| !e.is_zero())
            .map(|(c, e)| (f.mul(c, &f.from_biguint(e)), e - 1u32))
            .collect();
        Ok(LacunaryUni::new(f.clone(), terms))
    }

    /// Divides by `X^valuation`.
    pub fn strip_valuation(&self) -> Self {
        match self.valuation().cloned() {
            None => self.clone(),
            Some(v) => LacunaryUni {
                field: self.field.clone(),
                terms: self.terms.iter().map(|(c, e)| (c.clone(), e - &v)).collect(),
            },
        }
    }

    /// Dense form when the degree is at most `cap`.
    pub fn to_dense(&self, cap: u64) -> Result<DensePoly<F>> {
        let deg = self.degree().cloned().unwrap_or_default();
        if deg > BigUint::from(cap) {
            return Err(Error::DegreeCap { degree: deg, cap });
        }
        let n = deg.to_usize().unwrap();
        let mut coeffs = vec![self.field.zero(); n + 1];
        for (c, e) in &self.terms {
            coeffs[e.to_usize().unwrap()] = c.clone();
        }
        Ok(DensePoly::new(self.field.clone(), coeffs))
    }
}
