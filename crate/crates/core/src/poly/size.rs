use num_bigint::BigUint;

use crate::coeffring::integers::bit_size;
use crate::coeffring::Field;
use crate::poly::binom::BinomExprPoly;
use crate::poly::lacunary::{LacunaryPoly, Term};

/// Bit size of a lacunary input: coefficient sizes plus exponent bit-lengths.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SizeMeasure {
    pub bits: u64,
}

fn exp_bits(e: &BigUint) -> u64 {
    bit_size(e).max(1)
}

fn terms_bits<F: Field>(f: &F, terms: &[Term<F::Elem>]) -> u64 {
    terms
        .iter()
        .map(|t| f.size_bits(&t.coeff) + exp_bits(&t.alpha) + exp_bits(&t.beta))
        .sum()
}

/// `sum_j (size(a_j) + bits(alpha_j) + bits(beta_j))`, every integer counting
/// at least one bit.
pub fn lacunary_size<F: Field>(p: &LacunaryPoly<F>) -> SizeMeasure {
    SizeMeasure {
        bits: terms_bits(p.field(), p.terms()),
    }
}

/// As [`lacunary_size`] plus `size(u) + size(v)`, and `bits(d)` when `d > 1`.
pub fn binom_size<F: Field>(p: &BinomExprPoly<F>) -> SizeMeasure {
    let f = p.field();
    let mut bits = terms_bits(f, p.terms()) + f.size_bits(p.u()) + f.size_bits(p.v());
    if p.base_degree() > &BigUint::from(1u32) {
        bits += exp_bits(p.base_degree());
    }
    SizeMeasure { bits }
}
