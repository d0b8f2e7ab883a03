//! Exact coefficient arithmetic: integers, rationals, prime fields and their
//! extensions.

mod field;
mod galois;
pub mod integers;
mod rational;

pub use field::Field;
pub use galois::{residue_of_bigint, GaloisField, GfElem};
pub use integers::{
    binomial, binomial_big, divisors, factorize, falling_factorial, is_probable_prime, lucas_binomial,
    random_test_prime, trial_prime_factors,
};
pub use rational::{format_rational, parse_rational, primitive_integer_vector, rational_bits, signum, Rationals};

/// Runtime description of a coefficient domain.
#[derive(Debug, Clone, PartialEq)]
pub enum FieldSpec {
    Rationals,
    /// `F_p[xi]/<phi>`; the prime field when `phi` has degree one.
    Galois(GaloisField),
}

impl FieldSpec {
    pub fn is_rationals(&self) -> bool {
        matches!(self, FieldSpec::Rationals)
    }
}
