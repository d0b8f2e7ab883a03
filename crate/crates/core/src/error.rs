use num_bigint::BigUint;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("modulus {0} is not prime")]
    NotPrime(BigUint),

    #[error("defining polynomial is not irreducible over F_{p}")]
    Reducible { p: BigUint },

    /// A dense materialisation would exceed the configured degree cap.
    #[error("degree {degree} exceeds the cap {cap}")]
    DegreeCap { degree: BigUint, cap: u64 },

    /// The characteristic is too small for the valuation bound to hold.
    #[error("characteristic {p} must exceed max(alpha + d*beta) = {max_degree}")]
    CharacteristicTooSmall { p: BigUint, max_degree: BigUint },

    #[error("no admissible prime of {bits} bits found after {attempts} candidates")]
    PrimeSearchExhausted { bits: u64, attempts: u64 },

    #[error("unsupported factor form {0}: finding it is NP-hard under randomized reductions")]
    UnsupportedForm(String),

    #[error("no admissible specialization point within {0} attempts")]
    SpecializationExhausted(u32),

    #[error("root multiplicity reached the cap {cap} for a {terms}-term polynomial")]
    MultiplicityCap { cap: usize, terms: usize },

    #[error("too many rational root candidates ({0})")]
    TooManyCandidates(usize),
}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
