//! Zero tests for `sum_j a_j X^alpha_j (uX^d + v)^beta_j`.
//!
//! The main path (`u, v != 0`) splits the sum at valuation gaps, rewrites
//! every part in the variable `Y = uX + v` and compares coefficients exactly;
//! it is deterministic and never expands a large power. When `u = 0` or
//! `v = 0` the sum collapses to power sums `sum a_j w^beta_j`, which are
//! evaluated exactly over finite fields and tested by
//! [`degenerate_power_sum_test`] over the rationals.

use std::collections::BTreeMap;
use std::ops::Range;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bounds::fp_precondition_check;
use crate::coeffring::integers::bit_size;
use crate::coeffring::{random_test_prime, residue_of_bigint, trial_prime_factors, Field, GaloisField, Rationals};
use crate::error::Result;
use crate::gap::gap_partition;
use crate::poly::{BinomExprPoly, Term};

/// Default Monte Carlo parameter: a false `Zero` has probability at most
/// `2^-lambda`.
pub const DEFAULT_LAMBDA: u32 = 64;

/// Power sums whose exact evaluation costs at most this many bits of
/// numerator and denominator are evaluated directly.
pub const EXACT_EVALUATION_BITS: u64 = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Zero,
    NonZero,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Certainty {
    Deterministic,
    /// A `Zero` answer is wrong with probability at most `2^-lambda`.
    MonteCarlo {
        lambda: u32,
    },
}

impl Certainty {
    pub fn join(self, other: Certainty) -> Certainty {
        match (self, other) {
            (Certainty::MonteCarlo { lambda: a }, Certainty::MonteCarlo { lambda: b }) => {
                Certainty::MonteCarlo { lambda: a.min(b) }
            }
            (m @ Certainty::MonteCarlo { .. }, _) | (_, m @ Certainty::MonteCarlo { .. }) => m,
            _ => Certainty::Deterministic,
        }
    }
}

/// Why a power sum `sum a_j w^beta_j` is nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SumWitness {
    /// Exact evaluation gives a nonzero value.
    Evaluated,
    /// Every term has the same sign.
    SameSign,
    /// Term `index` alone attains the minimal `prime`-adic valuation.
    Adic { prime: BigUint, index: usize },
    /// The sum has a nonzero image modulo `prime`.
    Modulus { prime: BigUint },
}

/// Why a binomial expression is nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Witness {
    /// In the part made of the (normalized) terms `terms`, rewritten in
    /// `Y = uX + v`, the coefficient of `Y^exponent` is nonzero.
    Coefficient { terms: Range<usize>, exponent: BigUint },
    /// The power sum collecting the coefficient of `X^exponent` is nonzero.
    PowerSum { exponent: BigUint, evidence: SumWitness },
    /// A bare power sum is nonzero.
    Sum(SumWitness),
    /// The terms with `alpha = class (mod d)` already give a nonzero sum.
    Residue { class: BigUint, inner: Box<Witness> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroTestVerdict {
    pub verdict: Verdict,
    pub certainty: Certainty,
    /// Present exactly for `NonZero` verdicts.
    pub witness: Option<Witness>,
}

impl ZeroTestVerdict {
    pub fn zero(certainty: Certainty) -> Self {
        ZeroTestVerdict {
            verdict: Verdict::Zero,
            certainty,
            witness: None,
        }
    }

    pub fn nonzero(witness: Witness) -> Self {
        ZeroTestVerdict {
            verdict: Verdict::NonZero,
            certainty: Certainty::Deterministic,
            witness: Some(witness),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.verdict == Verdict::Zero
    }
}

/// Randomness and error parameters for tests that may fall back to Monte
/// Carlo.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PitOptions {
    pub lambda: u32,
    pub seed: u64,
}

impl Default for PitOptions {
    fn default() -> Self {
        PitOptions {
            lambda: DEFAULT_LAMBDA,
            seed: 0,
        }
    }
}

/// Fields with a power-sum test; the rest of the pipeline is shared.
pub trait PitField: Field {
    /// Decides `sum a_j base^beta_j = 0`. `stream` separates the random
    /// choices of independent sums drawn from one seed.
    fn power_sum_test(
        &self,
        pairs: &[(Self::Elem, BigUint)],
        base: &Self::Elem,
        opts: &PitOptions,
        stream: u64,
    ) -> Result<ZeroTestVerdict>;

    fn verify_power_sum(&self, pairs: &[(Self::Elem, BigUint)], base: &Self::Elem, w: &SumWitness) -> bool;
}

impl PitField for Rationals {
    fn power_sum_test(
        &self,
        pairs: &[(BigRational, BigUint)],
        base: &BigRational,
        opts: &PitOptions,
        stream: u64,
    ) -> Result<ZeroTestVerdict> {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        rng.set_stream(stream);
        power_sum_q(pairs, base, opts.lambda, &mut rng)
    }

    fn verify_power_sum(&self, pairs: &[(BigRational, BigUint)], base: &BigRational, w: &SumWitness) -> bool {
        verify_sum_witness(pairs, base, w)
    }
}

impl PitField for GaloisField {
    fn power_sum_test(
        &self,
        pairs: &[(Self::Elem, BigUint)],
        base: &Self::Elem,
        _opts: &PitOptions,
        _stream: u64,
    ) -> Result<ZeroTestVerdict> {
        if self.is_zero(&eval_power_sum(self, pairs, base)) {
            Ok(ZeroTestVerdict::zero(Certainty::Deterministic))
        } else {
            Ok(ZeroTestVerdict::nonzero(Witness::Sum(SumWitness::Evaluated)))
        }
    }

    fn verify_power_sum(&self, pairs: &[(Self::Elem, BigUint)], base: &Self::Elem, w: &SumWitness) -> bool {
        *w == SumWitness::Evaluated && !self.is_zero(&eval_power_sum(self, pairs, base))
    }
}

/// `sum a_j base^beta_j` by square-and-multiply.
fn eval_power_sum<F: Field>(f: &F, pairs: &[(F::Elem, BigUint)], base: &F::Elem) -> F::Elem {
    pairs.iter().fold(f.zero(), |acc, (a, e)| {
        f.add(&acc, &f.mul(a, &f.pow_with_zero(base, e)))
    })
}

fn merge_pairs<F: Field>(f: &F, pairs: &[(F::Elem, BigUint)]) -> Vec<(F::Elem, BigUint)> {
    let mut acc: BTreeMap<BigUint, F::Elem> = BTreeMap::new();
    for (a, e) in pairs {
        let slot = acc.entry(e.clone()).or_insert_with(|| f.zero());
        *slot = f.add(slot, a);
    }
    acc.into_iter()
        .filter(|(_, a)| !f.is_zero(a))
        .map(|(e, a)| (a, e))
        .collect()
}

/// Exact test of `sum a_j v^beta_j = 0` when cheap, otherwise randomized.
///
/// Deterministic layers, in order: empty sum; `v` in `{0, 1, -1}`; all terms
/// of one sign; a unique term of minimal `q`-adic valuation for a prime `q`
/// dividing the numerator or denominator of `v`; exact evaluation when the
/// exponents are small. Otherwise the sum is reduced modulo a random prime
/// long enough that a nonzero sum vanishes with probability at most
/// `2^-lambda`; a nonzero residue is a certificate.
pub fn degenerate_power_sum_test(
    pairs: &[(BigRational, BigUint)],
    v: &BigRational,
    lambda: u32,
    seed: u64,
) -> Result<ZeroTestVerdict> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    power_sum_q(pairs, v, lambda, &mut rng)
}

fn sign_of(a: &BigRational, v: &BigRational, e: &BigUint) -> Sign {
    let s = a.numer().sign();
    if v.is_negative() && e.bit(0) {
        -s
    } else {
        s
    }
}

fn same_sign(pairs: &[(BigRational, BigUint)], v: &BigRational) -> bool {
    if v.is_zero() {
        return false;
    }
    let first = sign_of(&pairs[0].0, v, &pairs[0].1);
    pairs.iter().all(|(a, e)| sign_of(a, v, e) == first)
}

fn int_val(n: &BigInt, q: &BigUint) -> i64 {
    let q = BigInt::from(q.clone());
    let mut n = n.clone();
    let mut k = 0;
    loop {
        let (d, r) = n.div_rem(&q);
        if !r.is_zero() || n.is_zero() {
            return k;
        }
        n = d;
        k += 1;
    }
}

/// `q`-adic valuation of each term, `None` when it does not fit an `i128`.
fn adic_vals(pairs: &[(BigRational, BigUint)], v: &BigRational, q: &BigUint) -> Option<Vec<i128>> {
    let vq = (int_val(v.numer(), q) - int_val(v.denom(), q)) as i128;
    pairs
        .iter()
        .map(|(a, e)| {
            let va = (int_val(a.numer(), q) - int_val(a.denom(), q)) as i128;
            let e = e.to_i128()?;
            e.checked_mul(vq)?.checked_add(va)
        })
        .collect()
}

fn unique_min(vals: &[i128]) -> Option<usize> {
    let m = *vals.iter().min()?;
    let mut idx = vals.iter().enumerate().filter(|(_, &x)| x == m).map(|(i, _)| i);
    let first = idx.next()?;
    idx.next().is_none().then_some(first)
}

fn adic_primes(v: &BigRational) -> Vec<BigUint> {
    let mut ps = trial_prime_factors(v.numer().magnitude());
    ps.extend(trial_prime_factors(v.denom().magnitude()));
    ps.sort();
    ps.dedup();
    ps
}

fn evaluation_cost(pairs: &[(BigRational, BigUint)], v: &BigRational) -> Option<u64> {
    let vb = bit_size(v.numer().magnitude()) + bit_size(v.denom().magnitude());
    pairs
        .iter()
        .try_fold(0u64, |acc, (_, e)| acc.checked_add(e.to_u64()?.checked_mul(vb)?))
}

fn exact_value(pairs: &[(BigRational, BigUint)], v: &BigRational) -> BigRational {
    pairs.iter().fold(BigRational::zero(), |acc, (a, e)| {
        acc + a * Rationals.pow_with_zero(v, e)
    })
}

fn ceil_log2(n: u64) -> u64 {
    if n <= 1 {
        0
    } else {
        64 - (n - 1).leading_zeros() as u64
    }
}

/// Prime length for the modular fallback. Clearing denominators turns the
/// sum into an integer `N` of at most `H` bits, with
/// `H <= log k + bits(coeffs) + max beta * bits(v)`; at most `H / (b-1)`
/// primes of `b` bits divide `N`, and there are more than `2^(b-1) / b` of
/// them, so `b = lambda + log2 H + log2 b + 2` bits keep the failure
/// probability below `2^-lambda`.
fn modulus_bits(pairs: &[(BigRational, BigUint)], v: &BigRational, lambda: u32) -> u64 {
    let max_beta = pairs.iter().map(|(_, e)| e).max().cloned().unwrap_or_default();
    let vb = bit_size(v.numer().magnitude()) + bit_size(v.denom().magnitude());
    let cb: u64 = pairs
        .iter()
        .map(|(a, _)| bit_size(a.numer().magnitude()) + bit_size(a.denom().magnitude()))
        .sum();
    let log_h = bit_size(&max_beta) + ceil_log2(vb) + 1 + ceil_log2(cb + ceil_log2(pairs.len() as u64) + 1);
    let mut b = lambda as u64 + log_h + 2;
    b += ceil_log2(b) + 1;
    b.max(16)
}

fn residue_of_rational(a: &BigRational, q: &BigUint) -> BigUint {
    let n = residue_of_bigint(a.numer(), q);
    let d = residue_of_bigint(a.denom(), q);
    let dinv = d.modpow(&(q - 2u32), q);
    n * dinv % q
}

fn residue_sum(pairs: &[(BigRational, BigUint)], v: &BigRational, q: &BigUint) -> BigUint {
    let vq = residue_of_rational(v, q);
    let order = q - 1u32;
    pairs.iter().fold(BigUint::zero(), |acc, (a, e)| {
        let t = residue_of_rational(a, q) * vq.modpow(&(e % &order), q);
        (acc + t) % q
    })
}

fn power_sum_q(
    pairs: &[(BigRational, BigUint)],
    v: &BigRational,
    lambda: u32,
    rng: &mut ChaCha8Rng,
) -> Result<ZeroTestVerdict> {
    let pairs = merge_pairs(&Rationals, pairs);
    if pairs.is_empty() {
        return Ok(ZeroTestVerdict::zero(Certainty::Deterministic));
    }
    let small_base = v.is_zero() || v.is_one() || (-v).is_one();
    if small_base {
        return Ok(exact_verdict(&pairs, v));
    }
    if same_sign(&pairs, v) {
        return Ok(ZeroTestVerdict::nonzero(Witness::Sum(SumWitness::SameSign)));
    }
    for q in adic_primes(v) {
        if let Some(index) = adic_vals(&pairs, v, &q).and_then(|vals| unique_min(&vals)) {
            return Ok(ZeroTestVerdict::nonzero(Witness::Sum(SumWitness::Adic {
                prime: q,
                index,
            })));
        }
    }
    if evaluation_cost(&pairs, v).is_some_and(|c| c <= EXACT_EVALUATION_BITS) {
        return Ok(exact_verdict(&pairs, v));
    }
    let bits = modulus_bits(&pairs, v, lambda);
    let mut forbidden: Vec<BigUint> = vec![v.numer().magnitude().clone(), v.denom().magnitude().clone()];
    for (a, _) in &pairs {
        forbidden.push(a.denom().magnitude().clone());
    }
    let q = random_test_prime(bits, &forbidden, rng)?;
    if residue_sum(&pairs, v, &q).is_zero() {
        Ok(ZeroTestVerdict::zero(Certainty::MonteCarlo { lambda }))
    } else {
        Ok(ZeroTestVerdict::nonzero(Witness::Sum(SumWitness::Modulus { prime: q })))
    }
}

fn exact_verdict(pairs: &[(BigRational, BigUint)], v: &BigRational) -> ZeroTestVerdict {
    if exact_value(pairs, v).is_zero() {
        ZeroTestVerdict::zero(Certainty::Deterministic)
    } else {
        ZeroTestVerdict::nonzero(Witness::Sum(SumWitness::Evaluated))
    }
}

/// Re-checks a nonzero certificate for `sum a_j v^beta_j` (pairs are merged
/// first, as by the test).
pub fn verify_sum_witness(pairs: &[(BigRational, BigUint)], v: &BigRational, w: &SumWitness) -> bool {
    let pairs = merge_pairs(&Rationals, pairs);
    if pairs.is_empty() {
        return false;
    }
    match w {
        SumWitness::Evaluated => !exact_value(&pairs, v).is_zero(),
        SumWitness::SameSign => same_sign(&pairs, v),
        SumWitness::Adic { prime, index } => {
            !v.is_zero() && adic_vals(&pairs, v, prime).and_then(|vals| unique_min(&vals)) == Some(*index)
        }
        SumWitness::Modulus { prime } => {
            let divides = |n: &BigInt| (n.magnitude() % prime).is_zero();
            prime > &BigUint::one()
                && !divides(v.numer())
                && !divides(v.denom())
                && pairs.iter().all(|(a, _)| !divides(a.denom()))
                && !residue_sum(&pairs, v, prime).is_zero()
        }
    }
}

/// Power sums `sum a_j w^beta_j` keyed by the exponent of `X` they multiply.
type PowerSumGroups<E> = BTreeMap<BigUint, Vec<(E, BigUint)>>;

/// Keys and power-sum groups of a degenerate expression: with `u = 0` the
/// coefficient of `X^alpha` is `sum a_j v^beta_j`; with `v = 0` the
/// coefficient of `X^(alpha + d beta)` is `sum a_j u^beta_j`.
fn degenerate_groups<F: Field>(p: &BinomExprPoly<F>) -> (F::Elem, PowerSumGroups<F::Elem>) {
    let f = p.field();
    let u_zero = f.is_zero(p.u());
    let base = if u_zero { p.v().clone() } else { p.u().clone() };
    let mut groups: PowerSumGroups<F::Elem> = BTreeMap::new();
    for t in p.terms() {
        let key = if u_zero {
            t.alpha.clone()
        } else {
            &t.alpha + p.base_degree() * &t.beta
        };
        groups.entry(key).or_default().push((t.coeff.clone(), t.beta.clone()));
    }
    (base, groups)
}

/// Coefficients of one gap part rewritten in `Y = uX + v`, scaled by
/// `u^M` (`M` the largest local `alpha`) so no inverse is needed:
/// `X^a (uX+v)^b -> u^(M-a) (Y - v)^a Y^b`.
fn part_coefficients<F: Field>(f: &F, u: &F::Elem, v: &F::Elem, terms: &[Term<F::Elem>]) -> BTreeMap<BigUint, F::Elem> {
    let base_alpha = &terms[0].alpha;
    let locals: Vec<u64> = terms
        .iter()
        .map(|t| {
            (&t.alpha - base_alpha)
                .to_u64()
                .expect("part width fits a machine word")
        })
        .collect();
    let m = locals.iter().copied().max().unwrap_or(0);
    let mut upow = vec![f.one()];
    let neg_v = f.neg(v);
    let mut vpow = vec![f.one()];
    for _ in 0..m {
        upow.push(f.mul(upow.last().unwrap(), u));
        vpow.push(f.mul(vpow.last().unwrap(), &neg_v));
    }
    let mut out: BTreeMap<BigUint, F::Elem> = BTreeMap::new();
    for (t, &a) in terms.iter().zip(&locals) {
        let scale = f.mul(&t.coeff, &upow[(m - a) as usize]);
        let mut binom = BigUint::one();
        for l in 0..=a {
            let c = f.mul(&f.mul(&scale, &f.from_biguint(&binom)), &vpow[l as usize]);
            let key = &t.beta + (a - l);
            let slot = out.entry(key).or_insert_with(|| f.zero());
            *slot = f.add(slot, &c);
            binom = binom * (a - l) / (l + 1);
        }
    }
    out.retain(|_, c| !f.is_zero(c));
    out
}

/// Shared pipeline for base degree one.
fn zero_test_d1<F: PitField>(p: &BinomExprPoly<F>, opts: &PitOptions) -> Result<ZeroTestVerdict> {
    let p = p.normalize();
    let f = p.field();
    if p.is_empty() {
        return Ok(ZeroTestVerdict::zero(Certainty::Deterministic));
    }
    if f.is_zero(p.u()) || f.is_zero(p.v()) {
        let (base, groups) = degenerate_groups(&p);
        let groups: Vec<_> = groups.into_iter().collect();
        let lambda = opts.lambda + ceil_log2(groups.len() as u64) as u32;
        let inner = PitOptions {
            lambda,
            seed: opts.seed,
        };
        let results: Vec<Result<ZeroTestVerdict>> = groups
            .par_iter()
            .enumerate()
            .map(|(i, (_, pairs))| f.power_sum_test(pairs, &base, &inner, i as u64))
            .collect();
        let mut certainty = Certainty::Deterministic;
        for ((key, _), r) in groups.iter().zip(results) {
            let r = r?;
            if let Some(Witness::Sum(evidence)) = r.witness {
                return Ok(ZeroTestVerdict::nonzero(Witness::PowerSum {
                    exponent: key.clone(),
                    evidence,
                }));
            }
            certainty = certainty.join(r.certainty);
        }
        if let Certainty::MonteCarlo { .. } = certainty {
            certainty = Certainty::MonteCarlo { lambda: opts.lambda };
        }
        return Ok(ZeroTestVerdict::zero(certainty));
    }
    let alphas = p.alphas();
    let parts = gap_partition(&alphas, 1)?.parts;
    let found: Vec<Option<Witness>> = parts
        .par_iter()
        .map(|r| {
            part_coefficients(f, p.u(), p.v(), &p.terms()[r.clone()])
                .into_keys()
                .next()
                .map(|exponent| Witness::Coefficient {
                    terms: r.clone(),
                    exponent,
                })
        })
        .collect();
    Ok(match found.into_iter().flatten().next() {
        Some(w) => ZeroTestVerdict::nonzero(w),
        None => ZeroTestVerdict::zero(Certainty::Deterministic),
    })
}

/// `P_r(Y) = sum_{alpha_j = r mod d} a_j Y^(alpha_j div d) (uY + v)^beta_j`
/// for every residue class `r` present.
fn residue_classes<F: Field>(p: &BinomExprPoly<F>) -> BTreeMap<BigUint, BinomExprPoly<F>> {
    let d = p.base_degree();
    let mut classes: BTreeMap<BigUint, Vec<Term<F::Elem>>> = BTreeMap::new();
    for t in p.terms() {
        let (q, r) = t.alpha.div_rem(d);
        classes
            .entry(r)
            .or_default()
            .push(Term::new(t.coeff.clone(), q, t.beta.clone()));
    }
    classes
        .into_iter()
        .map(|(r, terms)| {
            let sub = BinomExprPoly::new(p.field().clone(), p.u().clone(), p.v().clone(), terms);
            (r, sub)
        })
        .collect()
}

/// Any base degree: one zero test per residue class of `alpha` mod `d`.
fn zero_test_any<F: PitField>(p: &BinomExprPoly<F>, opts: &PitOptions) -> Result<ZeroTestVerdict> {
    if p.base_degree().is_one() {
        return zero_test_d1(p, opts);
    }
    let p = p.normalize();
    let mut certainty = Certainty::Deterministic;
    for (i, (class, sub)) in residue_classes(&p).into_iter().enumerate() {
        let sub_opts = PitOptions {
            lambda: opts.lambda + ceil_log2(p.len() as u64) as u32,
            seed: opts.seed.wrapping_add((i as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15)),
        };
        let r = zero_test_d1(&sub, &sub_opts)?;
        if let Some(inner) = r.witness {
            return Ok(ZeroTestVerdict::nonzero(Witness::Residue {
                class,
                inner: Box::new(inner),
            }));
        }
        certainty = certainty.join(r.certainty);
    }
    if let Certainty::MonteCarlo { .. } = certainty {
        certainty = Certainty::MonteCarlo { lambda: opts.lambda };
    }
    Ok(ZeroTestVerdict::zero(certainty))
}

/// Zero test over the rationals with base `uX + v`. Deterministic unless
/// `u = 0` or `v = 0` forces a randomized power-sum test.
pub fn zero_test_q(p: &BinomExprPoly<Rationals>, opts: &PitOptions) -> Result<ZeroTestVerdict> {
    zero_test_any(p, opts)
}

/// Zero test over the rationals with base `uX^d + v`, by splitting the
/// terms along `alpha mod d`.
pub fn zero_test_two_sparse(p: &BinomExprPoly<Rationals>, opts: &PitOptions) -> Result<ZeroTestVerdict> {
    zero_test_any(p, opts)
}

/// Deterministic zero test over `F_{p^s}`; requires
/// `p > max_j (alpha_j + d beta_j)`.
pub fn zero_test_fp(p: &BinomExprPoly<GaloisField>) -> Result<ZeroTestVerdict> {
    let p = p.normalize();
    fp_precondition_check(&p)?;
    zero_test_any(&p, &PitOptions::default())
}

/// Recomputes the evidence of a `NonZero` verdict.
pub fn verify_witness<F: PitField>(p: &BinomExprPoly<F>, w: &Witness) -> bool {
    let p = p.normalize();
    let f = p.field();
    match w {
        Witness::Residue { class, inner } => {
            if p.base_degree().is_one() {
                return false;
            }
            residue_classes(&p)
                .get(class)
                .is_some_and(|sub| verify_witness(sub, inner))
        }
        _ if !p.base_degree().is_one() => false,
        Witness::Coefficient { terms, exponent } => {
            if f.is_zero(p.u()) || f.is_zero(p.v()) || terms.end > p.len() || terms.is_empty() {
                return false;
            }
            let Ok(parts) = gap_partition(&p.alphas(), 1) else {
                return false;
            };
            parts.parts.contains(terms)
                && part_coefficients(f, p.u(), p.v(), &p.terms()[terms.clone()]).contains_key(exponent)
        }
        Witness::PowerSum { exponent, evidence } => {
            if !(f.is_zero(p.u()) || f.is_zero(p.v())) {
                return false;
            }
            let (base, groups) = degenerate_groups(&p);
            groups
                .get(exponent)
                .is_some_and(|pairs| f.verify_power_sum(pairs, &base, evidence))
        }
        Witness::Sum(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        Rationals.from_i64(n)
    }

    fn bp(u: BigRational, v: BigRational, terms: Vec<Term<BigRational>>) -> BinomExprPoly<Rationals> {
        BinomExprPoly::new(Rationals, u, v, terms)
    }

    fn big(e: u32) -> BigUint {
        BigUint::one() << e
    }

    #[test]
    fn hand_identity_is_zero() {
        let p = bp(
            q(1),
            q(1),
            vec![
                Term::new(q(1), 1u32, 1u32),
                Term::new(q(-1), 1u32, 0u32),
                Term::new(q(-1), 2u32, 0u32),
            ],
        );
        let r = zero_test_q(&p, &PitOptions::default()).unwrap();
        assert_eq!(r, ZeroTestVerdict::zero(Certainty::Deterministic));
    }

    #[test]
    fn big_power_minus_monomial() {
        let p = bp(
            q(1),
            q(1),
            vec![Term::new(q(1), 0u32, big(40)), Term::new(q(-1), big(40), 0u32)],
        );
        let r = zero_test_q(&p, &PitOptions::default()).unwrap();
        assert_eq!(r.verdict, Verdict::NonZero);
        assert!(verify_witness(&p, r.witness.as_ref().unwrap()));
    }

    #[test]
    fn hajos_identity_k6() {
        // -X^5 + sum_t (-1)^(5-t) C(5,t) (1+X)^t = 0
        let k = 6u64;
        let mut terms = vec![Term::new(q(-1), k - 1, 0u32)];
        for t in 0..k {
            let sign = if (k - 1 - t).is_multiple_of(2) { 1 } else { -1 };
            let c = crate::coeffring::binomial(k - 1, t).to_i64().unwrap();
            terms.push(Term::new(q(sign * c), 0u32, t));
        }
        let r = zero_test_q(&bp(q(1), q(1), terms), &PitOptions::default()).unwrap();
        assert!(r.is_zero());
        assert_eq!(r.certainty, Certainty::Deterministic);
    }

    #[test]
    fn two_sparse_examples() {
        // X^2 (X^3 + 1) - X^5 - X^2
        let p = BinomExprPoly::with_degree(
            Rationals,
            q(1),
            q(1),
            BigUint::from(3u32),
            vec![
                Term::new(q(1), 2u32, 1u32),
                Term::new(q(-1), 5u32, 0u32),
                Term::new(q(-1), 2u32, 0u32),
            ],
        );
        assert!(zero_test_two_sparse(&p, &PitOptions::default()).unwrap().is_zero());
        let single = BinomExprPoly::with_degree(
            Rationals,
            q(2),
            q(1),
            BigUint::from(4u32),
            vec![Term::new(q(1), 7u32, 3u32)],
        );
        let r = zero_test_two_sparse(&single, &PitOptions::default()).unwrap();
        assert_eq!(r.verdict, Verdict::NonZero);
        assert!(verify_witness(&single, r.witness.as_ref().unwrap()));
    }

    #[test]
    fn power_sum_layers() {
        let opts = (64, 7);
        let r = degenerate_power_sum_test(&[(q(1), big(2)), (q(-1), big(2))], &q(3), opts.0, opts.1).unwrap();
        assert_eq!(r, ZeroTestVerdict::zero(Certainty::Deterministic));
        let pairs = vec![(q(1), BigUint::from(3u32)), (q(1), big(50))];
        let r = degenerate_power_sum_test(&pairs, &q(2), opts.0, opts.1).unwrap();
        assert_eq!(r.witness, Some(Witness::Sum(SumWitness::SameSign)));
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let pairs = vec![
            (q(1), BigUint::zero()),
            (q(-3), BigUint::one()),
            (q(2), BigUint::from(2u32)),
        ];
        let r = degenerate_power_sum_test(&pairs, &half, opts.0, opts.1).unwrap();
        assert_eq!(r, ZeroTestVerdict::zero(Certainty::Deterministic));
    }

    #[test]
    fn adic_and_modular_layers() {
        // 3^5 - 3^(2^40): unique 3-adic minimum
        let pairs = vec![(q(1), BigUint::from(5u32)), (q(-1), big(40))];
        let r = degenerate_power_sum_test(&pairs, &q(3), 64, 0).unwrap();
        let Some(Witness::Sum(w)) = &r.witness else {
            panic!("{r:?}")
        };
        assert!(matches!(w, SumWitness::Adic { .. }));
        assert!(verify_sum_witness(&pairs, &q(3), w));
        // 6^(N+1) - 6 * 6^N = 0: adic ties, too large to evaluate
        let n = big(30);
        let pairs = vec![(q(1), &n + 1u32), (q(-6), n.clone())];
        let r = degenerate_power_sum_test(&pairs, &q(6), 64, 0).unwrap();
        assert_eq!(r.verdict, Verdict::Zero);
        assert_eq!(r.certainty, Certainty::MonteCarlo { lambda: 64 });
        // nonzero with tied valuations: 6^(N+1) - 5 * 6^N
        let pairs = vec![(q(1), &n + 1u32), (q(-5), n)];
        let r = degenerate_power_sum_test(&pairs, &q(6), 64, 0).unwrap();
        let Some(Witness::Sum(w)) = &r.witness else {
            panic!("{r:?}")
        };
        assert!(verify_sum_witness(&pairs, &q(6), w));
    }

    #[test]
    fn degenerate_bases_route_to_power_sums() {
        // u = 0: sum a_j X^alpha_j v^beta_j
        let p = bp(
            q(0),
            q(2),
            vec![
                Term::new(q(4), 3u32, 0u32),
                Term::new(q(-1), 3u32, 2u32),
                Term::new(q(1), 7u32, big(45)),
            ],
        );
        let r = zero_test_q(&p, &PitOptions::default()).unwrap();
        assert_eq!(r.verdict, Verdict::NonZero);
        assert!(verify_witness(&p, r.witness.as_ref().unwrap()));
        let p = bp(
            q(0),
            q(2),
            vec![Term::new(q(4), 3u32, 0u32), Term::new(q(-1), 3u32, 2u32)],
        );
        assert!(zero_test_q(&p, &PitOptions::default()).unwrap().is_zero());
        // v = 0: X^2 (3X)^1 - 3 X^3
        let p = bp(
            q(3),
            q(0),
            vec![Term::new(q(1), 2u32, 1u32), Term::new(q(-3), 3u32, 0u32)],
        );
        assert!(zero_test_q(&p, &PitOptions::default()).unwrap().is_zero());
    }

    #[test]
    fn fp_examples() {
        let f2 = GaloisField::prime(BigUint::from(2u32)).unwrap();
        let o = f2.one();
        let p = BinomExprPoly::new(
            f2,
            o.clone(),
            o.clone(),
            vec![Term::new(o.clone(), 0u32, 8u32), Term::new(o, 0u32, 16u32)],
        );
        assert!(matches!(
            zero_test_fp(&p),
            Err(crate::Error::CharacteristicTooSmall { .. })
        ));
        let f101 = GaloisField::prime(BigUint::from(101u32)).unwrap();
        let o = f101.one();
        let p = BinomExprPoly::new(
            f101.clone(),
            o.clone(),
            f101.from_i64(5),
            vec![Term::new(f101.from_i64(3), 20u32, 30u32)],
        );
        let r = zero_test_fp(&p).unwrap();
        assert_eq!(r.verdict, Verdict::NonZero);
        assert!(verify_witness(&p, r.witness.as_ref().unwrap()));
    }
}
