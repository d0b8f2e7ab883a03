//! Valuation and multiplicity bounds for sums of `X^alpha (uX+v)^beta`
//! terms, the extremal family `P_k`, and an exploratory search for large
//! valuations.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coeffring::{binomial, primitive_integer_vector, Field, Rationals};
use crate::error::{domain, Error, Result};
use crate::linalg::{nullspace, rank};
use crate::poly::{expand_oracle, BinomExprPoly, Term};

fn c2(n: u64) -> BigUint {
    binomial(n, 2)
}

fn check_sorted(xs: &[BigUint]) -> Result<()> {
    if xs.is_empty() {
        return Err(domain("empty exponent list"));
    }
    if xs.windows(2).any(|w| w[0] > w[1]) {
        return Err(domain("exponent list must be ascending"));
    }
    Ok(())
}

fn weighted_bound(alphas: &[BigUint], weight: u32) -> Result<BigUint> {
    check_sorted(alphas)?;
    let k = alphas.len() as u64;
    Ok(alphas
        .iter()
        .enumerate()
        .map(|(j, a)| a + c2(k - j as u64) * weight)
        .max()
        .unwrap())
}

/// `max_j (alpha_j + C(k+1-j, 2))` for an ascending list (`j` from 1): the
/// largest possible valuation of a nonzero `sum a_j X^alpha_j (1+X)^beta_j`
/// in characteristic zero.
pub fn valuation_bound(alphas: &[BigUint]) -> Result<BigUint> {
    weighted_bound(alphas, 1)
}

/// `max_j (alpha_j + 2 C(k+1-j, 2))`, the bound for terms carrying two
/// binomial factors.
pub fn weight2_valuation_bound(alphas: &[BigUint]) -> Result<BigUint> {
    weighted_bound(alphas, 2)
}

/// Maximal runs of a sorted valuation list in which the `t`-th successor of
/// the first element has valuation at most `first + t - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlateauProfile {
    pub lengths: Vec<usize>,
    /// Valuation of the first element of each plateau.
    pub firsts: Vec<BigUint>,
}

impl PlateauProfile {
    pub fn new(vals: &[BigUint]) -> Result<Self> {
        check_sorted(vals)?;
        let mut lengths = Vec::new();
        let mut firsts = Vec::new();
        let mut start = 0;
        while start < vals.len() {
            let first = &vals[start];
            let mut len = 1;
            while start + len < vals.len() {
                let t = len as u64;
                if &vals[start + len] + 1u32 > first + t {
                    break;
                }
                len += 1;
            }
            lengths.push(len);
            firsts.push(first.clone());
            start += len;
        }
        Ok(PlateauProfile { lengths, firsts })
    }

    pub fn total(&self) -> usize {
        self.lengths.iter().sum()
    }
}

/// `sum_i (p_i val_i + C(p_i, 2)) - C(k, 2)`, a lower bound on the valuation
/// of the Wronskian of a family with the given sorted valuations.
pub fn plateau_bound(vals: &[BigUint]) -> Result<BigInt> {
    let prof = PlateauProfile::new(vals)?;
    let k = prof.total() as u64;
    let sum: BigUint = prof
        .lengths
        .iter()
        .zip(&prof.firsts)
        .map(|(&p, v)| v * p + c2(p as u64))
        .sum();
    Ok(BigInt::from(sum) - BigInt::from(c2(k)))
}

/// Data of a sum `sum_j a_j prod_i f_i^alpha_ij` probed at a point `xi`:
/// `f_i` has degree `degrees[i]` and `xi` is a root of `f_i` of multiplicity
/// `mults[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiBoundInput {
    pub degrees: Vec<u64>,
    pub mults: Vec<u64>,
    /// `alphas[i][j]`, one row per factor, one column per term.
    pub alphas: Vec<Vec<BigUint>>,
}

impl MultiBoundInput {
    fn validate(&self) -> Result<usize> {
        let m = self.degrees.len();
        if m == 0 || self.mults.len() != m || self.alphas.len() != m {
            return Err(domain(
                "degrees, multiplicities and exponent rows must have equal nonzero length",
            ));
        }
        let k = self.alphas[0].len();
        if k == 0 || self.alphas.iter().any(|r| r.len() != k) {
            return Err(domain("exponent rows must have equal nonzero length"));
        }
        if let Some(i) = (0..m).find(|&i| self.mults[i] > self.degrees[i]) {
            return Err(domain(format!(
                "multiplicity {} exceeds degree {} for factor {i}",
                self.mults[i], self.degrees[i]
            )));
        }
        Ok(k)
    }
}

/// `max_j sum_i (mu_i alpha_ij + (d_i - mu_i) C(k+1-j, 2))`. With
/// `order_opt` the columns are first sorted by `sum_i mu_i alpha_ij`, which
/// never increases the result.
pub fn generalized_multiplicity_bound(input: &MultiBoundInput, order_opt: bool) -> Result<BigUint> {
    let k = input.validate()?;
    let slack: u64 = input.degrees.iter().zip(&input.mults).map(|(d, mu)| d - mu).sum();
    let mut weights: Vec<BigUint> = (0..k)
        .map(|j| {
            input
                .alphas
                .iter()
                .zip(&input.mults)
                .map(|(row, &mu)| &row[j] * mu)
                .sum()
        })
        .collect();
    if order_opt {
        weights.sort();
    }
    Ok(weights
        .iter()
        .enumerate()
        .map(|(j, w)| w + c2((k - j) as u64) * slack)
        .max()
        .unwrap())
}

/// Ok when `p > max_j (alpha_j + d beta_j)` (always in characteristic zero),
/// the condition under which [`valuation_bound`] holds in characteristic `p`.
pub fn fp_precondition_check<F: Field>(p: &BinomExprPoly<F>) -> Result<()> {
    let ch = p.field().characteristic();
    if ch.is_zero() {
        return Ok(());
    }
    let max = p.max_degree();
    if ch > max {
        Ok(())
    } else {
        Err(Error::CharacteristicTooSmall { p: ch, max_degree: max })
    }
}

fn q(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

/// `(2k+3)/(2j+1) C(k+1+j, k+1-j)`.
fn hajos_coeff(k: u64, j: u64) -> BigRational {
    BigRational::new(BigInt::from(2 * k + 3), BigInt::from(2 * j + 1)) * q(binomial(k + 1 + j, k + 1 - j))
}

/// `P_k = -1 + (1+X)^(2k+3) - sum_{j=0..k} a_j X^(2j+1) (1+X)^(k+1-j)`, a
/// `(k+3)`-term expression equal to `X^(2k+3)`.
pub fn hajos_family(k: u64) -> Result<BinomExprPoly<Rationals>> {
    if k < 3 {
        return Err(domain(format!("hajos family needs k >= 3, got {k}")));
    }
    let mut terms = vec![Term::new(q(-1), 0u32, 0u32), Term::new(q(1), 0u32, 2 * k + 3)];
    for j in 0..=k {
        terms.push(Term::new(-hajos_coeff(k, j), 2 * j + 1, k + 1 - j));
    }
    Ok(BinomExprPoly::new(Rationals, q(1), q(1), terms))
}

/// `C(n, r)` for integer `r`, zero outside `0..=n`.
fn binom_i(n: i64, r: i64) -> BigRational {
    if n < 0 || r < 0 || r > n {
        BigRational::zero()
    } else {
        q(binomial(n as u64, r as u64))
    }
}

/// Summand of the coefficient identity: `(2k+3)/(2j+1) C(k+1+j, k+1-j)
/// C(k+1-j, m-2j-1)`.
fn wz_summand(k: i64, m: i64, j: i64) -> BigRational {
    if j < 0 || j > k {
        return BigRational::zero();
    }
    hajos_coeff(k as u64, j as u64) * binom_i(k + 1 - j, m - 2 * j - 1)
}

fn wz_f(k: i64, m: i64, j: i64) -> BigRational {
    wz_summand(k, m, j) / binom_i(2 * k + 3, m)
}

/// `2j(2j+1)(k+j+2-m) / ((2k+3-m)(2j-m))`, `None` at poles.
fn wz_r(k: i64, m: i64, j: i64) -> Option<BigRational> {
    let den = (2 * k + 3 - m) * (2 * j - m);
    (den != 0).then(|| BigRational::new(BigInt::from(2 * j * (2 * j + 1) * (k + j + 2 - m)), BigInt::from(den)))
}

/// Exact check of the coefficient identity
/// `sum_j summand(m, j) = C(2k+3, m)` for `0 < m < 2k+3`, of the recurrence
/// `m F(m+1,j) - m F(m,j) = F(m,j+1) R(m,j+1) - F(m,j) R(m,j)` wherever `R`
/// is defined, and of the base case `sum_j F(2k+2, j) = 1` with a single
/// nonzero term at `j = k`. Returns the first failing `m`.
pub fn wz_identity_check(k: u64) -> Result<std::result::Result<(), u64>> {
    if k < 3 {
        return Err(domain(format!("certificate check needs k >= 3, got {k}")));
    }
    let k = k as i64;
    let top = 2 * k + 3;
    for m in 1..top {
        let sum: BigRational = (0..=k).map(|j| wz_summand(k, m, j)).sum();
        if sum != binom_i(top, m) {
            return Ok(Err(m as u64));
        }
        for j in 0..=k {
            let (Some(r1), Some(r0)) = (wz_r(k, m, j + 1), wz_r(k, m, j)) else {
                continue;
            };
            let mq = q(m);
            let lhs = &mq * wz_f(k, m + 1, j) - &mq * wz_f(k, m, j);
            let rhs = wz_f(k, m, j + 1) * r1 - wz_f(k, m, j) * r0;
            if lhs != rhs {
                return Ok(Err(m as u64));
            }
        }
    }
    let base: Vec<BigRational> = (0..=k).map(|j| wz_f(k, top - 1, j)).collect();
    let nonzero: Vec<usize> = (0..base.len()).filter(|&j| !base[j].is_zero()).collect();
    if nonzero != [k as usize] || !base[k as usize].is_one() {
        return Ok(Err((top - 1) as u64));
    }
    Ok(Ok(()))
}

/// Best instance found by [`max_valuation_search`].
#[derive(Clone, Debug, PartialEq)]
pub struct SearchResult {
    /// `val(P) - alpha_1` of the witness.
    pub gain: u64,
    pub witness: BinomExprPoly<Rationals>,
}

/// Search parameters. The search never claims optimality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchParams {
    pub k: usize,
    pub exp_cap: u64,
    pub coeff_cap: u64,
    pub seed: u64,
    /// Number of exponent families examined when exhaustive enumeration would
    /// be larger.
    pub budget: usize,
}

impl Default for SearchParams {
    fn default() -> Self {
        SearchParams {
            k: 3,
            exp_cap: 8,
            coeff_cap: 5,
            seed: 0,
            budget: 20_000,
        }
    }
}

type Family = Vec<(u64, u64)>;

fn all_families(k: usize, cap: u64) -> Vec<Family> {
    let pairs: Vec<(u64, u64)> = (0..=cap).flat_map(|a| (0..=cap).map(move |b| (a, b))).collect();
    let mut out = Vec::new();
    let mut cur: Family = Vec::new();
    fn rec(pairs: &[(u64, u64)], start: usize, k: usize, cur: &mut Family, out: &mut Vec<Family>) {
        if cur.len() == k {
            if cur[0].0 == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for i in start..pairs.len() {
            if cur.is_empty() && pairs[i].0 != 0 {
                continue;
            }
            cur.push(pairs[i]);
            rec(pairs, i + 1, k, cur, out);
            cur.pop();
        }
    }
    rec(&pairs, 0, k, &mut cur, &mut out);
    out
}

fn family_count(k: usize, cap: u64) -> f64 {
    // (cap+1) choices with alpha = 0 for the first, C(n, k-1) for the rest
    let n = ((cap + 1) * (cap + 1)) as f64;
    let mut c = cap as f64 + 1.0;
    for i in 0..k.saturating_sub(1) {
        c *= (n - i as f64) / (i as f64 + 1.0);
    }
    c
}

fn random_family<R: Rng>(k: usize, cap: u64, rng: &mut R) -> Family {
    loop {
        let mut fam: Family = (0..k)
            .map(|_| (rng.gen_range(0..=cap), rng.gen_range(0..=cap)))
            .collect();
        fam[0].0 = 0;
        fam.sort();
        fam.dedup();
        if fam.len() == k && fam[0].0 == 0 {
            return fam;
        }
    }
}

/// Largest `t` such that some nonzero combination of the family with every
/// coefficient nonzero has valuation `>= t`, with a witness combination.
fn best_in_family<R: Rng>(fam: &Family, coeff_cap: u64, rng: &mut R) -> Option<(u64, Vec<BigInt>)> {
    let f = Rationals;
    let dense: Vec<Vec<BigRational>> = fam
        .iter()
        .map(|&(a, b)| {
            let p = BinomExprPoly::new(f, q(1), q(1), vec![Term::new(q(1), a, b)]);
            expand_oracle(&p, u64::MAX).unwrap().into_coeffs()
        })
        .collect();
    let n = dense.iter().map(Vec::len).max().unwrap_or(0);
    let k = fam.len();
    let rows: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..k).map(|j| dense[j].get(i).cloned().unwrap_or_default()).collect())
        .collect();
    let full = rank(&f, &rows);
    if full == 0 {
        return None;
    }
    let cap = coeff_cap.max(1) as i64;
    for t in (0..=n).rev() {
        if rank(&f, &rows[..t]) == full {
            continue;
        }
        let basis = nullspace(&f, &rows[..t], k);
        for _ in 0..64 {
            let mut c = vec![BigRational::zero(); k];
            for b in &basis {
                let s = q(rng.gen_range(-cap..=cap));
                for (ci, bi) in c.iter_mut().zip(b) {
                    *ci += &s * bi;
                }
            }
            if c.iter().any(Zero::is_zero) {
                continue;
            }
            let nonzero_result = rows.iter().any(|r| {
                !r.iter()
                    .zip(&c)
                    .fold(BigRational::zero(), |acc, (x, y)| acc + x * y)
                    .is_zero()
            });
            if nonzero_result {
                return Some((t as u64, primitive_integer_vector(&c)));
            }
        }
    }
    None
}

/// Explores `sum_j a_j X^alpha_j (1+X)^beta_j` with `k` terms, `alpha_1 = 0`
/// and exponents at most `exp_cap`, looking for nonzero sums of large
/// valuation. Exhaustive over exponent families when their number is within
/// the budget, sampled otherwise; coefficients come from the nullspace of
/// the low-order coefficient constraints. Deterministic given the seed.
pub fn max_valuation_search(params: &SearchParams) -> Result<Option<SearchResult>> {
    if params.k == 0 || params.k > 5 {
        return Err(domain("search supports 1 <= k <= 5"));
    }
    if params.exp_cap > 12 {
        return Err(domain("search supports exponents up to 12"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let families = if family_count(params.k, params.exp_cap) <= params.budget as f64 {
        all_families(params.k, params.exp_cap)
    } else {
        let mut fams: Vec<Family> = (0..params.budget)
            .map(|_| random_family(params.k, params.exp_cap, &mut rng))
            .collect();
        fams.sort();
        fams.dedup();
        fams.shuffle(&mut rng);
        fams
    };
    let mut best: Option<(u64, Family, Vec<BigInt>)> = None;
    for fam in families {
        if let Some((t, c)) = best_in_family(&fam, params.coeff_cap, &mut rng) {
            if best.as_ref().is_none_or(|b| t > b.0) {
                best = Some((t, fam, c));
            }
        }
    }
    Ok(best.map(|(t, fam, c)| {
        let terms = fam
            .iter()
            .zip(c)
            .map(|(&(a, b), c)| Term::new(BigRational::from_integer(c), a, b))
            .collect();
        let witness = BinomExprPoly::new(Rationals, q(1), q(1), terms);
        let val = expand_oracle(&witness, u64::MAX).unwrap().valuation().unwrap() as u64;
        debug_assert!(val >= t);
        let alpha1 = witness.terms()[0].alpha.to_u64().unwrap();
        SearchResult {
            gain: val - alpha1,
            witness,
        }
    }))
}

/// Coefficients `a_0..a_k` of [`hajos_family`] as rationals.
pub fn hajos_coefficients(k: u64) -> Vec<BigRational> {
    (0..=k).map(|j| hajos_coeff(k, j)).collect()
}
