//! Roots of univariate polynomials: rational roots of lacunary and dense
//! polynomials over Q, and roots in `F_{p^s}` of dense polynomials.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::coeffring::{divisors, is_probable_prime, primitive_integer_vector, Field, GaloisField, GfElem, Rationals};
use crate::error::{domain, Error, Result};
use crate::pit::{Certainty, PitField, PitOptions, ZeroTestVerdict};
use crate::poly::{DensePoly, LacunaryUni};

/// Cap on the number of rational candidates tried for one lacunary
/// polynomial.
pub const MAX_ROOT_CANDIDATES: usize = 1 << 16;

/// First prime tried for Hensel lifting of dense rational roots.
const HENSEL_PRIME_START: u64 = 1_000_003;

#[derive(Clone, Debug, PartialEq)]
pub struct RootList {
    /// Distinct roots, ascending, with multiplicities.
    pub roots: Vec<(BigRational, BigUint)>,
    pub certainty: Certainty,
}

/// Hands out a fresh random stream for every power-sum test drawn from one
/// seed.
pub(crate) struct SumTester {
    opts: PitOptions,
    stream: u64,
}

impl SumTester {
    pub(crate) fn new(opts: PitOptions) -> Self {
        SumTester { opts, stream: 0 }
    }

    pub(crate) fn with_extra_lambda(&self, extra: u32) -> Self {
        SumTester::new(PitOptions {
            lambda: self.opts.lambda + extra,
            seed: self.opts.seed ^ self.stream.rotate_left(32),
        })
    }

    pub(crate) fn test<F: PitField>(
        &mut self,
        field: &F,
        pairs: &[(F::Elem, BigUint)],
        base: &F::Elem,
    ) -> Result<ZeroTestVerdict> {
        self.stream += 1;
        field.power_sum_test(pairs, base, &self.opts, self.stream)
    }
}

pub(crate) fn ceil_log2(n: usize) -> u32 {
    n.max(1).next_power_of_two().trailing_zeros()
}

/// Multiplicity of `r` as a root of `f` by testing `f, f', f'', ...` at `r`.
/// Zero roots are read off the valuation. A nonzero root of a `k`-term
/// polynomial has multiplicity below `k`; reaching that cap is an error.
pub fn lacunary_root_multiplicity<F: PitField>(
    f: &LacunaryUni<F>,
    r: &F::Elem,
    opts: &PitOptions,
) -> Result<(BigUint, Certainty)> {
    root_multiplicity_with(f, r, &mut SumTester::new(*opts))
}

pub(crate) fn root_multiplicity_with<F: PitField>(
    f: &LacunaryUni<F>,
    r: &F::Elem,
    tester: &mut SumTester,
) -> Result<(BigUint, Certainty)> {
    let field = f.field();
    let Some(val) = f.valuation() else {
        return Err(domain("root multiplicity of the zero polynomial"));
    };
    if field.is_zero(r) {
        return Ok((val.clone(), Certainty::Deterministic));
    }
    let mut g = f.strip_valuation();
    let cap = g.len() - 1;
    let mut certainty = Certainty::Deterministic;
    for m in 0..=cap {
        let verdict = tester.test(field, g.terms(), r)?;
        if !verdict.is_zero() {
            return Ok((BigUint::from(m), certainty));
        }
        certainty = certainty.join(verdict.certainty);
        if m < cap {
            g = g.derivative()?;
        }
    }
    Err(Error::MultiplicityCap { cap, terms: cap + 1 })
}

/// All rational roots of a nonzero lacunary polynomial with multiplicities.
///
/// Nonzero candidates are `±n/d` with `n` dividing the trailing and `d` the
/// leading coefficient once denominators and `X^val` are cleared; each is
/// accepted by a power-sum zero test.
pub fn lacunary_univariate_rational_roots(f: &LacunaryUni<Rationals>, opts: &PitOptions) -> Result<RootList> {
    roots_with(f, &mut SumTester::new(*opts))
}

pub(crate) fn roots_with(f: &LacunaryUni<Rationals>, tester: &mut SumTester) -> Result<RootList> {
    let Some(val) = f.valuation() else {
        return Err(domain("rational roots of the zero polynomial"));
    };
    let mut roots = Vec::new();
    let mut certainty = Certainty::Deterministic;
    if !val.is_zero() {
        roots.push((BigRational::zero(), val.clone()));
    }
    let g = f.strip_valuation();
    if g.len() > 1 {
        let coeffs: Vec<BigRational> = g.terms().iter().map(|(c, _)| c.clone()).collect();
        let ints = primitive_integer_vector(&coeffs);
        let nums = divisors(ints[0].magnitude(), MAX_ROOT_CANDIDATES)?;
        let dens = divisors(ints[ints.len() - 1].magnitude(), MAX_ROOT_CANDIDATES)?;
        let count = 2 * nums.len() * dens.len();
        if count > MAX_ROOT_CANDIDATES {
            return Err(Error::TooManyCandidates(count));
        }
        let mut local = tester.with_extra_lambda(ceil_log2(count));
        for n in &nums {
            for d in dens.iter().filter(|d| n.gcd(d).is_one()) {
                for sign in [Sign::Minus, Sign::Plus] {
                    let r = BigRational::new(BigInt::from_biguint(sign, n.clone()), BigInt::from(d.clone()));
                    let (m, c) = root_multiplicity_with(&g, &r, &mut local)?;
                    if !m.is_zero() {
                        certainty = certainty.join(c);
                        roots.push((r, m));
                    }
                }
            }
        }
        tester.stream += local.stream;
    }
    roots.sort();
    Ok(RootList { roots, certainty })
}

/// Distinct rational roots of a nonzero dense polynomial, ascending.
///
/// The squarefree part is cleared to a primitive integer polynomial `g`;
/// its roots modulo a prime `l` not dividing the leading coefficient or the
/// discriminant are lifted `l`-adically past `2 |g(0)| |lc(g)|` and turned
/// into fractions by rational reconstruction, then checked exactly.
pub fn dense_rational_roots(f: &DensePoly<Rationals>) -> Vec<BigRational> {
    let Some(val) = f.valuation() else {
        return Vec::new();
    };
    let mut roots = Vec::new();
    if val > 0 {
        roots.push(BigRational::zero());
    }
    let f = DensePoly::new(Rationals, f.coeffs()[val..].to_vec());
    if f.degree() == Some(0) {
        return roots;
    }
    let g = f.exact_div(&f.gcd(&f.derivative())).expect("gcd divides");
    let ints = primitive_integer_vector(g.coeffs());
    roots.extend(integer_poly_rational_roots(&ints));
    roots.sort();
    roots
}

fn eval_mod(g: &[BigInt], r: &BigInt, m: &BigInt) -> BigInt {
    g.iter().rev().fold(BigInt::zero(), |acc, c| (acc * r + c).mod_floor(m))
}

fn int_derivative(g: &[BigInt]) -> Vec<BigInt> {
    g.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect()
}

fn inv_mod(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

/// Smallest prime from the start point that keeps the degree and
/// squarefreeness of `g` modulo it.
fn hensel_prime(g: &[BigInt]) -> GaloisField {
    let dg = int_derivative(g);
    let mut ell = BigUint::from(HENSEL_PRIME_START);
    loop {
        if is_probable_prime(&ell) {
            let field = GaloisField::prime_unchecked(ell.clone());
            let reduce =
                |cs: &[BigInt]| DensePoly::new(field.clone(), cs.iter().map(|c| field.from_bigint(c)).collect());
            let gp = reduce(g);
            if gp.degree() == Some(g.len() - 1) && gp.gcd(&reduce(&dg)).degree() == Some(0) {
                return field;
            }
        }
        ell += 2u32;
    }
}

/// `p/q` with `|p| <= nbound`, `0 < q <= dbound` and `p = a q (mod m)`,
/// unique when `m > 2 nbound dbound`.
fn rational_reconstruction(a: &BigInt, m: &BigInt, nbound: &BigInt, dbound: &BigInt) -> Option<BigRational> {
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while &r1 > nbound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        (r0, r1, t0, t1) = (r1, r2, t1, t2);
    }
    (!t1.is_zero() && &t1.abs() <= dbound).then(|| BigRational::new(r1, t1))
}

/// Rational roots of a squarefree integer polynomial with `g(0) != 0`.
fn integer_poly_rational_roots(g: &[BigInt]) -> Vec<BigRational> {
    let n = g.len() - 1;
    if n == 1 {
        return vec![BigRational::new(-g[0].clone(), g[1].clone())];
    }
    let tail = g[0].abs();
    let lead = g[n].abs();
    let bound = BigInt::from(2) * &tail * &lead;
    let field = hensel_prime(g);
    let ell = BigInt::from(field.p().clone());
    let dg = int_derivative(g);
    let gp = DensePoly::new(field.clone(), g.iter().map(|c| field.from_bigint(c)).collect());
    let mut out = Vec::new();
    for r0 in fp_dense_roots(&gp, 0) {
        let mut r = BigInt::from(r0.0[0].clone());
        let mut m = ell.clone();
        while m <= bound {
            m = &m * &m;
            let inv = inv_mod(&eval_mod(&dg, &r, &m), &m).expect("simple root modulo the lifting prime");
            r = (&r - eval_mod(g, &r, &m) * inv).mod_floor(&m);
        }
        if let Some(q) = rational_reconstruction(&r, &m, &tail, &lead) {
            let value = g.iter().rev().fold(BigRational::zero(), |acc, c| {
                acc * &q + BigRational::from_integer(c.clone())
            });
            if value.is_zero() {
                out.push(q);
            }
        }
    }
    out
}

/// All roots in `F_{p^s}` of a nonzero dense polynomial, sorted by
/// coordinates: `gcd(f, X^q - X)` split into linear factors by random
/// equal-degree splitting. Deterministic for a fixed seed.
pub fn fp_dense_roots(f: &DensePoly<GaloisField>, seed: u64) -> Vec<GfElem> {
    let field = f.field().clone();
    if f.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let x = DensePoly::monomial(field.clone(), field.one(), 1);
    let g = f.monic();
    let linear_part = g.gcd(&x.pow_mod(&field.order(), &g).sub(&x));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut roots = Vec::new();
    let mut stack = vec![linear_part];
    while let Some(h) = stack.pop() {
        match h.degree() {
            Some(0) | None => {}
            Some(1) => roots.push(field.neg(&h.coeff(0))),
            Some(_) => {
                let d = split_once(&h, &mut rng);
                stack.push(h.exact_div(&d).expect("split factor divides"));
                stack.push(d);
            }
        }
    }
    roots.sort();
    roots
}

/// A proper monic factor of a product of distinct monic linear factors of
/// degree at least two.
fn split_once(h: &DensePoly<GaloisField>, rng: &mut ChaCha8Rng) -> DensePoly<GaloisField> {
    let field = h.field();
    let n = h.degree().unwrap();
    let two = BigUint::from(2u32);
    loop {
        let a = field.random_elem(rng);
        let probe = if field.p() == &two {
            // absolute trace of a*X down to F_2
            let mut t = DensePoly::monomial(field.clone(), a, 1).rem(h);
            let mut acc = t.clone();
            for _ in 1..field.degree() {
                t = t.mul(&t).rem(h);
                acc = acc.add(&t);
            }
            acc
        } else {
            let shifted = DensePoly::new(field.clone(), vec![a, field.one()]);
            let e = (field.order() - 1u32) / 2u32;
            shifted.pow_mod(&e, h).sub(&DensePoly::one(field.clone()))
        };
        let d = h.gcd(&probe);
        if matches!(d.degree(), Some(k) if k > 0 && k < n) {
            return d;
        }
    }
}
