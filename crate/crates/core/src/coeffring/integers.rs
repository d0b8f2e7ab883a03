//! Integer combinatorics, primality and factorisation helpers.

use std::sync::OnceLock;

use num_bigint::{BigUint, RandBigInt};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{domain, Error, Result};

/// Rounds of the Miller-Rabin test used everywhere in the crate.
pub const PRIMALITY_ROUNDS: usize = 64;

/// Trial-division bound used before switching to Pollard rho.
pub const TRIAL_DIVISION_BOUND: u32 = 1_000_000;

/// `C(n, k)`, with `C(n, k) = 0` whenever `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    binomial_big(&BigUint::from(n), k)
}

/// `C(n, k)` for an arbitrary-precision `n` and a machine-sized `k`.
pub fn binomial_big(n: &BigUint, k: u64) -> BigUint {
    let kb = BigUint::from(k);
    if &kb > n {
        return BigUint::zero();
    }
    // use the smaller of k and n - k when n is itself small
    let k = match (n - &kb).to_u64() {
        Some(rest) if rest < k => rest,
        _ => k,
    };
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - BigUint::from(i);
        acc /= BigUint::from(i + 1);
    }
    acc
}

/// The falling factorial `m (m-1) ... (m-n+1)`; `1` for `n = 0`, `0` for `n > m`.
pub fn falling_factorial(m: &BigUint, n: u64) -> BigUint {
    if &BigUint::from(n) > m {
        return BigUint::zero();
    }
    (0..n).fold(BigUint::one(), |acc, i| acc * (m - BigUint::from(i)))
}

/// `C(n, k) mod p` via the base-`p` digits of `n` and `k`.
pub fn lucas_binomial(n: &BigUint, k: &BigUint, p: &BigUint) -> Result<BigUint> {
    if !is_probable_prime(p) {
        return Err(Error::NotPrime(p.clone()));
    }
    Ok(lucas_binomial_unchecked(n, k, p))
}

/// Lucas' theorem without the primality check on `p`.
pub(crate) fn lucas_binomial_unchecked(n: &BigUint, k: &BigUint, p: &BigUint) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let mut n = n.clone();
    let mut k = k.clone();
    let mut acc = BigUint::one();
    while !k.is_zero() {
        let (nq, nd) = n.div_rem(p);
        let (kq, kd) = k.div_rem(p);
        if kd > nd {
            return BigUint::zero();
        }
        acc = acc * small_digit_binomial(&nd, &kd, p) % p;
        n = nq;
        k = kq;
    }
    acc
}

/// `C(n, k) mod p` for digits `0 <= k <= n < p`.
fn small_digit_binomial(n: &BigUint, k: &BigUint, p: &BigUint) -> BigUint {
    let k = std::cmp::min(k.clone(), n - k);
    let k = k
        .to_u64()
        .expect("Lucas digit too large to expand; keep binomial arguments small");
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num = num * (n - BigUint::from(i)) % p;
        den = den * BigUint::from(i + 1) % p;
    }
    let inv = den.modpow(&(p - 2u32), p);
    num * inv % p
}

fn sieve(limit: u32) -> Vec<u32> {
    let limit = limit as usize;
    let mut composite = vec![false; limit + 1];
    let mut primes = Vec::new();
    for i in 2..=limit {
        if !composite[i] {
            primes.push(i as u32);
            let mut j = i * i;
            while j <= limit {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

/// All primes up to [`TRIAL_DIVISION_BOUND`].
pub fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| sieve(TRIAL_DIVISION_BOUND))
}

/// Miller-Rabin with [`PRIMALITY_ROUNDS`] rounds. Bases are drawn from a
/// fixed-seed generator, so the answer is reproducible.
pub fn is_probable_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if n < &two {
        return false;
    }
    for &q in small_primes().iter().take(64) {
        let q = BigUint::from(q);
        if n == &q {
            return true;
        }
        if (n % &q).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let n_minus_one = n - &one;
    let s = n_minus_one.trailing_zeros().unwrap_or(0);
    let d = &n_minus_one >> s;
    let mut rng = ChaCha8Rng::seed_from_u64(0x005e_ed0f_ba5e);
    'witness: for _ in 0..PRIMALITY_ROUNDS {
        let a = rng.gen_biguint_range(&two, &n_minus_one);
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_one {
            continue;
        }
        for _ in 1..s {
            x = &x * &x % n;
            if x == n_minus_one {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A probable prime with exactly `bits` bits that divides no nonzero member
/// of `forbidden`. Deterministic for a given generator state.
pub fn random_test_prime<R: Rng + ?Sized>(bits: u64, forbidden: &[BigUint], rng: &mut R) -> Result<BigUint> {
    if bits < 16 {
        return Err(domain(format!("test primes need at least 16 bits, got {bits}")));
    }
    let lo = BigUint::one() << (bits - 1);
    let hi = BigUint::one() << bits;
    let attempts = 64 * bits;
    for _ in 0..attempts {
        let mut cand = rng.gen_biguint_range(&lo, &hi);
        cand |= BigUint::one();
        if forbidden.iter().any(|f| !f.is_zero() && (f % &cand).is_zero()) {
            continue;
        }
        if is_probable_prime(&cand) {
            return Ok(cand);
        }
    }
    Err(Error::PrimeSearchExhausted { bits, attempts })
}

/// Prime factorisation as sorted `(prime, exponent)` pairs. `0` and `1` have
/// empty factorisations.
pub fn factorize(n: &BigUint) -> Vec<(BigUint, u32)> {
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    if n.is_zero() {
        return out;
    }
    let mut rest = n.clone();
    for &p in small_primes() {
        let pb = BigUint::from(p);
        if &pb * &pb > rest {
            break;
        }
        let mut e = 0;
        loop {
            let (q, r) = rest.div_rem(&pb);
            if !r.is_zero() {
                break;
            }
            rest = q;
            e += 1;
        }
        if e > 0 {
            out.push((pb, e));
        }
    }
    if !rest.is_one() {
        let mut stack = vec![rest];
        let mut large = Vec::new();
        while let Some(m) = stack.pop() {
            if m.is_one() {
                continue;
            }
            if is_probable_prime(&m) {
                large.push(m);
                continue;
            }
            let d = pollard_brent(&m);
            stack.push(&m / &d);
            stack.push(d);
        }
        large.sort();
        for p in large {
            match out.last_mut() {
                Some((q, e)) if *q == p => *e += 1,
                _ => out.push((p, 1)),
            }
        }
    }
    out.sort();
    out
}

/// Distinct prime factors of `n` that trial division up to
/// [`TRIAL_DIVISION_BOUND`] reveals, plus the remaining cofactor when it is a
/// probable prime. Never runs a factoring algorithm beyond that.
pub fn trial_prime_factors(n: &BigUint) -> Vec<BigUint> {
    let mut out = Vec::new();
    if n.is_zero() {
        return out;
    }
    let mut rest = n.clone();
    for &p in small_primes() {
        let pb = BigUint::from(p);
        if &pb * &pb > rest {
            break;
        }
        let mut hit = false;
        loop {
            let (q, r) = rest.div_rem(&pb);
            if !r.is_zero() {
                break;
            }
            rest = q;
            hit = true;
        }
        if hit {
            out.push(pb);
        }
    }
    if !rest.is_one() && is_probable_prime(&rest) {
        out.push(rest);
    }
    out
}

/// A nontrivial divisor of the composite `n` (Brent's variant of rho).
fn pollard_brent(n: &BigUint) -> BigUint {
    if n.is_even() {
        return BigUint::from(2u32);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xb4e47);
    let one = BigUint::one();
    loop {
        let c = rng.gen_biguint_range(&one, n);
        let mut y = rng.gen_biguint_range(&one, n);
        let m = 128u64;
        let mut g = one.clone();
        let mut r = 1u64;
        let mut q = one.clone();
        let mut x = y.clone();
        let mut ys = y.clone();
        let f = |v: &BigUint| (v * v + &c) % n;
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..m.min(r - k) {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = q * diff % n;
                }
                g = q.gcd(n);
                k += m;
            }
            r *= 2;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if &g != n {
            return g;
        }
    }
}

/// All positive divisors of `n`, ascending. Fails once more than `cap`
/// divisors would be produced.
pub fn divisors(n: &BigUint, cap: usize) -> Result<Vec<BigUint>> {
    let mut divs = vec![BigUint::one()];
    for (p, e) in factorize(n) {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = d.clone();
            next.push(pk.clone());
            for _ in 0..e {
                pk = &pk * &p;
                next.push(pk.clone());
            }
        }
        if next.len() > cap {
            return Err(Error::TooManyCandidates(next.len()));
        }
        divs = next;
    }
    divs.sort();
    Ok(divs)
}

/// Number of bits in `n`, with `bit_size(0) = 1` so every value costs at
/// least one bit.
pub fn bit_size(n: &BigUint) -> u64 {
    n.bits().max(1)
}
