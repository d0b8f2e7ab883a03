//! Test-side oracles, written independently of the library: schoolbook
//! expansion over Q and F_p, sparse bivariate products, rank computations and
//! a rational-root-theorem search for linear and multilinear factors.

#![allow(dead_code)]

use std::collections::BTreeMap;

use lacunary::coeffring::{Field, GaloisField, Rationals};
use lacunary::factors::LinearFactor;
use lacunary::poly::{BinomExprPoly, LacunaryPoly, Term};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

pub fn qr(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

/// `C(n, k)` by the multiplicative formula.
pub fn choose(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

pub fn qpow(x: &BigRational, e: u64) -> BigRational {
    (0..e).fold(BigRational::one(), |acc, _| acc * x)
}

// ---------------------------------------------------------------------------
// Dense univariate polynomials over Q as coefficient vectors.

pub type QPoly = Vec<BigRational>;

pub fn trim(mut p: QPoly) -> QPoly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

pub fn valuation(p: &[BigRational]) -> Option<usize> {
    p.iter().position(|c| !c.is_zero())
}

pub fn qpoly_mul(a: &[BigRational], b: &[BigRational]) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

pub fn qpoly_add(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] += x;
    }
    trim(out)
}

pub fn qpoly_pow(a: &[BigRational], e: u64) -> QPoly {
    (0..e).fold(vec![BigRational::one()], |acc, _| qpoly_mul(&acc, a))
}

pub fn qpoly_eval(p: &[BigRational], x: &BigRational) -> BigRational {
    p.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
}

/// Multiplicity of `xi` as a root of a nonzero `p`, by repeated synthetic
/// division.
pub fn root_multiplicity(p: &[BigRational], xi: &BigRational) -> usize {
    let mut p = trim(p.to_vec());
    assert!(!p.is_empty(), "zero polynomial");
    let mut m = 0;
    loop {
        let n = p.len();
        let mut quo = vec![BigRational::zero(); n.saturating_sub(1)];
        let mut acc = BigRational::zero();
        for i in (0..n).rev() {
            acc = acc * xi + &p[i];
            if i > 0 {
                quo[i - 1] = acc.clone();
            }
        }
        if !acc.is_zero() || n == 1 {
            return m;
        }
        m += 1;
        p = trim(quo);
    }
}

/// `sum a X^alpha (u X^d + v)^beta` by the binomial theorem.
pub fn expand_q(u: &BigRational, v: &BigRational, d: u64, terms: &[(BigRational, u64, u64)]) -> QPoly {
    let deg = terms.iter().map(|(_, a, b)| a + d * b).max().unwrap_or(0) as usize;
    let mut out = vec![BigRational::zero(); deg + 1];
    for (c, a, b) in terms {
        for i in 0..=*b {
            let coeff = c * BigRational::from_integer(choose(*b, i)) * qpow(u, i) * qpow(v, b - i);
            out[(a + d * i) as usize] += coeff;
        }
    }
    trim(out)
}

/// `sum a X^alpha (u X + v)^beta` over `F_p`, `p < 2^32`.
pub fn expand_mod(p: u64, u: u64, v: u64, terms: &[(u64, u64, u64)]) -> Vec<u64> {
    let deg = terms.iter().map(|(_, a, b)| a + b).max().unwrap_or(0) as usize;
    let mut out = vec![0u64; deg + 1];
    for &(c, a, b) in terms {
        // row of C(b, i) mod p by Pascal's rule
        let mut row = vec![1u64];
        for _ in 0..b {
            let mut next = vec![1u64; row.len() + 1];
            for i in 1..row.len() {
                next[i] = (row[i - 1] + row[i]) % p;
            }
            row = next;
        }
        for (i, binom) in row.iter().enumerate() {
            let t = c * binom % p * pow_mod(u, i as u64, p) % p * pow_mod(v, b - i as u64, p) % p;
            let idx = a as usize + i;
            out[idx] = (out[idx] + t) % p;
        }
    }
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

// ---------------------------------------------------------------------------
// Binomial-expression instances.

pub fn binom_q(
    u: &BigRational,
    v: &BigRational,
    terms: &[(BigRational, BigUint, BigUint)],
) -> BinomExprPoly<Rationals> {
    BinomExprPoly::new(
        Rationals,
        u.clone(),
        v.clone(),
        terms
            .iter()
            .map(|(c, a, b)| Term::new(c.clone(), a.clone(), b.clone()))
            .collect(),
    )
}

pub fn binom_small(u: i64, v: i64, terms: &[(BigRational, u64, u64)]) -> BinomExprPoly<Rationals> {
    binom_q(
        &q(u),
        &q(v),
        &terms
            .iter()
            .map(|(c, a, b)| (c.clone(), big(*a), big(*b)))
            .collect::<Vec<_>>(),
    )
}

/// Rewrites `c X^a (uX+v)^b` (with `b >= 1`) as
/// `c u X^(a+1) (uX+v)^(b-1) + c v X^a (uX+v)^(b-1)`.
pub fn rewrite_once(
    u: &BigRational,
    v: &BigRational,
    t: &(BigRational, BigUint, BigUint),
) -> Vec<(BigRational, BigUint, BigUint)> {
    let (c, a, b) = t;
    assert!(!b.is_zero());
    let b1 = b - 1u32;
    let mut out = Vec::new();
    if !u.is_zero() {
        out.push((c * u, a + 1u32, b1.clone()));
    }
    if !v.is_zero() {
        out.push((c * v, a.clone(), b1));
    }
    out
}

/// `terms - rewritten(terms)`: an expression equal to zero whose terms do
/// not cancel syntactically. Terms with `beta = 0` are kept as they are.
pub fn engineered_zero<R: Rng>(
    rng: &mut R,
    u: &BigRational,
    v: &BigRational,
    terms: &[(BigRational, BigUint, BigUint)],
) -> Vec<(BigRational, BigUint, BigUint)> {
    let mut rewritten: Vec<_> = terms.to_vec();
    for _ in 0..rng.gen_range(1..4) {
        let mut next = Vec::new();
        for t in rewritten {
            if !t.2.is_zero() && rng.gen_bool(0.6) {
                next.extend(rewrite_once(u, v, &t));
            } else {
                next.push(t);
            }
        }
        rewritten = next;
    }
    let mut out = terms.to_vec();
    out.extend(rewritten.into_iter().map(|(c, a, b)| (-c, a, b)));
    out
}

/// `-X^(k-1) + sum_t (-1)^(k-1-t) C(k-1, t) (1+X)^t`, a `(k+1)`-term zero.
pub fn tightness_identity(k: u64) -> Vec<(BigRational, u64, u64)> {
    let n = k - 1;
    let mut terms = vec![(q(-1), n, 0)];
    for t in 0..=n {
        let sign = if (n - t).is_multiple_of(2) { 1 } else { -1 };
        terms.push((BigRational::from_integer(choose(n, t) * sign), 0, t));
    }
    terms
}

// ---------------------------------------------------------------------------
// Sparse bivariate polynomials with big exponents, for planting factors.

pub type Sparse = BTreeMap<(BigUint, BigUint), BigRational>;

pub fn sparse(terms: &[(i64, BigUint, BigUint)]) -> Sparse {
    let mut out = Sparse::new();
    for (c, a, b) in terms {
        *out.entry((a.clone(), b.clone())).or_insert_with(BigRational::zero) += q(*c);
    }
    out.retain(|_, c| !c.is_zero());
    out
}

pub fn sparse_mul(a: &Sparse, b: &Sparse) -> Sparse {
    let mut out = Sparse::new();
    for ((a1, b1), c1) in a {
        for ((a2, b2), c2) in b {
            *out.entry((a1 + a2, b1 + b2)).or_insert_with(BigRational::zero) += c1 * c2;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

pub fn to_lacunary(p: &Sparse) -> LacunaryPoly<Rationals> {
    LacunaryPoly::new(
        Rationals,
        p.iter()
            .map(|((a, b), c)| Term::new(c.clone(), a.clone(), b.clone()))
            .collect(),
    )
}

/// `Y - uX - v`.
pub fn line(u: i64, v: i64) -> Sparse {
    line_q(&q(u), &q(v))
}

pub fn line_q(u: &BigRational, v: &BigRational) -> Sparse {
    let mut out = Sparse::new();
    out.insert((big(0), big(1)), q(1));
    out.insert((big(1), big(0)), -u);
    out.insert((big(0), big(0)), -v);
    out.retain(|_, c| !c.is_zero());
    out
}

/// `XY + bY - aX - c`.
pub fn multilinear(a: i64, b: i64, c: i64) -> Sparse {
    sparse(&[
        (1, big(1), big(1)),
        (b, big(0), big(1)),
        (-a, big(1), big(0)),
        (-c, big(0), big(0)),
    ])
}

/// A random cofactor with `terms` terms and exponents below `2^bits`; it
/// always has a constant term, so no monomial divides it.
pub fn random_cofactor<R: Rng>(rng: &mut R, terms: usize, bits: u32) -> Sparse {
    let mut spec = vec![(rng.gen_range(1..10) * if rng.gen() { 1 } else { -1 }, big(0), big(0))];
    for _ in 1..terms {
        let c = rng.gen_range(1..10) * if rng.gen() { 1 } else { -1 };
        spec.push((
            c,
            big(rng.gen_range(0..1u64 << bits)),
            big(rng.gen_range(0..1u64 << bits)),
        ));
    }
    sparse(&spec)
}

// ---------------------------------------------------------------------------
// Dense bivariate polynomials over Q: `grid[i][j]` is the coefficient of
// `X^i Y^j`.

pub type Grid = Vec<Vec<BigRational>>;

pub fn to_grid(p: &Sparse) -> Grid {
    let xd = p.keys().map(|k| k.0.to_usize().unwrap()).max().unwrap_or(0);
    let yd = p.keys().map(|k| k.1.to_usize().unwrap()).max().unwrap_or(0);
    let mut g = vec![vec![BigRational::zero(); yd + 1]; xd + 1];
    for ((a, b), c) in p {
        g[a.to_usize().unwrap()][b.to_usize().unwrap()] = c.clone();
    }
    g
}

fn grid_is_zero(g: &Grid) -> bool {
    g.iter().all(|r| r.iter().all(Zero::is_zero))
}

/// `P(x0, Y)` as a polynomial in `Y`.
fn specialize_x(g: &Grid, x0: &BigRational) -> QPoly {
    let yd = g.first().map_or(0, Vec::len);
    let mut out = vec![BigRational::zero(); yd];
    let mut pow = BigRational::one();
    for row in g {
        for (j, c) in row.iter().enumerate() {
            out[j] += c * &pow;
        }
        pow *= x0;
    }
    trim(out)
}

/// `(X + b)^deg_Y * P(X, (aX + c)/(X + b))` when `den = (b, 1)`, or
/// `P(X, aX + c)` when `den` is `None`; zero exactly when the factor divides.
fn substitute(g: &Grid, num: (&BigRational, &BigRational), den: Option<&BigRational>) -> QPoly {
    let yd = g.first().map_or(0, Vec::len).saturating_sub(1) as u64;
    let num_poly = vec![num.1.clone(), num.0.clone()];
    let den_poly = den.map(|b| vec![b.clone(), BigRational::one()]);
    let mut total = Vec::new();
    for (i, row) in g.iter().enumerate() {
        for (j, c) in row.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut t = vec![BigRational::zero(); i];
            t.push(c.clone());
            t = qpoly_mul(&t, &qpoly_pow(&num_poly, j as u64));
            if let Some(dp) = &den_poly {
                t = qpoly_mul(&t, &qpoly_pow(dp, yd - j as u64));
            }
            total = qpoly_add(&total, &t);
        }
    }
    total
}

/// Rational roots of a nonzero polynomial by the rational root theorem:
/// candidates `±r/s` with `r | a_0` and `s | a_n` after clearing
/// denominators and stripping the power of `X`.
pub fn rational_roots(p: &[BigRational]) -> Vec<BigRational> {
    let p = trim(p.to_vec());
    if p.len() <= 1 {
        return Vec::new();
    }
    let mut roots = Vec::new();
    let v = valuation(&p).unwrap();
    if v > 0 {
        roots.push(BigRational::zero());
    }
    let p = &p[v..];
    let lcm = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p
        .iter()
        .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let (a0, an) = (ints[0].abs(), ints[ints.len() - 1].abs());
    for r in small_divisors(&a0) {
        for s in small_divisors(&an) {
            for sign in [1, -1] {
                let x = BigRational::new(BigInt::from(sign) * &r, s.clone());
                if !roots.contains(&x) && qpoly_eval(p, &x).is_zero() {
                    roots.push(x);
                }
            }
        }
    }
    roots
}

fn small_divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.to_u64().expect("oracle coefficients fit in u64");
    (1..=n).filter(|d| n.is_multiple_of(*d)).map(BigInt::from).collect()
}

/// Multiplicity of `Y - uX - v` (`den = None`) or of `XY + bY - aX - c`
/// (`den = Some(b)`, numerator `aX + c`) by repeated exact division.
fn divide_out(g: &Grid, u: &BigRational, v: &BigRational, den: Option<&BigRational>) -> usize {
    let mut m = 0;
    let mut g = g.clone();
    while !grid_is_zero(&g) && substitute(&g, (u, v), den).is_empty() {
        g = divide_grid(&g, u, v, den);
        m += 1;
    }
    m
}

/// Exact quotient by `Y - uX - v` or `(X + b) Y - (uX + v)`, by long division
/// in `Y` over `Q[X]`.
fn divide_grid(g: &Grid, u: &BigRational, v: &BigRational, den: Option<&BigRational>) -> Grid {
    let yd = g[0].len() - 1;
    // columns as polynomials in X
    let mut cols: Vec<QPoly> = (0..=yd)
        .map(|j| trim(g.iter().map(|r| r[j].clone()).collect()))
        .collect();
    let lead: QPoly = match den {
        None => vec![BigRational::one()],
        Some(b) => vec![b.clone(), BigRational::one()],
    };
    let tail: QPoly = vec![-v.clone(), -u.clone()];
    let mut quo: Vec<QPoly> = vec![Vec::new(); yd];
    for j in (1..=yd).rev() {
        let c = qpoly_div_exact(&cols[j], &lead);
        cols[j - 1] = qpoly_add(
            &cols[j - 1],
            &qpoly_mul(&c, &tail).iter().map(|x| -x).collect::<Vec<_>>(),
        );
        quo[j - 1] = c;
    }
    assert!(cols[0].is_empty(), "division was not exact");
    let xd = quo.iter().map(Vec::len).max().unwrap_or(1).max(1);
    (0..xd)
        .map(|i| {
            (0..yd.max(1))
                .map(|j| quo.get(j).and_then(|c| c.get(i)).cloned().unwrap_or_default())
                .collect()
        })
        .collect()
}

fn qpoly_div_exact(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let mut rem = trim(a.to_vec());
    let b = trim(b.to_vec());
    if rem.len() < b.len() {
        assert!(rem.is_empty(), "division was not exact");
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); rem.len() - b.len() + 1];
    while rem.len() >= b.len() && !rem.is_empty() {
        let shift = rem.len() - b.len();
        let c = rem.last().unwrap() / b.last().unwrap();
        for (i, x) in b.iter().enumerate() {
            rem[shift + i] -= &c * x;
        }
        out[shift] = c;
        rem = trim(rem);
    }
    assert!(rem.is_empty(), "division was not exact");
    trim(out)
}

/// All linear factors of a small dense polynomial, as `(kind, u, v, w)` with
/// the factor `uX + vY + w` scaled so that the first nonzero of `(v, u)` is 1,
/// and their multiplicities.
pub fn oracle_linear_factors(p: &Sparse) -> BTreeMap<(BigRational, BigRational, BigRational), usize> {
    let g = to_grid(p);
    let mut out = BTreeMap::new();
    // X - a: a is a common root of every column; use the last column's roots.
    let cols: Vec<QPoly> = (0..g[0].len())
        .map(|j| trim(g.iter().map(|r| r[j].clone()).collect()))
        .collect();
    let some_col = cols.iter().find(|c| !c.is_empty()).unwrap();
    for a in rational_roots(some_col) {
        let m = cols
            .iter()
            .filter(|c| !c.is_empty())
            .map(|c| root_multiplicity(c, &a))
            .min()
            .unwrap();
        if m > 0 {
            out.insert((BigRational::one(), BigRational::zero(), -a), m);
        }
    }
    // Y - uX - v: u is a root of the top homogeneous part at X = 1, v a root
    // of P(x0, Y) - u x0 for a specialization that keeps the Y-degree.
    let total = g
        .iter()
        .enumerate()
        .flat_map(|(i, r)| {
            r.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(move |(j, _)| i + j)
        })
        .max()
        .unwrap();
    let top: QPoly = trim(
        (0..=total)
            .map(|j| g.get(total - j).and_then(|r| r.get(j)).cloned().unwrap_or_default())
            .collect(),
    );
    let yd = g[0].len() - 1;
    if yd == 0 {
        return out;
    }
    let x0 = (1..)
        .map(|x: i64| q(x))
        .find(|x0| specialize_x(&g, x0).len() == yd + 1)
        .unwrap();
    let at_x0 = specialize_x(&g, &x0);
    let y_roots = rational_roots(&at_x0);
    for u in rational_roots(&top) {
        for y in &y_roots {
            let v = y - &u * &x0;
            let m = divide_out(&g, &u, &v, None);
            if m > 0 {
                out.insert((-u.clone(), BigRational::one(), -v), m);
            }
        }
    }
    out
}

/// All irreducible multilinear factors `XY + bY - aX - c` (`c != ab`) of a
/// small dense polynomial, keyed by `(a, b, c)`.
pub fn oracle_multilinear_factors(p: &Sparse) -> BTreeMap<(BigRational, BigRational, BigRational), usize> {
    let g = to_grid(p);
    let mut out = BTreeMap::new();
    let yd = g[0].len() - 1;
    let xd = g.len() - 1;
    if xd == 0 || yd == 0 {
        return out;
    }
    // a is a root of the leading coefficient in X, -b of the leading
    // coefficient in Y.
    let lead_x: QPoly = trim(g[xd].clone());
    let lead_y: QPoly = trim(g.iter().map(|r| r[yd].clone()).collect());
    for a in rational_roots(&lead_x) {
        for nb in rational_roots(&lead_y) {
            let b = -nb;
            let x0 = (1..)
                .map(|x: i64| q(x))
                .find(|x0| x0 + &b != BigRational::zero() && specialize_x(&g, x0).len() == yd + 1)
                .unwrap();
            for y in rational_roots(&specialize_x(&g, &x0)) {
                let c = &y * (&x0 + &b) - &a * &x0;
                if c == &a * &b {
                    continue;
                }
                let m = divide_out(&g, &a, &c, Some(&b));
                if m > 0 {
                    out.insert((a.clone(), b.clone(), c), m);
                }
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Exact rank by Gaussian elimination.

pub fn rank_q(mut rows: Vec<Vec<BigRational>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(piv) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, piv);
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = &row[c] / &pivot[c];
                for (x, y) in row[c..].iter_mut().zip(&pivot[c..]) {
                    *x -= &f * y;
                }
            }
        }
        r += 1;
    }
    r
}

pub fn rank_mod(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(piv) = (r..rows.len()).find(|&i| !rows[i][c].is_multiple_of(p)) else {
            continue;
        };
        rows.swap(r, piv);
        let inv = pow_mod(rows[r][c], p - 2, p);
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_multiple_of(p) {
                let f = row[c] * inv % p;
                for (x, y) in row[c..].iter_mut().zip(&pivot[c..]) {
                    *x = (*x + p * p - f * y % p) % p;
                }
            }
        }
        r += 1;
    }
    r
}

pub fn gf(p: u64) -> GaloisField {
    GaloisField::prime(big(p)).unwrap()
}

pub fn gf_elem(f: &GaloisField, n: u64) -> <GaloisField as Field>::Elem {
    f.from_biguint(&big(n))
}

/// Linear entries of a report keyed like the oracle: `(u, v, w)` scaled so
/// that the first nonzero of `(v, u)` is one.
pub fn linear_key(l: &LinearFactor<BigRational>) -> (BigRational, BigRational, BigRational) {
    let s = if l.v().is_zero() { l.u().clone() } else { l.v().clone() };
    (l.u() / &s, l.v() / &s, l.w() / &s)
}

/// Whether polynomials over `F_p` (coefficient lists, low degree first) are
/// dependent over `F_p[X^p]`: write `f_j = sum_r X^r g_jr(T)` with `T = X^p`
/// and look for `c_j(T)`, not all zero and of degree below the family size,
/// with `sum_j c_j g_jr = 0` for every `r`.
pub fn dependent_over_frobenius(fam: &[Vec<u64>], p: u64) -> bool {
    let k = fam.len();
    let dc = k; // number of coefficients of each c_j
    let n = fam.iter().map(Vec::len).max().unwrap_or(0);
    let tdeg = n.div_ceil(p as usize); // degree in T of g_jr is < tdeg
    let g = |j: usize, r: usize, s: usize| -> u64 {
        let idx = r + s * p as usize;
        fam[j].get(idx).copied().unwrap_or(0)
    };
    // rows: (r, s) for the coefficient of X^r T^s; columns: (j, e)
    let mut rows = Vec::new();
    for r in 0..p as usize {
        for s in 0..(tdeg + dc) {
            let row: Vec<u64> = (0..k)
                .flat_map(|j| (0..dc).map(move |e| if s >= e && s - e < tdeg { g(j, r, s - e) } else { 0 }))
                .collect();
            rows.push(row);
        }
    }
    // a nontrivial kernel exists iff the column rank is below k * dc
    rank_mod(rows, p) < k * dc
}
