mod common;

use std::collections::BTreeMap;

use common::*;
use lacunary::coeffring::Rationals;
use lacunary::factors::{
    linear_factors_fp, linear_factors_q, multilinear_factors_q, verify_report, Factor, FactorReport, LinearFactor,
};
use lacunary::pit::PitOptions;
use lacunary::poly::{LacunaryPoly, Term};
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Key = (BigRational, BigRational, BigRational);

fn opts() -> PitOptions {
    PitOptions::default()
}

fn small_rational() -> impl Strategy<Value = BigRational> {
    (prop_oneof![-5i64..=-1, 1i64..=5], 1i64..=3).prop_map(|(n, d)| qr(n, d))
}

/// A small factor: `Y - uX - v`, `X - a`, or `XY + bY - aX - c` with
/// `c != ab`.
fn small_factor() -> impl Strategy<Value = Sparse> {
    prop_oneof![
        (-3i64..=3, -3i64..=3).prop_map(|(u, v)| line(u, v)),
        (-3i64..=3).prop_map(|a| sparse(&[(1, big(1), big(0)), (-a, big(0), big(0))])),
        (-3i64..=3, -3i64..=3, -5i64..=5)
            .prop_filter("irreducible", |(a, b, c)| *c != a * b)
            .prop_map(|(a, b, c)| multilinear(a, b, c)),
    ]
}

fn split(r: &FactorReport<BigRational>) -> (BTreeMap<Key, usize>, BTreeMap<Key, usize>) {
    let mut lin = BTreeMap::new();
    let mut multi = BTreeMap::new();
    for e in &r.entries {
        let m = e.multiplicity.to_usize().unwrap();
        match &e.factor {
            Factor::Linear(l) => lin.insert(linear_key(l), m),
            Factor::Multilinear(f) => multi.insert((f.a().clone(), f.b().clone(), f.c().clone()), m),
        };
    }
    (lin, multi)
}

fn listing(r: &FactorReport<BigRational>) -> Vec<(Factor<BigRational>, BigUint)> {
    r.entries
        .iter()
        .map(|e| (e.factor.clone(), e.multiplicity.clone()))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn planted_line_is_found_and_verifies(u in small_rational(), v in small_rational(), seed in any::<u64>(), squared in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let l = line_q(&u, &v);
        let planted = if squared { sparse_mul(&l, &l) } else { l };
        let p = to_lacunary(&sparse_mul(&planted, &random_cofactor(&mut rng, 3, 32)));
        let r = linear_factors_q(&p, &opts()).unwrap();
        let m = r.multiplicity_of(&Factor::Linear(LinearFactor::y_minus(&Rationals, &u, &v))).cloned();
        prop_assert_eq!(m, Some(BigUint::from(if squared { 2u32 } else { 1 })));
        prop_assert!(verify_report(&p, &r, &opts()).unwrap());
    }

    #[test]
    fn small_reports_match_the_dense_oracle(
        planted in prop::collection::vec(small_factor(), 1..=2),
        seed in any::<u64>(),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut sp = random_cofactor(&mut rng, 3, 2);
        for f in &planted {
            sp = sparse_mul(&sp, f);
        }
        let p = to_lacunary(&sp);
        let want_lin = oracle_linear_factors(&sp);
        let want_multi = oracle_multilinear_factors(&sp);

        let r = linear_factors_q(&p, &opts()).unwrap();
        let (lin, multi) = split(&r);
        prop_assert_eq!(&lin, &want_lin);
        prop_assert!(multi.is_empty());
        prop_assert!(verify_report(&p, &r, &opts()).unwrap());

        let r = multilinear_factors_q(&p, &opts()).unwrap();
        let (lin, multi) = split(&r);
        prop_assert_eq!(&lin, &want_lin);
        prop_assert_eq!(&multi, &want_multi);
        prop_assert!(verify_report(&p, &r, &opts()).unwrap());
    }

    #[test]
    fn reports_ignore_scaling_and_term_order(
        planted in small_factor(),
        scale in small_rational(),
        seed in any::<u64>(),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sp = sparse_mul(&planted, &random_cofactor(&mut rng, 3, 20));
        let p = to_lacunary(&sp);
        let mut terms: Vec<_> = sp.iter().map(|((a, b), c)| Term::new(c * &scale, a.clone(), b.clone())).collect();
        terms.reverse();
        let scaled = LacunaryPoly::new(Rationals, terms);
        prop_assert_eq!(
            listing(&linear_factors_q(&p, &opts()).unwrap()),
            listing(&linear_factors_q(&scaled, &opts()).unwrap())
        );
        prop_assert_eq!(
            listing(&multilinear_factors_q(&p, &opts()).unwrap()),
            listing(&multilinear_factors_q(&scaled, &opts()).unwrap())
        );
    }

    #[test]
    fn planted_line_over_f101_is_found(
        (a, b, c) in (1u64..101, 1u64..101, 1u64..101),
        cof in prop::collection::vec((1u64..101, 0u64..=45, 0u64..=45), 1..=3),
    ) {
        let p = 101;
        let f = gf(p);
        let mut prod: BTreeMap<(u64, u64), u64> = BTreeMap::new();
        for (k, x, y) in std::iter::once((1, 0, 0)).chain(cof) {
            for (dx, dy, l) in [(1, 0, a), (0, 1, b), (0, 0, c)] {
                let e = prod.entry((x + dx, y + dy)).or_default();
                *e = (*e + k * l) % p;
            }
        }
        let terms: Vec<_> = prod.iter().filter(|(_, &k)| k != 0).map(|(&(x, y), &k)| Term::new(gf_elem(&f, k), x, y)).collect();
        let lp = LacunaryPoly::new(f.clone(), terms);
        prop_assume!(!lp.normalize().is_empty());
        let r = linear_factors_fp(&lp, &opts()).unwrap();
        let want = Factor::Linear(LinearFactor::new(&f, gf_elem(&f, a), gf_elem(&f, b), gf_elem(&f, c)).unwrap());
        prop_assert!(r.factors().any(|g| g == &want));
        prop_assert!(verify_report(&lp, &r, &opts()).unwrap());
    }
}

#[test]
fn product_of_two_lines_reports_both() {
    // XY - X - Y + 1 = (X - 1)(Y - 1)
    let p = to_lacunary(&sparse(&[
        (1, big(1), big(1)),
        (-1, big(1), big(0)),
        (-1, big(0), big(1)),
        (1, big(0), big(0)),
    ]));
    let (lin, multi) = split(&linear_factors_q(&p, &opts()).unwrap());
    assert!(multi.is_empty());
    let one = q(1);
    let zero = BigRational::zero();
    assert_eq!(lin.get(&(one.clone(), zero.clone(), -one.clone())), Some(&1));
    assert_eq!(lin.get(&(zero, one.clone(), -one)), Some(&1));
    assert_eq!(lin.len(), 2);
}

#[test]
fn monomial_reports_its_coordinate_factors() {
    let p = to_lacunary(&sparse(&[(1, big(5), big(3))]));
    let (lin, _) = split(&linear_factors_q(&p, &opts()).unwrap());
    let (one, zero) = (q(1), BigRational::zero());
    assert_eq!(lin.get(&(one.clone(), zero.clone(), zero.clone())), Some(&5));
    assert_eq!(lin.get(&(zero.clone(), one, zero)), Some(&3));
}
