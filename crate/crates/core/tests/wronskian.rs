mod common;

use common::*;
use lacunary::bounds::plateau_bound;
use lacunary::coeffring::Rationals;
use lacunary::poly::{wronskian, DensePoly};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use proptest::prelude::*;

fn dense(p: &[BigRational]) -> DensePoly<Rationals> {
    DensePoly::new(Rationals, p.to_vec())
}

fn nonzero_poly(max_deg: usize) -> impl Strategy<Value = QPoly> {
    prop::collection::vec(-4i64..=4, 1..=max_deg + 1)
        .prop_map(|cs| trim(cs.into_iter().map(q).collect()))
        .prop_filter("nonzero", |p| !p.is_empty())
}

fn family() -> impl Strategy<Value = Vec<QPoly>> {
    (
        prop::collection::vec(nonzero_poly(6), 1..=4),
        prop::collection::vec(-3i64..=3, 4),
        any::<bool>(),
    )
        .prop_map(|(mut fam, comb, dependent)| {
            if dependent && fam.len() >= 2 {
                let mut c = Vec::new();
                for (p, &w) in fam.iter().zip(&comb) {
                    c = qpoly_add(&c, &qpoly_mul(p, &[q(w)]));
                }
                *fam.last_mut().unwrap() = c;
            }
            fam
        })
}

fn rank_of(fam: &[QPoly]) -> usize {
    let width = fam.iter().map(Vec::len).max().unwrap_or(0);
    rank_q(
        fam.iter()
            .map(|p| (0..width).map(|j| p.get(j).cloned().unwrap_or_default()).collect())
            .collect(),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn nonzero_iff_linearly_independent(fam in family()) {
        let w = wronskian(&fam.iter().map(|p| dense(p)).collect::<Vec<_>>()).unwrap();
        prop_assert_eq!(!w.is_zero(), rank_of(&fam) == fam.len());
    }

    #[test]
    fn valuation_lower_bounds_hold(fam in family()) {
        let w = wronskian(&fam.iter().map(|p| dense(p)).collect::<Vec<_>>()).unwrap();
        let Some(vw) = w.valuation() else { return Ok(()) };
        let k = fam.len() as i64;
        let mut vals: Vec<u64> = fam.iter().map(|p| valuation(p).unwrap() as u64).collect();
        let sum: i64 = vals.iter().map(|&v| v as i64).sum();
        prop_assert!(vw as i64 >= sum - k * (k - 1) / 2);
        vals.sort();
        let pb = plateau_bound(&vals.into_iter().map(big).collect::<Vec<BigUint>>()).unwrap();
        prop_assert!(BigInt::from(vw) >= pb);
    }

    #[test]
    fn binomial_family_valuation_is_at_most_the_sum_of_alphas(
        pairs in (1u64..=4).prop_flat_map(|k| prop::collection::vec((k..=12, k..=12), k as usize)),
    ) {
        let fam: Vec<QPoly> = pairs.iter().map(|&(a, b)| expand_q(&q(1), &q(1), 1, &[(q(1), a, b)])).collect();
        let w = wronskian(&fam.iter().map(|p| dense(p)).collect::<Vec<_>>()).unwrap();
        let Some(vw) = w.valuation() else { return Ok(()) };
        prop_assert!(vw as u64 <= pairs.iter().map(|p| p.0).sum::<u64>());
    }

    #[test]
    fn scaling_a_member_scales_the_wronskian(fam in family(), c in prop_oneof![-5i64..=-1, 1i64..=5]) {
        let ds: Vec<_> = fam.iter().map(|p| dense(p)).collect();
        let w = wronskian(&ds).unwrap();
        let mut scaled = fam.clone();
        scaled[0] = qpoly_mul(&scaled[0], &[q(c)]);
        let ws = wronskian(&scaled.iter().map(|p| dense(p)).collect::<Vec<_>>()).unwrap();
        prop_assert_eq!(ws.coeffs().to_vec(), trim(qpoly_mul(w.coeffs(), &[q(c)])));
    }

    #[test]
    fn swapping_members_negates_the_wronskian(fam in family()) {
        prop_assume!(fam.len() >= 2);
        let w = wronskian(&fam.iter().map(|p| dense(p)).collect::<Vec<_>>()).unwrap();
        let mut swapped = fam.clone();
        swapped.swap(0, 1);
        let ws = wronskian(&swapped.iter().map(|p| dense(p)).collect::<Vec<_>>()).unwrap();
        prop_assert_eq!(ws.coeffs().to_vec(), trim(qpoly_mul(w.coeffs(), &[q(-1)])));
    }

    #[test]
    fn char_p_zero_iff_dependent_over_frobenius_image(
        p in prop::sample::select(vec![3u64, 5]),
        raw in prop::collection::vec(prop::collection::vec(0u64..5, 2 * 5), 1..=3),
        dependent in any::<bool>(),
        mix in prop::collection::vec((0u64..5, 0u64..5), 3),
    ) {
        let mut fam: Vec<Vec<u64>> = raw.iter().map(|g| g[..2 * p as usize].iter().map(|c| c % p).collect()).collect();
        let k = fam.len();
        if dependent && k >= 2 {
            // last = sum_j (c0 + c1 X^p) f_j over inputs of degree < p
            for g in fam.iter_mut() {
                g[p as usize..].iter_mut().for_each(|c| *c = 0);
            }
            let mut comb = vec![0u64; 2 * p as usize];
            for (g, &(c0, c1)) in fam[..k - 1].iter().zip(&mix) {
                for j in 0..p as usize {
                    comb[j] = (comb[j] + c0 % p * g[j]) % p;
                    comb[j + p as usize] = (comb[j + p as usize] + c1 % p * g[j]) % p;
                }
            }
            fam[k - 1] = comb;
        }
        prop_assume!(fam.iter().any(|g| g.iter().any(|&c| c != 0)));
        let f = gf(p);
        let ds: Vec<_> = fam.iter().map(|g| DensePoly::new(f.clone(), g.iter().map(|&c| gf_elem(&f, c)).collect())).collect();
        let w = wronskian(&ds).unwrap();
        prop_assert_eq!(w.is_zero(), dependent_over_frobenius(&fam, p));
    }
}

#[test]
fn derivative_of_x_to_the_p_vanishes_in_char_p() {
    // {1, X^5} is independent over F_5 but dependent over F_5[X^5]
    let f = gf(5);
    let one = DensePoly::new(f.clone(), vec![gf_elem(&f, 1)]);
    let x5 = DensePoly::new(f.clone(), (0..6).map(|i| gf_elem(&f, u64::from(i == 5))).collect());
    assert!(wronskian(&[one, x5]).unwrap().is_zero());
    assert!(dependent_over_frobenius(&[vec![1], vec![0, 0, 0, 0, 0, 1]], 5));
}
