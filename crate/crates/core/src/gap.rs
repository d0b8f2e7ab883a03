//! Gap partitions of sorted exponent lists and the two-level split of a
//! lacunary bivariate polynomial into small dense pieces.

use std::ops::Range;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::coeffring::{binomial, Field};
use crate::error::{domain, Result};
use crate::poly::{DensePolyBi, LacunaryPoly, Term};

/// Largest term count accepted by [`piece_decomposition`].
pub const MAX_PIECE_TERMS: usize = 1 << 16;

/// Consecutive index ranges covering `0..k`, produced greedily: a range
/// starting at `s` absorbs index `n` iff
/// `alpha[n] <= alpha[s] + weight * C(n - s, 2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapPartition {
    pub parts: Vec<Range<usize>>,
    pub weight: u32,
}

fn check_weight(weight: u32) -> Result<()> {
    if weight == 1 || weight == 2 {
        Ok(())
    } else {
        Err(domain(format!("gap weight must be 1 or 2, got {weight}")))
    }
}

/// `alpha[s] + weight * C(n - s, 2)`, the largest exponent index `n` may have
/// while staying in the part opened at `s`.
fn reach(alphas: &[BigUint], s: usize, n: usize, weight: u32) -> BigUint {
    &alphas[s] + binomial((n - s) as u64, 2) * weight
}

pub fn gap_partition(alphas: &[BigUint], weight: u32) -> Result<GapPartition> {
    check_weight(weight)?;
    if alphas.windows(2).any(|w| w[0] > w[1]) {
        return Err(domain("gap partition needs an ascending list"));
    }
    let mut parts = Vec::new();
    let mut s = 0;
    for n in 1..=alphas.len() {
        if n == alphas.len() || alphas[n] > reach(alphas, s, n, weight) {
            parts.push(s..n);
            s = n;
        }
    }
    Ok(GapPartition { parts, weight })
}

impl GapPartition {
    /// Checks the membership rule inside every part and its failure at
    /// every boundary.
    pub fn is_valid_for(&self, alphas: &[BigUint]) -> bool {
        let mut next = 0;
        for (t, part) in self.parts.iter().enumerate() {
            if part.start != next || part.is_empty() {
                return false;
            }
            let s = part.start;
            if part
                .clone()
                .skip(1)
                .any(|n| alphas[n] > reach(alphas, s, n, self.weight))
            {
                return false;
            }
            if t + 1 < self.parts.len() && alphas[part.end] <= reach(alphas, s, part.end, self.weight) {
                return false;
            }
            next = part.end;
        }
        next == alphas.len()
    }

    /// True when every part of `self` lies inside a part of `other`.
    pub fn refines(&self, other: &GapPartition) -> bool {
        self.parts
            .iter()
            .all(|p| other.parts.iter().any(|q| q.start <= p.start && p.end <= q.end))
    }
}

/// One dense piece: the input equals the sum over pieces of
/// `X^x_shift Y^y_shift * poly`.
#[derive(Clone, Debug, PartialEq)]
pub struct Piece<F: Field> {
    pub x_shift: BigUint,
    pub y_shift: BigUint,
    pub poly: DensePolyBi<F>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PieceDecomposition<F: Field> {
    pub pieces: Vec<Piece<F>>,
    pub weight: u32,
}

impl<F: Field> PieceDecomposition<F> {
    /// Sum of the shifted pieces as a lacunary polynomial.
    pub fn reconstruct(&self, field: &F) -> LacunaryPoly<F> {
        let mut terms = Vec::new();
        for p in &self.pieces {
            for (c, a, b) in p.poly.terms() {
                terms.push(Term::new(c, &p.x_shift + a, &p.y_shift + b));
            }
        }
        LacunaryPoly::new(field.clone(), terms)
    }

    /// Index of a piece with fewest terms, ties broken by lowest total
    /// degree, then by position.
    pub fn minimal_piece(&self) -> Option<usize> {
        (0..self.pieces.len()).min_by_key(|&i| {
            let p = &self.pieces[i].poly;
            (p.term_count(), p.x_degree().unwrap_or(0) + p.y_degree().unwrap_or(0), i)
        })
    }
}

/// Splits on `alpha` with [`gap_partition`], factors `X^alpha` of the first
/// term of each part out, splits each part on `beta` likewise and factors
/// `Y^beta` out. Each residual piece has both degrees at most
/// `weight * C(k-1, 2)` and is stored densely.
pub fn piece_decomposition<F: Field>(p: &LacunaryPoly<F>, weight: u32) -> Result<PieceDecomposition<F>> {
    check_weight(weight)?;
    let p = p.normalize();
    let k = p.len();
    if k > MAX_PIECE_TERMS {
        return Err(domain(format!(
            "piece decomposition supports at most {MAX_PIECE_TERMS} terms, got {k}"
        )));
    }
    let terms = p.terms();
    let alphas: Vec<BigUint> = terms.iter().map(|t| t.alpha.clone()).collect();
    let outer = gap_partition(&alphas, weight)?;
    let mut pieces = Vec::new();
    for part in outer.parts {
        let x_shift = terms[part.start].alpha.clone();
        let mut inner: Vec<&Term<F::Elem>> = terms[part].iter().collect();
        inner.sort_by(|a, b| (&a.beta, &a.alpha).cmp(&(&b.beta, &b.alpha)));
        let betas: Vec<BigUint> = inner.iter().map(|t| t.beta.clone()).collect();
        for sub in gap_partition(&betas, weight)?.parts {
            let y_shift = inner[sub.start].beta.clone();
            let local: Vec<(F::Elem, usize, usize)> = inner[sub]
                .iter()
                .map(|t| {
                    let a = (&t.alpha - &x_shift)
                        .to_usize()
                        .expect("piece degree fits a machine word");
                    let b = (&t.beta - &y_shift)
                        .to_usize()
                        .expect("piece degree fits a machine word");
                    (t.coeff.clone(), a, b)
                })
                .collect();
            pieces.push(Piece {
                x_shift: x_shift.clone(),
                y_shift,
                poly: DensePolyBi::from_terms(p.field().clone(), &local),
            });
        }
    }
    Ok(PieceDecomposition { pieces, weight })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffring::Rationals;

    fn us(xs: &[u64]) -> Vec<BigUint> {
        xs.iter().map(|&x| BigUint::from(x)).collect()
    }

    #[test]
    fn partition_examples() {
        let p = gap_partition(&us(&[7]), 1).unwrap();
        assert_eq!(p.parts, vec![0..1]);
        let p = gap_partition(&us(&[3, 3, 3, 3]), 1).unwrap();
        assert_eq!(p.parts, vec![0..4]);
        let a = us(&[0, 0, 5, 6, 100]);
        let p = gap_partition(&a, 1).unwrap();
        assert_eq!(p.parts, vec![0..2, 2..3, 3..4, 4..5]);
        assert!(p.is_valid_for(&a));
        let p2 = gap_partition(&a, 2).unwrap();
        assert!(p.refines(&p2));
        assert!(gap_partition(&us(&[2, 1]), 1).is_err());
        assert!(gap_partition(&us(&[1]), 3).is_err());
    }

    #[test]
    fn single_term_piece() {
        let one = Rationals.one();
        let p = LacunaryPoly::new(Rationals, vec![Term::new(one.clone(), 10u32, 20u32)]);
        let d = piece_decomposition(&p, 1).unwrap();
        assert_eq!(d.pieces.len(), 1);
        assert_eq!(d.pieces[0].x_shift, BigUint::from(10u32));
        assert_eq!(d.pieces[0].y_shift, BigUint::from(20u32));
        assert_eq!(d.pieces[0].poly.terms(), vec![(one, 0, 0)]);
        assert_eq!(d.reconstruct(&Rationals), p);
    }

    #[test]
    fn low_degree_input_is_one_piece() {
        // alpha_{j+1} <= C(j, 2) and beta likewise: no gap triggers
        let q = |n: i64| Rationals.from_i64(n);
        let terms = vec![
            Term::new(q(1), 4u32, 0u32),
            Term::new(q(2), 5u32, 0u32),
            Term::new(q(3), 4u32, 1u32),
            Term::new(q(5), 6u32, 3u32),
            Term::new(q(-1), 7u32, 6u32),
        ];
        let p = LacunaryPoly::new(Rationals, terms);
        let d = piece_decomposition(&p, 1).unwrap();
        assert_eq!(d.pieces.len(), 1);
        assert_eq!(d.pieces[0].x_shift, BigUint::from(4u32));
        assert_eq!(d.reconstruct(&Rationals), p);
    }
}
