//! Groupings, piece layouts, restrictions and per-piece multiplicities
//! shared by the factor routes and by report verification.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};

use super::{Factor, Grouping, LinearForm, PieceLayout, SPECIALIZATION_BUDGET};
use crate::coeffring::Field;
use crate::error::{domain, Error, Result};
use crate::gap::{gap_partition, piece_decomposition, MAX_PIECE_TERMS};
use crate::poly::{BinomExprPoly, DensePoly, DensePolyBi, LacunaryPoly, LacunaryUni, Term};

pub(crate) fn nonzero_normalized<F: Field>(p: &LacunaryPoly<F>) -> Result<LacunaryPoly<F>> {
    let p = p.normalize();
    if p.is_zero() {
        return Err(domain("factors of the zero polynomial"));
    }
    Ok(p)
}

fn big(n: &BigUint) -> BigInt {
    BigInt::from(n.clone())
}

/// The univariate polynomials of a grouping, in ascending key order.
pub(crate) fn groups<F: Field>(p: &LacunaryPoly<F>, grouping: Grouping) -> Vec<LacunaryUni<F>> {
    let mut acc: BTreeMap<BigInt, Vec<(F::Elem, BigUint)>> = BTreeMap::new();
    for t in p.terms() {
        let (key, e) = match grouping {
            Grouping::ByBeta => (big(&t.beta), &t.alpha),
            Grouping::ByAlpha => (big(&t.alpha), &t.beta),
            Grouping::ByTotalDegree => (big(&(&t.alpha + &t.beta)), &t.beta),
            Grouping::ByAlphaMinusBeta => (big(&t.alpha) - big(&t.beta), &t.beta),
        };
        acc.entry(key).or_default().push((t.coeff.clone(), e.clone()));
    }
    acc.into_values()
        .map(|terms| LacunaryUni::new(p.field().clone(), terms))
        .collect()
}

/// The common root of a grouping's polynomials that corresponds to `factor`.
pub(crate) fn group_root<F: Field>(field: &F, factor: &Factor<F::Elem>, grouping: Grouping) -> Option<F::Elem> {
    match (factor, grouping) {
        (Factor::Linear(l), Grouping::ByBeta) => l.as_x_root(field),
        (Factor::Linear(l), Grouping::ByAlpha) if l.form(field) == LinearForm::YminusB => {
            l.as_y_line(field).map(|(_, b)| b)
        }
        (Factor::Linear(l), Grouping::ByTotalDegree) if l.form(field) == LinearForm::YminusUX => {
            l.as_y_line(field).map(|(u, _)| u)
        }
        (Factor::Multilinear(m), Grouping::ByAlphaMinusBeta) if field.is_zero(m.a()) && field.is_zero(m.b()) => {
            Some(m.c().clone())
        }
        _ => None,
    }
}

pub(crate) fn factor_for_group_root<F: Field>(field: &F, grouping: Grouping, r: &F::Elem) -> Factor<F::Elem> {
    use super::{LinearFactor, MultilinearFactor};
    match grouping {
        Grouping::ByBeta => Factor::Linear(LinearFactor::x_minus(field, r)),
        Grouping::ByAlpha => Factor::Linear(LinearFactor::y_minus(field, &field.zero(), r)),
        Grouping::ByTotalDegree => Factor::Linear(LinearFactor::y_minus(field, r, &field.zero())),
        Grouping::ByAlphaMinusBeta => {
            Factor::Multilinear(MultilinearFactor::new(field.zero(), field.zero(), r.clone()))
        }
    }
}

/// `P` restricted to the curve of `factor`, rewritten as a binomial
/// expression in one variable, when such a rewrite exists.
pub(crate) fn restriction<F: Field>(p: &LacunaryPoly<F>, factor: &Factor<F::Elem>) -> Option<BinomExprPoly<F>> {
    let field = p.field();
    let terms = p.terms();
    match factor {
        Factor::Linear(l) => match l.as_y_line(field) {
            // P(X, uX + v)
            Some((u, v)) => Some(BinomExprPoly::new(field.clone(), u, v, terms.to_vec())),
            // P(a, Y) = sum a_j a^alpha_j Y^beta_j
            None => {
                let a = l.as_x_root(field)?;
                let swapped = terms
                    .iter()
                    .map(|t| Term::new(t.coeff.clone(), t.beta.clone(), t.alpha.clone()))
                    .collect();
                Some(BinomExprPoly::new(field.clone(), field.zero(), a, swapped))
            }
        },
        Factor::Multilinear(m) => {
            let (a, b, c) = (m.a(), m.b(), m.c());
            if field.is_zero(b) {
                // Y = a + c/X:  X^M P = sum a_j X^(alpha_j - beta_j + M) (aX + c)^beta_j
                let top = terms.iter().map(|t| &t.beta).max()?.clone();
                let shifted = terms
                    .iter()
                    .map(|t| Term::new(t.coeff.clone(), &t.alpha + &top - &t.beta, t.beta.clone()))
                    .collect();
                Some(BinomExprPoly::new(field.clone(), a.clone(), c.clone(), shifted))
            } else if field.is_zero(a) {
                // X = c/Y - b:  Y^M P = sum a_j Y^(beta_j - alpha_j + M) (c - bY)^alpha_j
                let top = terms.iter().map(|t| &t.alpha).max()?.clone();
                let shifted = terms
                    .iter()
                    .map(|t| Term::new(t.coeff.clone(), &t.beta + &top - &t.alpha, t.alpha.clone()))
                    .collect();
                Some(BinomExprPoly::new(field.clone(), field.neg(b), c.clone(), shifted))
            } else {
                None
            }
        }
    }
}

/// The dense pieces of `p` under `layout`.
pub(crate) fn layout_pieces<F: Field>(p: &LacunaryPoly<F>, layout: PieceLayout) -> Result<Vec<DensePolyBi<F>>> {
    let key = |t: &Term<F::Elem>, s: i8, r: i8| -> BigInt {
        let mut k = BigInt::zero();
        if s != 0 {
            k += big(&t.alpha) * s;
        }
        if r != 0 {
            k += big(&t.beta) * r;
        }
        k
    };
    match layout {
        PieceLayout::Gap { weight } => Ok(piece_decomposition(p, weight)?
            .pieces
            .into_iter()
            .map(|piece| piece.poly)
            .collect()),
        PieceLayout::AlphaMinusBeta => keyed_pieces(p, |t| key(t, 1, -1), |t| key(t, 0, 1)),
        PieceLayout::BetaMinusAlpha => keyed_pieces(p, |t| key(t, -1, 1), |t| key(t, 1, 0)),
        PieceLayout::TotalDegree => keyed_pieces(p, |t| key(t, 1, 1), |t| key(t, 0, -1)),
    }
}

/// Gap-splits (weight one) on an outer key, then each part on an inner key,
/// and stores each subpart densely after dividing by its smallest monomial.
fn keyed_pieces<F: Field>(
    p: &LacunaryPoly<F>,
    outer: impl Fn(&Term<F::Elem>) -> BigInt,
    inner: impl Fn(&Term<F::Elem>) -> BigInt,
) -> Result<Vec<DensePolyBi<F>>> {
    if p.len() > MAX_PIECE_TERMS {
        return Err(domain(format!("piece layouts support at most {MAX_PIECE_TERMS} terms")));
    }
    let mut terms: Vec<(BigInt, BigInt, &Term<F::Elem>)> = p.terms().iter().map(|t| (outer(t), inner(t), t)).collect();
    terms.sort_by(|x, y| (&x.0, &x.1).cmp(&(&y.0, &y.1)));
    let offsets = |ks: Vec<&BigInt>| -> Vec<BigUint> {
        let low = ks.iter().min().map(|k| (*k).clone()).unwrap_or_default();
        ks.into_iter().map(|k| (k - &low).to_biguint().unwrap()).collect()
    };
    let mut pieces = Vec::new();
    for part in gap_partition(&offsets(terms.iter().map(|t| &t.0).collect()), 1)?.parts {
        let mut sub = terms[part].to_vec();
        sub.sort_by(|x, y| (&x.1, &x.0).cmp(&(&y.1, &y.0)));
        for chunk in gap_partition(&offsets(sub.iter().map(|t| &t.1).collect()), 1)?.parts {
            let chunk = &sub[chunk];
            let amin = chunk.iter().map(|t| &t.2.alpha).min().unwrap();
            let bmin = chunk.iter().map(|t| &t.2.beta).min().unwrap();
            let local = chunk
                .iter()
                .map(|(_, _, t)| {
                    let a = (&t.alpha - amin).to_usize().expect("piece degree fits a machine word");
                    let b = (&t.beta - bmin).to_usize().expect("piece degree fits a machine word");
                    (t.coeff.clone(), a, b)
                })
                .collect::<Vec<_>>();
            pieces.push(DensePolyBi::from_terms(p.field().clone(), &local));
        }
    }
    Ok(pieces)
}

/// Multiplicity of `factor` in one nonzero dense piece.
pub(crate) fn piece_multiplicity<F: Field>(piece: &DensePolyBi<F>, factor: &Factor<F::Elem>) -> usize {
    let field = piece.field();
    match factor {
        Factor::Linear(l) => {
            let shifted = match (l.as_y_line(field), l.as_x_root(field)) {
                (Some((u, v)), _) => piece.substitute_shift(&u, &v),
                (None, Some(a)) => piece.transpose().substitute_shift(&field.zero(), &a),
                (None, None) => return 0,
            };
            shifted.y_valuation().unwrap_or(0)
        }
        Factor::Multilinear(m) => {
            // (X + b) Y - (aX + c)
            let lead = DensePoly::new(field.clone(), vec![m.b().clone(), field.one()]);
            let tail = DensePoly::new(field.clone(), vec![field.neg(m.c()), field.neg(m.a())]);
            piece.multiplicity_linear_in_y(&lead, &tail).unwrap_or(0)
        }
    }
}

/// Index of a piece with fewest terms, then lowest total degree.
pub(crate) fn minimal_index<F: Field>(pieces: &[DensePolyBi<F>]) -> Option<usize> {
    (0..pieces.len()).min_by_key(|&i| {
        let p = &pieces[i];
        (p.term_count(), p.x_degree().unwrap_or(0) + p.y_degree().unwrap_or(0), i)
    })
}

/// A specialization point with the roots found there.
pub(crate) type Specialization<E> = (E, Vec<E>);

/// `count` specializations `X = 1, 2, 3, ...` of `piece` that keep its
/// degree in `Y`, each with the roots of the specialized polynomial.
pub(crate) fn specializations<F: Field>(
    piece: &DensePolyBi<F>,
    count: usize,
    roots: &dyn Fn(&DensePoly<F>) -> Vec<F::Elem>,
) -> Result<Vec<Specialization<F::Elem>>> {
    let field = piece.field();
    let degree = piece.y_degree();
    let mut out: Vec<(F::Elem, Vec<F::Elem>)> = Vec::new();
    for i in 1..=SPECIALIZATION_BUDGET {
        let x = field.from_i64(i64::from(i));
        if out.iter().any(|(y, _)| y == &x) {
            continue;
        }
        let s = piece.specialize_x(&x);
        if s.degree() != degree {
            continue;
        }
        let r = roots(&s);
        out.push((x, r));
        if out.len() == count {
            return Ok(out);
        }
    }
    Err(Error::SpecializationExhausted(SPECIALIZATION_BUDGET))
}
