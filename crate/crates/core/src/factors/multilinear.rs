//! Multilinear factors `XY + bY - aX - c` over Q.

use num_rational::BigRational;

use super::evidence::{layout_pieces, minimal_index, nonzero_normalized, specializations};
use super::linear::{accept_on_pieces, grouped_route, linear_factors_q};
use super::roots::{dense_rational_roots, SumTester, MAX_ROOT_CANDIDATES};
use super::{Factor, FactorReport, Grouping, MultilinearFactor, PieceLayout};
use crate::coeffring::{Field, Rationals};
use crate::error::{Error, Result};
use crate::linalg::solve;
use crate::pit::PitOptions;
use crate::poly::{DensePolyBi, LacunaryPoly};

/// Seed offset separating the random streams of the multilinear routes from
/// those of the linear ones.
const MULTILINEAR_STREAM: u64 = 0x6d75_6c74_696c_696e;

/// All linear factors, plus every irreducible factor `XY + bY - aX - c`.
///
/// `a, b, c` all nonzero: candidates from three specializations of a
/// minimal piece of the weight-two decomposition. `a = b = 0`: common roots
/// of the groups with equal `alpha - beta`. Exactly one of `a, b, c` zero:
/// the curve restricts `P` to a single binomial family, which yields a
/// keyed decomposition and two-point candidates.
pub fn multilinear_factors_q(p: &LacunaryPoly<Rationals>, opts: &PitOptions) -> Result<FactorReport<BigRational>> {
    let p = nonzero_normalized(p)?;
    let mut report = linear_factors_q(&p, opts)?;
    let mut tester = SumTester::new(PitOptions {
        seed: opts.seed ^ MULTILINEAR_STREAM,
        ..*opts
    });
    grouped_route(&p, Grouping::ByAlphaMinusBeta, &mut tester, opts, &mut report)?;
    full_route(&p, opts, &mut report)?;
    pole_route(&p, false, opts, &mut report)?;
    pole_route(&p, true, opts, &mut report)?;
    origin_route(&p, opts, &mut report)?;
    Ok(report.finish(&Rationals))
}

fn q(n: i64) -> BigRational {
    Rationals.from_i64(n)
}

/// The minimal piece of a layout together with all pieces, or `None` when
/// the minimal piece does not involve `Y` and so has no such factor.
fn pieces_for(
    p: &LacunaryPoly<Rationals>,
    layout: PieceLayout,
) -> Result<Option<(Vec<DensePolyBi<Rationals>>, usize)>> {
    let pieces = layout_pieces(p, layout)?;
    let i = minimal_index(&pieces).expect("nonzero input has a piece");
    let useful = pieces[i].y_degree().unwrap_or(0) > 0 && pieces[i].x_degree().unwrap_or(0) > 0;
    Ok(useful.then_some((pieces, i)))
}

fn push_irreducible(candidates: &mut Vec<Factor<BigRational>>, a: BigRational, b: BigRational, c: BigRational) {
    let m = MultilinearFactor::new(a, b, c);
    if m.is_irreducible(&Rationals) {
        let f = Factor::Multilinear(m);
        if !candidates.contains(&f) {
            candidates.push(f);
        }
    }
}

/// `a, b, c` all nonzero: each root triple at three points gives the linear
/// system `a x_i - b y_i + c = x_i y_i`.
fn full_route(p: &LacunaryPoly<Rationals>, opts: &PitOptions, report: &mut FactorReport<BigRational>) -> Result<()> {
    let layout = PieceLayout::Gap { weight: 2 };
    let Some((pieces, i)) = pieces_for(p, layout)? else {
        return Ok(());
    };
    let points = specializations(&pieces[i], 3, &dense_rational_roots)?;
    let count: usize = points.iter().map(|(_, r)| r.len()).product();
    if count > MAX_ROOT_CANDIDATES * 16 {
        return Err(Error::TooManyCandidates(count));
    }
    let (x0, x1, x2) = (&points[0].0, &points[1].0, &points[2].0);
    let mut candidates = Vec::new();
    for y0 in &points[0].1 {
        for y1 in &points[1].1 {
            for y2 in &points[2].1 {
                let rows: Vec<Vec<BigRational>> = [(x0, y0), (x1, y1), (x2, y2)]
                    .iter()
                    .map(|(x, y)| vec![(*x).clone(), -(*y).clone(), q(1)])
                    .collect();
                let rhs = vec![x0 * y0, x1 * y1, x2 * y2];
                let Some(sol) = solve(&Rationals, &rows, &rhs) else {
                    continue;
                };
                let [a, b, c] = <[BigRational; 3]>::try_from(sol).unwrap();
                if [&a, &b, &c].iter().all(|e| !Rationals.is_zero(e)) {
                    push_irreducible(&mut candidates, a, b, c);
                }
            }
        }
    }
    accept_on_pieces(p, &pieces, layout, candidates, opts, report)
}

/// `b = 0` (`XY - aX - c`, with `Y = a + c/x` at `X = x`) or, when
/// `swapped`, `a = 0` (`XY + bY - c`, with `X = -b + c/y` at `Y = y`).
fn pole_route(
    p: &LacunaryPoly<Rationals>,
    swapped: bool,
    opts: &PitOptions,
    report: &mut FactorReport<BigRational>,
) -> Result<()> {
    let layout = if swapped {
        PieceLayout::BetaMinusAlpha
    } else {
        PieceLayout::AlphaMinusBeta
    };
    let Some((pieces, i)) = pieces_for(p, layout)? else {
        return Ok(());
    };
    let piece = if swapped {
        pieces[i].transpose()
    } else {
        pieces[i].clone()
    };
    let points = specializations(&piece, 2, &dense_rational_roots)?;
    let ((t0, r0s), (t1, r1s)) = (&points[0], &points[1]);
    // s = shift + c/t at two points t0, t1
    let inv_gap = (t0.recip() - t1.recip()).recip();
    let mut candidates = Vec::new();
    for s0 in r0s {
        for s1 in r1s {
            let c = (s0 - s1) * &inv_gap;
            let shift = s0 - &c / t0;
            if Rationals.is_zero(&c) || Rationals.is_zero(&shift) {
                continue;
            }
            if swapped {
                push_irreducible(&mut candidates, q(0), -shift, c);
            } else {
                push_irreducible(&mut candidates, shift, q(0), c);
            }
        }
    }
    accept_on_pieces(p, &pieces, layout, candidates, opts, report)
}

/// `c = 0` (`XY + bY - aX`): at `X = x` the root `y` satisfies
/// `a x - b y = x y`.
fn origin_route(p: &LacunaryPoly<Rationals>, opts: &PitOptions, report: &mut FactorReport<BigRational>) -> Result<()> {
    let layout = PieceLayout::TotalDegree;
    let Some((pieces, i)) = pieces_for(p, layout)? else {
        return Ok(());
    };
    let points = specializations(&pieces[i], 2, &dense_rational_roots)?;
    let ((x0, r0s), (x1, r1s)) = (&points[0], &points[1]);
    let mut candidates = Vec::new();
    for y0 in r0s {
        for y1 in r1s {
            let rows = vec![vec![x0.clone(), -y0.clone()], vec![x1.clone(), -y1.clone()]];
            let Some(sol) = solve(&Rationals, &rows, &[x0 * y0, x1 * y1]) else {
                continue;
            };
            let (a, b) = (sol[0].clone(), sol[1].clone());
            if !Rationals.is_zero(&a) && !Rationals.is_zero(&b) {
                push_irreducible(&mut candidates, a, b, q(0));
            }
        }
    }
    accept_on_pieces(p, &pieces, layout, candidates, opts, report)
}
