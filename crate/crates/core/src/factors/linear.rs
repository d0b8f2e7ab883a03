//! Linear factors over Q (all forms) and over `F_{p^s}` (the `uvw != 0`
//! form).

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Zero;

use super::evidence::{
    factor_for_group_root, groups, layout_pieces, minimal_index, nonzero_normalized, piece_multiplicity, restriction,
    specializations,
};
use super::roots::{dense_rational_roots, fp_dense_roots, root_multiplicity_with, roots_with, SumTester};
use super::{
    Evidence, EvidenceSource, Factor, FactorEntry, FactorField, FactorReport, Grouping, LinearFactor, LinearForm,
    PieceLayout,
};
use crate::bounds::fp_precondition_check;
use crate::coeffring::{Field, GaloisField, GfElem, Rationals};
use crate::error::{Error, Result};
use crate::gap::PieceDecomposition;
use crate::pit::{Certainty, PitOptions};
use crate::poly::{BinomExprPoly, DensePoly, DensePolyBi, LacunaryPoly};

/// All linear factors of `p` over Q with multiplicities: `X - a` and `Y - b`
/// from common roots of coefficient polynomials, `Y - uX` from common roots
/// of the homogeneous components, and `Y - uX - v` with `uv != 0` from the
/// dense pieces of the weight-one decomposition.
pub fn linear_factors_q(p: &LacunaryPoly<Rationals>, opts: &PitOptions) -> Result<FactorReport<BigRational>> {
    let p = nonzero_normalized(p)?;
    let mut report = FactorReport {
        entries: Vec::new(),
        certainty: Certainty::Deterministic,
    };
    let mut tester = SumTester::new(*opts);
    for grouping in [Grouping::ByBeta, Grouping::ByAlpha, Grouping::ByTotalDegree] {
        grouped_route(&p, grouping, &mut tester, opts, &mut report)?;
    }
    general_route(&p, opts, &dense_rational_roots, &mut report)?;
    Ok(report.finish(&Rationals))
}

/// Factors `uX + vY + w` with `uvw != 0` over `F_{p^s}`. Other forms are
/// rejected by [`fp_form_supported`]. Needs `p > max(alpha_j + beta_j)`.
pub fn linear_factors_fp(p: &LacunaryPoly<GaloisField>, opts: &PitOptions) -> Result<FactorReport<GfElem>> {
    let p = nonzero_normalized(p)?;
    let field = p.field().clone();
    fp_precondition_check(&BinomExprPoly::new(
        field.clone(),
        field.one(),
        field.one(),
        p.terms().to_vec(),
    ))?;
    let mut report = FactorReport {
        entries: Vec::new(),
        certainty: Certainty::MonteCarlo { lambda: opts.lambda },
    };
    let seed = opts.seed;
    general_route(
        &p,
        opts,
        &move |f: &DensePoly<GaloisField>| fp_dense_roots(f, seed),
        &mut report,
    )?;
    Ok(report.finish(&field))
}

/// Only the `uvw != 0` form is searched in positive characteristic.
pub fn fp_form_supported(form: LinearForm) -> Result<()> {
    match form {
        LinearForm::General => Ok(()),
        other => Err(Error::UnsupportedForm(format!("{other:?}"))),
    }
}

/// Minimum over the pieces of the multiplicity of `factor` in each; zero
/// when some piece is not divisible by it.
pub fn factor_multiplicity<F: Field>(pieces: &PieceDecomposition<F>, factor: &Factor<F::Elem>) -> usize {
    pieces
        .pieces
        .iter()
        .map(|p| piece_multiplicity(&p.poly, factor))
        .min()
        .unwrap_or(0)
}

/// Common roots of all groups, found on the smallest group and checked on
/// the others.
pub(crate) fn grouped_route(
    p: &LacunaryPoly<Rationals>,
    grouping: Grouping,
    tester: &mut SumTester,
    opts: &PitOptions,
    report: &mut FactorReport<BigRational>,
) -> Result<()> {
    let polys = groups(p, grouping);
    let smallest = polys.iter().min_by_key(|g| g.len()).expect("nonzero input has a group");
    let candidates = roots_with(smallest, tester)?;
    let nonzero_only = matches!(grouping, Grouping::ByTotalDegree | Grouping::ByAlphaMinusBeta);
    'roots: for (r, _) in candidates.roots {
        if nonzero_only && r.is_zero() {
            continue;
        }
        let mut certainty = candidates.certainty;
        let mut multiplicities = Vec::with_capacity(polys.len());
        for g in &polys {
            let (m, c) = root_multiplicity_with(g, &r, tester)?;
            if m.is_zero() {
                continue 'roots;
            }
            certainty = certainty.join(c);
            multiplicities.push(m);
        }
        let factor = factor_for_group_root(&Rationals, grouping, &r);
        let Some(restricted) = check_restriction(p, &factor, opts)? else {
            continue;
        };
        if let Some(v) = &restricted {
            certainty = certainty.join(v.certainty);
        }
        report.certainty = report.certainty.join(certainty);
        report.entries.push(FactorEntry {
            factor,
            multiplicity: multiplicities.iter().min().unwrap().clone(),
            evidence: Evidence {
                source: EvidenceSource::Groups(grouping),
                multiplicities,
                restriction: restricted,
            },
        });
    }
    Ok(())
}

/// Runs the restriction test when one exists. `None` rejects the factor,
/// `Some(None)` means there is no restriction to test.
fn check_restriction<F: FactorField>(
    p: &LacunaryPoly<F>,
    factor: &Factor<F::Elem>,
    opts: &PitOptions,
) -> Result<Option<Option<crate::pit::ZeroTestVerdict>>> {
    match restriction(p, factor) {
        None => Ok(Some(None)),
        Some(b) => {
            let v = F::restriction_test(&b, opts)?;
            Ok(v.is_zero().then_some(Some(v)))
        }
    }
}

/// Keeps the candidates dividing every piece, with their piece
/// multiplicities as evidence.
pub(crate) fn accept_on_pieces<F: FactorField>(
    p: &LacunaryPoly<F>,
    pieces: &[DensePolyBi<F>],
    layout: PieceLayout,
    candidates: Vec<Factor<F::Elem>>,
    opts: &PitOptions,
    report: &mut FactorReport<F::Elem>,
) -> Result<()> {
    'candidates: for factor in candidates {
        let mut multiplicities = Vec::with_capacity(pieces.len());
        for piece in pieces {
            let m = piece_multiplicity(piece, &factor);
            if m == 0 {
                continue 'candidates;
            }
            multiplicities.push(BigUint::from(m));
        }
        let Some(restricted) = check_restriction(p, &factor, opts)? else {
            continue;
        };
        if let Some(v) = &restricted {
            report.certainty = report.certainty.join(v.certainty);
        }
        report.entries.push(FactorEntry {
            factor,
            multiplicity: multiplicities.iter().min().unwrap().clone(),
            evidence: Evidence {
                source: EvidenceSource::Pieces(layout),
                multiplicities,
                restriction: restricted,
            },
        });
    }
    Ok(())
}

/// `Y - uX - v` with `uv != 0`: candidates from the roots of two
/// specializations of a minimal piece, checked on every piece.
fn general_route<F: FactorField>(
    p: &LacunaryPoly<F>,
    opts: &PitOptions,
    roots: &dyn Fn(&DensePoly<F>) -> Vec<F::Elem>,
    report: &mut FactorReport<F::Elem>,
) -> Result<()> {
    let field = p.field();
    let layout = PieceLayout::Gap { weight: 1 };
    let pieces = layout_pieces(p, layout)?;
    let piece = &pieces[minimal_index(&pieces).expect("nonzero input has a piece")];
    if piece.y_degree() == Some(0) {
        return Ok(());
    }
    let points = specializations(piece, 2, roots)?;
    let ((x0, r0s), (x1, r1s)) = (&points[0], &points[1]);
    let dx = field.inv(&field.sub(x1, x0)).expect("distinct points");
    let mut candidates = Vec::new();
    for r0 in r0s {
        for r1 in r1s {
            let u = field.mul(&field.sub(r1, r0), &dx);
            let v = field.sub(r0, &field.mul(&u, x0));
            if field.is_zero(&u) || field.is_zero(&v) {
                continue;
            }
            let f = Factor::Linear(LinearFactor::y_minus(field, &u, &v));
            if !candidates.contains(&f) {
                candidates.push(f);
            }
        }
    }
    accept_on_pieces(p, &pieces, layout, candidates, opts, report)
}
