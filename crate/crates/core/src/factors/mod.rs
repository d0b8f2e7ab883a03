//! Linear and multilinear factors of lacunary bivariate polynomials, with
//! multiplicities and re-checkable evidence.

mod evidence;
mod linear;
mod multilinear;
mod roots;
mod verify;

use num_bigint::BigUint;

use crate::coeffring::{Field, GaloisField, Rationals};
use crate::error::{domain, Result};
use crate::pit::{zero_test_fp, zero_test_q, Certainty, PitField, PitOptions, ZeroTestVerdict};
use crate::poly::BinomExprPoly;

pub use linear::{factor_multiplicity, fp_form_supported, linear_factors_fp, linear_factors_q};
pub use multilinear::multilinear_factors_q;
pub use roots::{
    dense_rational_roots, fp_dense_roots, lacunary_root_multiplicity, lacunary_univariate_rational_roots, RootList,
    MAX_ROOT_CANDIDATES,
};
pub use verify::verify_report;

/// Budget of specialization points tried before giving up.
pub const SPECIALIZATION_BUDGET: u32 = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LinearForm {
    /// `X - a`
    XminusA,
    /// `Y - b`
    YminusB,
    /// `Y - uX` with `u != 0`
    YminusUX,
    /// `uX + vY + w` with `uvw != 0`
    General,
}

/// `uX + vY + w`, scaled canonically: over Q a primitive integer triple,
/// over `F_{p^s}` monic; in both cases the first nonzero of `(v, u, w)` is
/// positive (respectively one).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearFactor<E> {
    u: E,
    v: E,
    w: E,
}

impl<E: Clone> LinearFactor<E> {
    pub fn new<F: Field<Elem = E>>(field: &F, u: E, v: E, w: E) -> Result<Self> {
        if field.is_zero(&u) && field.is_zero(&v) {
            return Err(domain("a linear factor needs a nonzero X or Y coefficient"));
        }
        let s = field.canonical_scale(&[v, u, w]);
        Ok(LinearFactor {
            u: s[1].clone(),
            v: s[0].clone(),
            w: s[2].clone(),
        })
    }

    /// `X - a`.
    pub fn x_minus<F: Field<Elem = E>>(field: &F, a: &E) -> Self {
        Self::new(field, field.one(), field.zero(), field.neg(a)).unwrap()
    }

    /// `Y - uX - v`.
    pub fn y_minus<F: Field<Elem = E>>(field: &F, u: &E, v: &E) -> Self {
        Self::new(field, field.neg(u), field.one(), field.neg(v)).unwrap()
    }

    pub fn u(&self) -> &E {
        &self.u
    }

    pub fn v(&self) -> &E {
        &self.v
    }

    pub fn w(&self) -> &E {
        &self.w
    }

    pub fn form<F: Field<Elem = E>>(&self, field: &F) -> LinearForm {
        if field.is_zero(&self.v) {
            LinearForm::XminusA
        } else if field.is_zero(&self.u) {
            LinearForm::YminusB
        } else if field.is_zero(&self.w) {
            LinearForm::YminusUX
        } else {
            LinearForm::General
        }
    }

    /// `(u', v')` with the factor associate to `Y - u'X - v'`, when `v != 0`.
    pub fn as_y_line<F: Field<Elem = E>>(&self, field: &F) -> Option<(E, E)> {
        let inv = field.inv(&self.v)?;
        Some((
            field.neg(&field.mul(&self.u, &inv)),
            field.neg(&field.mul(&self.w, &inv)),
        ))
    }

    /// `a` with the factor associate to `X - a`, when `v = 0`.
    pub fn as_x_root<F: Field<Elem = E>>(&self, field: &F) -> Option<E> {
        if !field.is_zero(&self.v) {
            return None;
        }
        Some(field.neg(&field.div(&self.w, &self.u)?))
    }
}

/// `XY + bY - aX - c`, which is irreducible exactly when `c != ab`; the
/// reducible members of the family are products of linear factors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultilinearFactor<E> {
    a: E,
    b: E,
    c: E,
}

impl<E: Clone> MultilinearFactor<E> {
    pub fn new(a: E, b: E, c: E) -> Self {
        MultilinearFactor { a, b, c }
    }

    pub fn a(&self) -> &E {
        &self.a
    }

    pub fn b(&self) -> &E {
        &self.b
    }

    pub fn c(&self) -> &E {
        &self.c
    }

    pub fn is_irreducible<F: Field<Elem = E>>(&self, field: &F) -> bool {
        !field.is_zero(&field.sub(&self.c, &field.mul(&self.a, &self.b)))
    }

    /// Canonically scaled coefficients `(A, B, C, D)` of `AXY + BX + CY + D`.
    pub fn scaled_coefficients<F: Field<Elem = E>>(&self, field: &F) -> [E; 4] {
        let s = field.canonical_scale(&[field.one(), field.neg(&self.a), self.b.clone(), field.neg(&self.c)]);
        [s[0].clone(), s[1].clone(), s[2].clone(), s[3].clone()]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Factor<E> {
    Linear(LinearFactor<E>),
    Multilinear(MultilinearFactor<E>),
}

impl<E: Clone> Factor<E> {
    /// Display form such as `2*X + 3*Y - 5` or `X*Y + Y - 2*X - 3`.
    pub fn display<F: Field<Elem = E>>(&self, field: &F) -> String {
        let terms: Vec<(E, &str)> = match self {
            Factor::Linear(l) => vec![(l.u.clone(), "X"), (l.v.clone(), "Y"), (l.w.clone(), "")],
            Factor::Multilinear(m) => {
                let [a, x, y, d] = m.scaled_coefficients(field);
                vec![(a, "X*Y"), (x, "X"), (y, "Y"), (d, "")]
            }
        };
        render_terms(field, &terms)
    }

    fn sort_key<F: Field<Elem = E>>(&self, field: &F) -> (u8, Vec<String>) {
        match self {
            Factor::Linear(l) => (
                0,
                vec![
                    format!("{:?}", l.form(field)),
                    field.format_elem(&l.v),
                    field.format_elem(&l.u),
                    field.format_elem(&l.w),
                ],
            ),
            Factor::Multilinear(m) => (1, [&m.a, &m.b, &m.c].iter().map(|e| field.format_elem(e)).collect()),
        }
    }
}

fn render_terms<F: Field>(field: &F, terms: &[(F::Elem, &str)]) -> String {
    let mut out = String::new();
    for (c, var) in terms.iter().filter(|(c, _)| !field.is_zero(c)) {
        let text = field.format_elem(c);
        let (neg, mag) = match text.strip_prefix('-') {
            Some(m) if field.is_char_zero() => (true, m.to_string()),
            _ => (false, text),
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        match (*var, mag.as_str()) {
            ("", m) => out.push_str(m),
            (v, "1") => out.push_str(v),
            (v, m) => out.push_str(&format!("{m}*{v}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// How terms are grouped into univariate polynomials whose common roots
/// give the factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Grouping {
    /// By `beta`, polynomials in `X`: factors `X - a`.
    ByBeta,
    /// By `alpha`, polynomials in `Y`: factors `Y - b`.
    ByAlpha,
    /// By `alpha + beta`, polynomials `sum a_j t^beta_j`: factors `Y - uX`.
    ByTotalDegree,
    /// By `alpha - beta`, polynomials `sum a_j t^beta_j`: factors `XY - c`.
    ByAlphaMinusBeta,
}

/// Layout of a piece decomposition used as evidence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PieceLayout {
    /// Split on `alpha`, then on `beta`, with the given gap weight.
    Gap { weight: u32 },
    /// Split on `alpha - beta`, then on `beta` (factors `XY - aX - c`).
    AlphaMinusBeta,
    /// Split on `beta - alpha`, then on `alpha` (factors `XY + bY - c`).
    BetaMinusAlpha,
    /// Split on `alpha + beta`, then on `-beta` (factors `XY + bY - aX`).
    TotalDegree,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EvidenceSource {
    Groups(Grouping),
    Pieces(PieceLayout),
}

/// Multiplicity of the factor in every group or piece, in order, plus the
/// zero test of `P` restricted to the curve of the factor when that
/// restriction has a binomial form.
#[derive(Clone, Debug, PartialEq)]
pub struct Evidence {
    pub source: EvidenceSource,
    pub multiplicities: Vec<BigUint>,
    pub restriction: Option<ZeroTestVerdict>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FactorEntry<E> {
    pub factor: Factor<E>,
    pub multiplicity: BigUint,
    pub evidence: Evidence,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FactorReport<E> {
    pub entries: Vec<FactorEntry<E>>,
    pub certainty: Certainty,
}

impl<E: Clone + PartialEq> FactorReport<E> {
    pub fn factors(&self) -> impl Iterator<Item = &Factor<E>> {
        self.entries.iter().map(|e| &e.factor)
    }

    pub fn multiplicity_of(&self, f: &Factor<E>) -> Option<&BigUint> {
        self.entries.iter().find(|e| &e.factor == f).map(|e| &e.multiplicity)
    }

    /// Sorts entries canonically and drops duplicates.
    pub(crate) fn finish<F: Field<Elem = E>>(mut self, field: &F) -> Self {
        self.entries.sort_by_cached_key(|e| e.factor.sort_key(field));
        self.entries.dedup_by(|a, b| a.factor == b.factor);
        self
    }
}

/// Fields with a full zero test of binomial expressions, used for the
/// restriction checks.
pub trait FactorField: PitField {
    fn restriction_test(p: &BinomExprPoly<Self>, opts: &PitOptions) -> Result<ZeroTestVerdict>;
}

impl FactorField for Rationals {
    fn restriction_test(p: &BinomExprPoly<Self>, opts: &PitOptions) -> Result<ZeroTestVerdict> {
        zero_test_q(p, opts)
    }
}

impl FactorField for GaloisField {
    fn restriction_test(p: &BinomExprPoly<Self>, _opts: &PitOptions) -> Result<ZeroTestVerdict> {
        zero_test_fp(p)
    }
}
