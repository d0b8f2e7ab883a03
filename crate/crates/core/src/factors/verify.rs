use num_bigint::BigUint;
use num_traits::Zero;

use super::evidence::{group_root, groups, layout_pieces, piece_multiplicity, restriction};
use super::roots::lacunary_root_multiplicity;
use super::{EvidenceSource, FactorField, FactorReport};
use crate::error::{domain, Result};
use crate::pit::PitOptions;
use crate::poly::LacunaryPoly;

/// Recomputes every entry's evidence from `p` and checks it: the group or
/// piece multiplicities match, their minimum is the reported multiplicity
/// (at least one), and the restriction test, when recorded, is again Zero.
pub fn verify_report<F: FactorField>(
    p: &LacunaryPoly<F>,
    report: &FactorReport<F::Elem>,
    opts: &PitOptions,
) -> Result<bool> {
    let p = p.normalize();
    let field = p.field();
    for entry in &report.entries {
        if entry.multiplicity.is_zero() {
            return Ok(false);
        }
        let multiplicities: Vec<BigUint> = match entry.evidence.source {
            EvidenceSource::Groups(g) => {
                let r = group_root(field, &entry.factor, g)
                    .ok_or_else(|| domain("factor does not match the grouping of its evidence"))?;
                groups(&p, g)
                    .iter()
                    .map(|q| lacunary_root_multiplicity(q, &r, opts).map(|(m, _)| m))
                    .collect::<Result<_>>()?
            }
            EvidenceSource::Pieces(layout) => layout_pieces(&p, layout)?
                .iter()
                .map(|q| BigUint::from(piece_multiplicity(q, &entry.factor)))
                .collect(),
        };
        if multiplicities != entry.evidence.multiplicities || multiplicities.iter().min() != Some(&entry.multiplicity) {
            return Ok(false);
        }
        match (&entry.evidence.restriction, restriction(&p, &entry.factor)) {
            (None, None) => {}
            (Some(_), Some(b)) => {
                if !F::restriction_test(&b, opts)?.is_zero() {
                    return Ok(false);
                }
            }
            _ => return Ok(false),
        }
    }
    Ok(true)
}
