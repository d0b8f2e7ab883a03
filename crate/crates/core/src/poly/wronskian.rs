use crate::coeffring::Field;
use crate::error::{domain, Result};
use crate::linalg::poly_det;
use crate::poly::dense::DensePoly;

/// Largest family accepted by [`wronskian`].
pub const WRONSKIAN_MAX_FAMILY: usize = 8;

/// `det (f_j^(i))` for `i = 0..k-1`, computed fraction-free.
pub fn wronskian<F: Field>(fs: &[DensePoly<F>]) -> Result<DensePoly<F>> {
    let k = fs.len();
    if k == 0 {
        return Err(domain("wronskian of an empty family"));
    }
    if k > WRONSKIAN_MAX_FAMILY {
        return Err(domain(format!(
            "wronskian family of size {k} exceeds {WRONSKIAN_MAX_FAMILY}"
        )));
    }
    let field = fs[0].field().clone();
    let mut row: Vec<DensePoly<F>> = fs.to_vec();
    let mut m = Vec::with_capacity(k);
    for _ in 0..k {
        let next = row.iter().map(DensePoly::derivative).collect();
        m.push(std::mem::replace(&mut row, next));
    }
    Ok(poly_det(&field, m))
}
