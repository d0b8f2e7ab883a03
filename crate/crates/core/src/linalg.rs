//! Exact linear algebra over a [`Field`] and fraction-free determinants of
//! polynomial matrices.

use crate::coeffring::Field;
use crate::poly::DensePoly;

/// Reduced row echelon form in place, pivoting only among the first `ncols`
/// columns; returns the pivot columns.
fn rref<F: Field>(field: &F, m: &mut [Vec<F::Elem>], ncols: usize) -> Vec<usize> {
    let width = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == m.len() {
            break;
        }
        let Some(sel) = (row..m.len()).find(|&r| !field.is_zero(&m[r][col])) else {
            continue;
        };
        m.swap(row, sel);
        let inv = field.inv(&m[row][col]).unwrap();
        for x in &mut m[row][col..width] {
            *x = field.mul(x, &inv);
        }
        let pivot_row = m[row].clone();
        for (r, line) in m.iter_mut().enumerate() {
            if r == row || field.is_zero(&line[col]) {
                continue;
            }
            let factor = line[col].clone();
            for (x, p) in line[col..width].iter_mut().zip(&pivot_row[col..width]) {
                *x = field.sub(x, &field.mul(&factor, p));
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank<F: Field>(field: &F, rows: &[Vec<F::Elem>]) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut m = rows.to_vec();
    rref(field, &mut m, ncols).len()
}

/// A basis of `{ x : A x = 0 }` for the `nrows x ncols` matrix `rows`.
pub fn nullspace<F: Field>(field: &F, rows: &[Vec<F::Elem>], ncols: usize) -> Vec<Vec<F::Elem>> {
    let mut m = rows.to_vec();
    let pivots = rref(field, &mut m, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut x = vec![field.zero(); ncols];
            x[fc] = field.one();
            for (r, &pc) in pivots.iter().enumerate() {
                x[pc] = field.neg(&m[r][fc]);
            }
            x
        })
        .collect()
}

/// The unique solution of a square system, `None` when singular.
pub fn solve<F: Field>(field: &F, a: &[Vec<F::Elem>], b: &[F::Elem]) -> Option<Vec<F::Elem>> {
    let n = a.len();
    let mut m: Vec<Vec<F::Elem>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(field, &mut m, n);
    if pivots.len() < n {
        return None;
    }
    Some(m.into_iter().map(|r| r[n].clone()).collect())
}

/// Determinant of a square matrix of polynomials by Bareiss' fraction-free
/// elimination; every intermediate division is exact in `F[X]`.
pub fn poly_det<F: Field>(field: &F, mut m: Vec<Vec<DensePoly<F>>>) -> DensePoly<F> {
    let n = m.len();
    if n == 0 {
        return DensePoly::one(field.clone());
    }
    let mut negate = false;
    let mut prev = DensePoly::one(field.clone());
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    negate = !negate;
                }
                None => return DensePoly::zero(field.clone()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num.exact_div(&prev).expect("Bareiss step must divide exactly");
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        det.neg()
    } else {
        det
    }
}
