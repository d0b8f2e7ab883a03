use crate::coeffring::Field;
use crate::poly::dense::DensePoly;

/// A dense bivariate polynomial stored as a polynomial in `Y` whose
/// coefficients are dense polynomials in `X`: `rows[j]` is the coefficient
/// of `Y^j`. No trailing zero rows.
#[derive(Clone, Debug, PartialEq)]
pub struct DensePolyBi<F: Field> {
    field: F,
    rows: Vec<DensePoly<F>>,
}

impl<F: Field> DensePolyBi<F> {
    pub fn new(field: F, mut rows: Vec<DensePoly<F>>) -> Self {
        while rows.last().is_some_and(DensePoly::is_zero) {
            rows.pop();
        }
        DensePolyBi { field, rows }
    }

    pub fn zero(field: F) -> Self {
        DensePolyBi {
            field,
            rows: Vec::new(),
        }
    }

    /// From `(coeff, x_exp, y_exp)` triples; repeated exponents add up.
    pub fn from_terms(field: F, terms: &[(F::Elem, usize, usize)]) -> Self {
        let ydeg = terms.iter().map(|t| t.2).max();
        let Some(ydeg) = ydeg else {
            return DensePolyBi::zero(field);
        };
        let mut grid: Vec<Vec<F::Elem>> = vec![Vec::new(); ydeg + 1];
        for (c, a, b) in terms {
            let row = &mut grid[*b];
            if row.len() <= *a {
                row.resize(a + 1, field.zero());
            }
            row[*a] = field.add(&row[*a], c);
        }
        let rows = grid.into_iter().map(|r| DensePoly::new(field.clone(), r)).collect();
        DensePolyBi::new(field, rows)
    }

    /// Product `X`-part times `Y`-part of two univariate polynomials.
    pub fn from_rows(field: F, rows: Vec<DensePoly<F>>) -> Self {
        DensePolyBi::new(field, rows)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn rows(&self) -> &[DensePoly<F>] {
        &self.rows
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// Degree in `Y`; `None` for zero.
    pub fn y_degree(&self) -> Option<usize> {
        self.rows.len().checked_sub(1)
    }

    pub fn x_degree(&self) -> Option<usize> {
        self.rows.iter().filter_map(DensePoly::degree).max()
    }

    /// Coefficient of `X^i Y^j`.
    pub fn coeff(&self, i: usize, j: usize) -> F::Elem {
        self.rows
            .get(j)
            .map(|r| r.coeff(i))
            .unwrap_or_else(|| self.field.zero())
    }

    /// Nonzero `(coeff, x_exp, y_exp)` triples, ordered by `(x_exp, y_exp)`.
    pub fn terms(&self) -> Vec<(F::Elem, usize, usize)> {
        let mut out = Vec::new();
        for (j, row) in self.rows.iter().enumerate() {
            for (i, c) in row.coeffs().iter().enumerate() {
                if !self.field.is_zero(c) {
                    out.push((c.clone(), i, j));
                }
            }
        }
        out.sort_by_key(|t| (t.1, t.2));
        out
    }

    pub fn term_count(&self) -> usize {
        self.rows.iter().map(DensePoly::term_count).sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.rows.len().max(other.rows.len());
        let zero = DensePoly::zero(self.field.clone());
        let rows = (0..n)
            .map(|j| {
                self.rows
                    .get(j)
                    .unwrap_or(&zero)
                    .add(other.rows.get(j).unwrap_or(&zero))
            })
            .collect();
        DensePolyBi::new(self.field.clone(), rows)
    }

    pub fn neg(&self) -> Self {
        DensePolyBi {
            field: self.field.clone(),
            rows: self.rows.iter().map(DensePoly::neg).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let rows = self.rows.iter().map(|r| r.scale(c)).collect();
        DensePolyBi::new(self.field.clone(), rows)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return DensePolyBi::zero(self.field.clone());
        }
        let mut rows = vec![DensePoly::zero(self.field.clone()); self.rows.len() + other.rows.len() - 1];
        for (i, a) in self.rows.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.rows.iter().enumerate() {
                rows[i + j] = rows[i + j].add(&a.mul(b));
            }
        }
        DensePolyBi::new(self.field.clone(), rows)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = DensePolyBi::from_terms(self.field.clone(), &[(self.field.one(), 0, 0)]);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// `Q(x, Y)` as a polynomial in `Y`.
    pub fn specialize_x(&self, x: &F::Elem) -> DensePoly<F> {
        let coeffs = self.rows.iter().map(|r| r.eval(x)).collect();
        DensePoly::new(self.field.clone(), coeffs)
    }

    /// `Q(X, y)` as a polynomial in `X`.
    pub fn specialize_y(&self, y: &F::Elem) -> DensePoly<F> {
        let f = &self.field;
        self.rows
            .iter()
            .rev()
            .fold(DensePoly::zero(f.clone()), |acc, r| acc.scale(y).add(r))
    }

    /// Exchanges `X` and `Y`.
    pub fn transpose(&self) -> Self {
        let terms: Vec<_> = self.terms().into_iter().map(|(c, a, b)| (c, b, a)).collect();
        DensePolyBi::from_terms(self.field.clone(), &terms)
    }

    /// `Q(X, Z + uX + v)` in the variables `(X, Z)`; row `j` of the result is
    /// the coefficient of `Z^j`.
    pub fn substitute_shift(&self, u: &F::Elem, v: &F::Elem) -> Self {
        let f = &self.field;
        let line = DensePoly::new(f.clone(), vec![v.clone(), u.clone()]);
        let mut acc: Vec<DensePoly<F>> = Vec::new();
        for r in self.rows.iter().rev() {
            // acc <- acc * (Z + line) + r
            let mut next = vec![DensePoly::zero(f.clone()); acc.len() + 1];
            for (j, a) in acc.iter().enumerate() {
                next[j + 1] = next[j + 1].add(a);
                next[j] = next[j].add(&a.mul(&line));
            }
            next[0] = next[0].add(r);
            acc = next;
        }
        DensePolyBi::new(f.clone(), acc)
    }

    /// Lowest `Y`-power (here the shifted variable) with a nonzero
    /// coefficient; `None` for zero.
    pub fn y_valuation(&self) -> Option<usize> {
        self.rows.iter().position(|r| !r.is_zero())
    }

    /// Exact division by `lead(X) * Y + tail(X)` in `F[X][Y]`.
    pub fn exact_div_linear_in_y(&self, lead: &DensePoly<F>, tail: &DensePoly<F>) -> Option<Self> {
        let f = &self.field;
        if lead.is_zero() {
            if tail.is_zero() {
                return None;
            }
            let rows = self
                .rows
                .iter()
                .map(|r| r.exact_div(tail))
                .collect::<Option<Vec<_>>>()?;
            return Some(DensePolyBi::new(f.clone(), rows));
        }
        if self.is_zero() {
            return Some(self.clone());
        }
        let mut rem = self.rows.clone();
        let n = rem.len() - 1;
        if n == 0 {
            return None;
        }
        let mut quot = vec![DensePoly::zero(f.clone()); n];
        for i in (1..=n).rev() {
            let q = rem[i].exact_div(lead)?;
            rem[i - 1] = rem[i - 1].sub(&q.mul(tail));
            quot[i - 1] = q;
        }
        rem[0].is_zero().then(|| DensePolyBi::new(f.clone(), quot))
    }

    /// Largest `m` with `(lead(X) Y + tail(X))^m` dividing `self`. Zero input
    /// returns `None`.
    pub fn multiplicity_linear_in_y(&self, lead: &DensePoly<F>, tail: &DensePoly<F>) -> Option<usize> {
        if self.is_zero() {
            return None;
        }
        let mut cur = self.clone();
        let mut m = 0;
        while let Some(q) = cur.exact_div_linear_in_y(lead, tail) {
            if q.is_zero() {
                break;
            }
            cur = q;
            m += 1;
        }
        Some(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffring::Rationals;

    fn bi(terms: &[(i64, usize, usize)]) -> DensePolyBi<Rationals> {
        let t: Vec<_> = terms.iter().map(|&(c, a, b)| (Rationals.from_i64(c), a, b)).collect();
        DensePolyBi::from_terms(Rationals, &t)
    }

    #[test]
    fn shift_of_defining_line_is_z() {
        // Y - 2X - 3 -> Z
        let q = bi(&[(1, 0, 1), (-2, 1, 0), (-3, 0, 0)]);
        let s = q.substitute_shift(&Rationals.from_i64(2), &Rationals.from_i64(3));
        assert_eq!(s, bi(&[(1, 0, 1)]));
        assert_eq!(s.y_valuation(), Some(1));
    }

    #[test]
    fn shift_of_square() {
        // (Y - X - 1)^2 -> Z^2
        let l = bi(&[(1, 0, 1), (-1, 1, 0), (-1, 0, 0)]);
        let q = l.mul(&l);
        let s = q.substitute_shift(&Rationals.from_i64(1), &Rationals.from_i64(1));
        assert_eq!(s, bi(&[(1, 0, 2)]));
    }

    #[test]
    fn shift_leaves_y_free_polynomials() {
        let q = bi(&[(3, 2, 0), (1, 0, 0)]);
        let s = q.substitute_shift(&Rationals.from_i64(5), &Rationals.from_i64(-7));
        assert_eq!(s, q);
    }

    #[test]
    fn bilinear_division() {
        // F = XY + 2Y - 3X - 5 = (X + 2) Y - (3X + 5)
        let f = bi(&[(1, 1, 1), (2, 0, 1), (-3, 1, 0), (-5, 0, 0)]);
        let g = bi(&[(1, 3, 0), (1, 0, 2), (7, 0, 0)]);
        let p = f.mul(&f).mul(&g);
        let lead = DensePoly::from_i64s(Rationals, &[2, 1]);
        let tail = DensePoly::from_i64s(Rationals, &[-5, -3]);
        assert_eq!(p.multiplicity_linear_in_y(&lead, &tail), Some(2));
        assert_eq!(p.exact_div_linear_in_y(&lead, &tail).unwrap(), f.mul(&g));
        assert_eq!(g.multiplicity_linear_in_y(&lead, &tail), Some(0));
    }

    #[test]
    fn specializations() {
        let q = bi(&[(1, 1, 1), (2, 0, 2), (-1, 0, 0)]);
        let two = Rationals.from_i64(2);
        assert_eq!(q.specialize_x(&two), DensePoly::from_i64s(Rationals, &[-1, 2, 2]));
        assert_eq!(q.specialize_y(&two), DensePoly::from_i64s(Rationals, &[7, 2]));
        assert_eq!(q.transpose().transpose(), q);
    }
}
