//! Exact elimination over a [`FieldSpec`].

use crate::field::{FieldSpec, Scalar};

/// Rank by Gaussian elimination; the pivot is the first nonzero entry at or
/// below the current row, scanning columns left to right.
pub fn rank(rows: &[Vec<Scalar>]) -> usize {
    let mut m: Vec<Vec<Scalar>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(pivot) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pivot);
        let inv = m[r][c].inverse().expect("pivot is nonzero");
        for i in r + 1..m.len() {
            if m[i][c].is_zero() {
                continue;
            }
            let factor = &m[i][c] * &inv;
            let (top, bottom) = m.split_at_mut(i);
            for (target, x) in bottom[0][c..ncols].iter_mut().zip(&top[r][c..ncols]) {
                if !x.is_zero() {
                    *target -= &(&factor * x);
                }
            }
        }
        r += 1;
    }
    r
}

/// A subspace of `field^width` held as a fully reduced row echelon basis.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: FieldSpec,
    width: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(field: FieldSpec, width: usize) -> Self {
        Echelon {
            field,
            width,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_rows<I: IntoIterator<Item = Vec<Scalar>>>(field: FieldSpec, width: usize, rows: I) -> Self {
        let mut e = Echelon::new(field, width);
        for row in rows {
            e.insert(row);
        }
        e
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Basis rows in order of increasing pivot column.
    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Subtracts the projection onto the pivot columns, leaving the residue.
    pub fn reduce(&self, v: &mut [Scalar]) {
        assert_eq!(v.len(), self.width, "vector width");
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            if v[pc].is_zero() {
                continue;
            }
            let factor = v[pc].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &(&factor * r);
                }
            }
        }
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(Scalar::is_zero)
    }

    /// Adds `v` to the span. Returns false when `v` was already in it.
    pub fn insert(&mut self, mut v: Vec<Scalar>) -> bool {
        self.reduce(&mut v);
        let Some(pc) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[pc].inverse().expect("leading entry is nonzero");
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        for row in self.rows.iter_mut() {
            if row[pc].is_zero() {
                continue;
            }
            let factor = row[pc].clone();
            for (x, y) in row.iter_mut().zip(&v) {
                if !y.is_zero() {
                    *x -= &(&factor * y);
                }
            }
        }
        let at = self.pivots.partition_point(|&p| p < pc);
        self.pivots.insert(at, pc);
        self.rows.insert(at, v);
        true
    }

    /// True iff every row of `other` lies in this span.
    pub fn contains_all(&self, other: &Echelon) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    /// Dimension of the sum of the two spans.
    pub fn sum_dim(&self, other: &Echelon) -> usize {
        let mut s = self.clone();
        for r in &other.rows {
            s.insert(r.clone());
        }
        s.dim()
    }

    pub fn intersection_dim(&self, other: &Echelon) -> usize {
        self.dim() + other.dim() - self.sum_dim(other)
    }

    /// Basis of `{x : r·x = 0 for every row r}`.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let zero = self.field.zero();
        let one = self.field.one();
        (0..self.width)
            .filter(|c| self.pivots.binary_search(c).is_err())
            .map(|free| {
                let mut x = vec![zero.clone(); self.width];
                x[free] = one.clone();
                for (row, &pc) in self.rows.iter().zip(&self.pivots) {
                    x[pc] = -&row[free];
                }
                x
            })
            .collect()
    }
}

/// Basis of the right kernel `{x : M x = 0}` of a row-major matrix.
pub fn kernel(rows: &[Vec<Scalar>], ncols: usize, field: FieldSpec) -> Vec<Vec<Scalar>> {
    Echelon::from_rows(field, ncols, rows.iter().cloned()).nullspace()
}

pub fn transpose(rows: &[Vec<Scalar>], ncols: usize) -> Vec<Vec<Scalar>> {
    (0..ncols).map(|c| rows.iter().map(|r| r[c].clone()).collect()).collect()
}

/// Inverse of a square matrix by Gauss-Jordan; `None` when singular.
pub fn inverse(rows: &[Vec<Scalar>], field: FieldSpec) -> Option<Vec<Vec<Scalar>>> {
    let n = rows.len();
    let mut aug: Vec<Vec<Scalar>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { field.one() } else { field.zero() }));
            row
        })
        .collect();
    for c in 0..n {
        let pivot = (c..n).find(|&i| !aug[i][c].is_zero())?;
        aug.swap(c, pivot);
        let inv = aug[c][c].inverse().ok()?;
        for x in aug[c].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..n {
            if i == c || aug[i][c].is_zero() {
                continue;
            }
            let factor = aug[i][c].clone();
            let pivot_row = aug[c].clone();
            for (x, y) in aug[i].iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &(&factor * y);
                }
            }
        }
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn mat_mul(a: &[Vec<Scalar>], b: &[Vec<Scalar>], field: FieldSpec) -> Vec<Vec<Scalar>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut acc = field.zero();
                    for k in 0..inner {
                        if !row[k].is_zero() && !b[k][j].is_zero() {
                            acc += &(&row[k] * &b[k][j]);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn mat(field: FieldSpec, rows: &[&[i64]]) -> Vec<Vec<Scalar>> {
        rows.iter().map(|r| r.iter().map(|&x| field.from_i64(x)).collect()).collect()
    }

    #[test]
    fn rank_small() {
        assert_eq!(rank(&mat(q(), &[&[0, 0], &[0, 0]])), 0);
        assert_eq!(rank(&mat(q(), &[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(&mat(q(), &[&[1, 2], &[3, 4]])), 2);
        let f2 = FieldSpec::prime(2).unwrap();
        // determinant -2 vanishes in characteristic 2
        assert_eq!(rank(&mat(f2, &[&[1, 2], &[3, 4]])), 1);
    }

    #[test]
    fn echelon_membership_and_kernel() {
        let m = mat(q(), &[&[1, 1, 0], &[0, 1, 1]]);
        let e = Echelon::from_rows(q(), 3, m.clone());
        assert_eq!(e.dim(), 2);
        assert!(e.contains(&mat(q(), &[&[1, 2, 1]])[0]));
        assert!(!e.contains(&mat(q(), &[&[0, 0, 1]])[0]));
        let ker = kernel(&m, 3, q());
        assert_eq!(ker.len(), 1);
        for r in &m {
            let dot = r.iter().zip(&ker[0]).fold(q().zero(), |acc, (a, b)| acc + a * b);
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn intersection() {
        let a = Echelon::from_rows(q(), 3, mat(q(), &[&[1, 0, 0], &[0, 1, 0]]));
        let b = Echelon::from_rows(q(), 3, mat(q(), &[&[0, 1, 0], &[0, 0, 1]]));
        assert_eq!(a.intersection_dim(&b), 1);
        assert!(!a.contains_all(&b));
    }

    #[test]
    fn inverse_roundtrip() {
        let m = mat(q(), &[&[2, 1], &[1, 1]]);
        let inv = inverse(&m, q()).unwrap();
        assert_eq!(mat_mul(&m, &inv, q()), mat(q(), &[&[1, 0], &[0, 1]]));
        assert!(inverse(&mat(q(), &[&[1, 2], &[2, 4]]), q()).is_none());
    }
}
