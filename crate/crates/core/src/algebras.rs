//! Algebra semantics of a structure vector: products, identity-defined
//! predicates, and the rank invariants used as degeneration obstructions.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::{self, Echelon};
use crate::poly::Polynomial;
use crate::tensor::StructureVector;

/// Coordinates of an element of the underlying space in the working basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoordinateVector {
    field: FieldSpec,
    coords: Vec<Scalar>,
}

impl CoordinateVector {
    pub fn new(field: FieldSpec, coords: Vec<Scalar>) -> Result<Self> {
        if let Some(bad) = coords.iter().find(|c| c.spec() != field) {
            return Err(Error::FieldMismatch(field.to_string(), bad.spec().to_string()));
        }
        Ok(CoordinateVector { field, coords })
    }

    pub fn from_i64(field: FieldSpec, coords: &[i64]) -> Self {
        CoordinateVector {
            field,
            coords: coords.iter().map(|&c| field.from_i64(c)).collect(),
        }
    }

    pub fn zero(field: FieldSpec, n: usize) -> Self {
        CoordinateVector {
            field,
            coords: vec![field.zero(); n],
        }
    }

    /// The zero-based standard basis vector `e_i`.
    pub fn basis(field: FieldSpec, n: usize, i: usize) -> Self {
        let mut v = CoordinateVector::zero(field, n);
        v.coords[i] = field.one();
        v
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn n(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, other: &CoordinateVector) -> CoordinateVector {
        CoordinateVector {
            field: self.field,
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> CoordinateVector {
        CoordinateVector {
            field: self.field,
            coords: self.coords.iter().map(|a| a * c).collect(),
        }
    }
}

fn check_coords(lambda: &StructureVector, x: &CoordinateVector) -> Result<()> {
    if x.n() != lambda.n() {
        return Err(Error::DimensionMismatch {
            expected: lambda.n(),
            found: x.n(),
        });
    }
    if x.field() != lambda.field() {
        return Err(Error::FieldMismatch(lambda.field().to_string(), x.field().to_string()));
    }
    Ok(())
}

/// `[x, y]`, with coordinate `k` equal to `Σ_{i,j} x_i y_j λ_ijk`.
pub fn product(lambda: &StructureVector, x: &CoordinateVector, y: &CoordinateVector) -> Result<CoordinateVector> {
    check_coords(lambda, x)?;
    check_coords(lambda, y)?;
    let n = lambda.n();
    let field = lambda.field();
    let mut out = vec![field.zero(); n];
    for ((i, j, k), c) in lambda.support() {
        let (xi, yj) = (&x.coords[i], &y.coords[j]);
        if xi.is_zero() || yj.is_zero() {
            continue;
        }
        out[k] += &(&(xi * yj) * c);
    }
    Ok(CoordinateVector { field, coords: out })
}

pub fn is_skew(lambda: &StructureVector) -> bool {
    let n = lambda.n();
    (0..n).all(|i| {
        (0..n).all(|j| {
            (0..n).all(|k| {
                let s = lambda.get(i, j, k) + lambda.get(j, i, k);
                s.is_zero() && (i != j || lambda.get(i, i, k).is_zero())
            })
        })
    })
}

/// Skew and the Jacobi sums `Σ_k λ_ijk λ_klm + λ_jlk λ_kim + λ_lik λ_kjm` vanish.
pub fn is_lie(lambda: &StructureVector) -> bool {
    if !is_skew(lambda) {
        return false;
    }
    let n = lambda.n();
    let field = lambda.field();
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                for m in 0..n {
                    let mut s = field.zero();
                    for k in 0..n {
                        s += &(lambda.get(i, j, k) * lambda.get(k, l, m));
                        s += &(lambda.get(j, l, k) * lambda.get(k, i, m));
                        s += &(lambda.get(l, i, k) * lambda.get(k, j, m));
                    }
                    if !s.is_zero() {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// All products `[[e_i, e_j], e_k]` vanish.
pub fn is_metabelian(lambda: &StructureVector) -> bool {
    let n = lambda.n();
    let field = lambda.field();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for m in 0..n {
                    let mut s = field.zero();
                    for l in 0..n {
                        let a = lambda.get(i, j, l);
                        if !a.is_zero() {
                            s += &(a * lambda.get(l, k, m));
                        }
                    }
                    if !s.is_zero() {
                        return false;
                    }
                }
            }
        }
    }
    true
}

pub fn is_commutative(lambda: &StructureVector) -> bool {
    let n = lambda.n();
    (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| lambda.get(i, j, k) == lambda.get(j, i, k))))
}

/// trace(ad_{e_i}) = Σ_j λ_ijj for the zero-based index `i`.
pub fn ad_trace(lambda: &StructureVector, i: usize) -> Result<Scalar> {
    let n = lambda.n();
    if i >= n {
        return Err(Error::IndexOutOfRange { index: i, n });
    }
    let mut s = lambda.field().zero();
    for j in 0..n {
        s += lambda.get(i, j, j);
    }
    Ok(s)
}

pub fn is_unimodular(lambda: &StructureVector) -> bool {
    (0..lambda.n()).all(|i| ad_trace(lambda, i).expect("index in range").is_zero())
}

/// Dimensions of the left, right and two-sided annihilators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct AnnDims {
    pub left: usize,
    pub right: usize,
    pub two_sided: usize,
}

/// Row `j` lists `λ_ijk` over columns `(i, k)`: the left kernel is ann_R.
fn right_matrix(lambda: &StructureVector) -> Vec<Vec<Scalar>> {
    let n = lambda.n();
    (0..n)
        .map(|j| {
            let mut row = Vec::with_capacity(n * n);
            for i in 0..n {
                for k in 0..n {
                    row.push(lambda.get(i, j, k).clone());
                }
            }
            row
        })
        .collect()
}

pub fn ann_dims(lambda: &StructureVector) -> AnnDims {
    let n = lambda.n();
    let left_rows = lambda.flatten_a().to_rows();
    let right_rows = right_matrix(lambda);
    let both: Vec<Vec<Scalar>> = left_rows
        .iter()
        .zip(&right_rows)
        .map(|(a, b)| a.iter().chain(b).cloned().collect())
        .collect();
    AnnDims {
        left: n - linalg::rank(&left_rows),
        right: n - linalg::rank(&right_rows),
        two_sided: n - linalg::rank(&both),
    }
}

/// dim g², the rank of b̃(λ).
pub fn square_dim(lambda: &StructureVector) -> usize {
    lambda.flatten_b().rank()
}

/// Symbolic `[x, y]` with `x`, `y` given as polynomial coordinate vectors.
fn symbolic_product(lambda: &StructureVector, x: &[Polynomial], y: &[Polynomial]) -> Vec<Polynomial> {
    let field = lambda.field();
    let mut out = vec![Polynomial::zero(field); lambda.n()];
    for ((i, j, k), c) in lambda.support() {
        out[k] = out[k].add(&x[i].mul(&y[j]).scale(c));
    }
    out
}

fn variables(field: FieldSpec, offset: usize, n: usize) -> Vec<Polynomial> {
    (0..n).map(|v| Polynomial::var(field, offset + v)).collect()
}

/// The 2×2 minors of the rows `(x, [x, x])` in the indeterminates `x_0..x_{n-1}`.
pub fn square_minors(lambda: &StructureVector) -> Vec<Polynomial> {
    let n = lambda.n();
    let x = variables(lambda.field(), 0, n);
    let s = symbolic_product(lambda, &x, &x);
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            out.push(x[a].mul(&s[b]).sub(&x[b].mul(&s[a])));
        }
    }
    out
}

fn det3(m: [[&Polynomial; 3]; 3]) -> Polynomial {
    let t1 = m[0][0].mul(&m[1][1].mul(m[2][2]).sub(&m[1][2].mul(m[2][1])));
    let t2 = m[0][1].mul(&m[1][0].mul(m[2][2]).sub(&m[1][2].mul(m[2][0])));
    let t3 = m[0][2].mul(&m[1][0].mul(m[2][1]).sub(&m[1][1].mul(m[2][0])));
    t1.sub(&t2).add(&t3)
}

/// The 3×3 minors of the rows `(x, y, [x, y])`; `x` uses variables
/// `0..n`, `y` uses `n..2n`.
pub fn triple_minors(lambda: &StructureVector) -> Vec<Polynomial> {
    let n = lambda.n();
    let x = variables(lambda.field(), 0, n);
    let y = variables(lambda.field(), n, n);
    let z = symbolic_product(lambda, &x, &y);
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                out.push(det3([[&x[a], &x[b], &x[c]], [&y[a], &y[b], &y[c]], [&z[a], &z[b], &z[c]]]));
            }
        }
    }
    out
}

/// Condition (**) as a polynomial identity: `[x, x] ∈ span(x)` for generic `x`.
pub fn satisfies_star_star(lambda: &StructureVector) -> bool {
    square_minors(lambda).iter().all(Polynomial::is_zero)
}

/// Condition (*) as a polynomial identity, valid over every field: (**) holds
/// and the 3×3 minors of `(x, y, [x, y])` vanish identically.
pub fn star_identity(lambda: &StructureVector) -> bool {
    satisfies_star_star(lambda) && triple_minors(lambda).iter().all(Polynomial::is_zero)
}

/// Condition (*), refusing small prime fields where per-variable degrees could
/// reach the field size.
pub fn satisfies_star(lambda: &StructureVector) -> Result<bool> {
    let n = lambda.n();
    if let FieldSpec::Prime(p) = lambda.field() {
        if p as usize <= 3 * n {
            return Err(Error::FieldTooSmall {
                field: lambda.field().to_string(),
                n,
                bound: 3 * n,
            });
        }
    }
    Ok(star_identity(lambda))
}

/// Candidate coordinate values for witness points: `0, 1, −1, 2, −2, 3`,
/// reduced into the field and deduplicated.
pub fn sample_values(field: FieldSpec) -> Vec<Scalar> {
    let mut out: Vec<Scalar> = Vec::new();
    for k in [0, 1, -1, 2, -2, 3] {
        let s = field.from_i64(k);
        if !out.contains(&s) {
            out.push(s);
        }
    }
    out
}

/// A point of `candidates^nvars` where `poly` does not vanish, found by
/// substituting one variable at a time and backtracking when the partial
/// substitution becomes identically zero.
pub fn nonvanishing_point(poly: &Polynomial, nvars: usize, candidates: &[Scalar]) -> Option<Vec<Scalar>> {
    fn go(p: &Polynomial, v: usize, nvars: usize, candidates: &[Scalar], point: &mut Vec<Scalar>) -> bool {
        if v == nvars {
            return !p.is_zero();
        }
        if p.degree_in(v) == 0 {
            point.push(candidates[0].clone());
            if go(p, v + 1, nvars, candidates, point) {
                return true;
            }
            point.pop();
            return false;
        }
        for c in candidates {
            let next = p.substitute(v, c);
            if next.is_zero() {
                continue;
            }
            point.push(c.clone());
            if go(&next, v + 1, nvars, candidates, point) {
                return true;
            }
            point.pop();
        }
        false
    }
    if poly.is_zero() {
        return None;
    }
    let mut point = Vec::with_capacity(nvars);
    go(poly, 0, nvars, candidates, &mut point).then_some(point)
}

fn independent(vectors: &[&CoordinateVector]) -> bool {
    let rows: Vec<Vec<Scalar>> = vectors.iter().map(|v| v.coords.clone()).collect();
    linalg::rank(&rows) == vectors.len()
}

/// Some `x` with `[x, x] ∉ span(x)`, or `None` when (**) holds.
pub fn square_witness(lambda: &StructureVector) -> Option<CoordinateVector> {
    let n = lambda.n();
    let field = lambda.field();
    let candidates = sample_values(field);
    for minor in square_minors(lambda) {
        let Some(point) = nonvanishing_point(&minor, n, &candidates) else {
            continue;
        };
        let x = CoordinateVector { field, coords: point };
        let xx = product(lambda, &x, &x).expect("dimensions match");
        if independent(&[&x, &xx]) {
            return Some(x);
        }
    }
    None
}

/// Some `(x, y)` with `[x, y] ∉ span(x, y)`.
pub fn product_witness(lambda: &StructureVector) -> Option<(CoordinateVector, CoordinateVector)> {
    let n = lambda.n();
    let field = lambda.field();
    let candidates = sample_values(field);
    for minor in triple_minors(lambda) {
        let Some(point) = nonvanishing_point(&minor, 2 * n, &candidates) else {
            continue;
        };
        let x = CoordinateVector {
            field,
            coords: point[..n].to_vec(),
        };
        let y = CoordinateVector {
            field,
            coords: point[n..].to_vec(),
        };
        let xy = product(lambda, &x, &y).expect("dimensions match");
        if independent(&[&x, &y, &xy]) {
            return Some((x, y));
        }
    }
    None
}

/// Span of the given vectors as an echelon basis.
pub fn span(field: FieldSpec, n: usize, vectors: &[CoordinateVector]) -> Echelon {
    Echelon::from_rows(field, n, vectors.iter().map(|v| v.coords.clone()))
}

/// The orbit invariants reported by `info` and checked for constancy on orbits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Invariants {
    pub rank_a: usize,
    pub rank_b: usize,
    pub ann: AnnDims,
    pub square_dim: usize,
    pub skew: bool,
    pub lie: bool,
    pub metabelian: bool,
    pub commutative: bool,
    pub unimodular: bool,
    pub star_star: bool,
    pub star: bool,
}

impl Invariants {
    pub fn of(lambda: &StructureVector) -> Self {
        Invariants {
            rank_a: lambda.flatten_a().rank(),
            rank_b: lambda.flatten_b().rank(),
            ann: ann_dims(lambda),
            square_dim: square_dim(lambda),
            skew: is_skew(lambda),
            lie: is_lie(lambda),
            metabelian: is_metabelian(lambda),
            commutative: is_commutative(lambda),
            unimodular: is_unimodular(lambda),
            star_star: satisfies_star_star(lambda),
            star: star_identity(lambda),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn e(n: usize, i: usize) -> CoordinateVector {
        CoordinateVector::basis(q(), n, i)
    }

    #[test]
    fn products_of_named_algebras() {
        let eta = catalog::eta(3, q()).unwrap();
        let rho = catalog::rho(3, q()).unwrap();
        assert_eq!(product(&eta, &e(3, 0), &e(3, 1)).unwrap(), e(3, 2));
        assert_eq!(product(&rho, &e(3, 0), &e(3, 2)).unwrap(), e(3, 0));
        let zero = CoordinateVector::zero(q(), 3);
        assert!(product(&rho, &zero, &e(3, 1)).unwrap().is_zero());
        assert!(matches!(
            product(&rho, &CoordinateVector::zero(q(), 2), &e(3, 1)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn predicates_on_named_algebras() {
        let eta = catalog::eta(3, q()).unwrap();
        let rho = catalog::rho(3, q()).unwrap();
        let delta = catalog::delta(3, q()).unwrap();
        let zero = StructureVector::zeros(3, q());
        assert!(is_skew(&eta) && !is_skew(&delta) && is_skew(&zero));
        assert!(is_lie(&rho) && is_lie(&eta));
        let only_121 = StructureVector::from_triples(3, q(), &[(0, 1, 0, 1)]);
        assert!(!is_lie(&only_121));
        assert!(is_metabelian(&eta) && is_metabelian(&delta) && !is_metabelian(&rho));
        assert!(is_commutative(&delta) && !is_commutative(&eta) && is_commutative(&zero));
    }

    #[test]
    fn traces_and_unimodularity() {
        for n in 3..=5 {
            let rho = catalog::rho(n, q()).unwrap();
            assert_eq!(ad_trace(&rho, n - 1).unwrap(), q().from_i64(-(n as i64 - 1)));
            assert!(ad_trace(&rho, 0).unwrap().is_zero());
        }
        let eta = catalog::eta(3, q()).unwrap();
        assert!((0..3).all(|i| ad_trace(&eta, i).unwrap().is_zero()));
        assert!(is_unimodular(&eta));
        assert!(!is_unimodular(&catalog::rho(3, q()).unwrap()));
        let f2 = FieldSpec::prime(2).unwrap();
        assert!(is_unimodular(&catalog::rho(3, f2).unwrap()));
        assert!(matches!(ad_trace(&eta, 3), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn annihilators_and_squares() {
        let eta = catalog::eta(3, q()).unwrap();
        let rho = catalog::rho(3, q()).unwrap();
        let delta = catalog::delta(3, q()).unwrap();
        let one = AnnDims {
            left: 1,
            right: 1,
            two_sided: 1,
        };
        assert_eq!(ann_dims(&eta), one);
        assert_eq!(
            ann_dims(&rho),
            AnnDims {
                left: 0,
                right: 0,
                two_sided: 0
            }
        );
        assert_eq!(
            ann_dims(&delta),
            AnnDims {
                left: 2,
                right: 2,
                two_sided: 2
            }
        );
        assert_eq!(square_dim(&StructureVector::zeros(3, q())), 0);
        assert_eq!(square_dim(&eta), 1);
        assert_eq!(square_dim(&rho), 2);
    }

    #[test]
    fn one_sided_annihilators_differ() {
        // [e1, e2] = e1 only: ann_L = span(e2), ann_R = span(e1)
        let v = StructureVector::from_triples(2, q(), &[(0, 1, 0, 1)]);
        let d = ann_dims(&v);
        assert_eq!((d.left, d.right, d.two_sided), (1, 1, 0));
    }

    #[test]
    fn star_conditions() {
        let eta = catalog::eta(3, q()).unwrap();
        let rho = catalog::rho(3, q()).unwrap();
        let delta = catalog::delta(3, q()).unwrap();
        assert!(satisfies_star_star(&eta) && satisfies_star_star(&rho));
        assert!(!satisfies_star_star(&delta));
        assert!(satisfies_star(&rho).unwrap());
        assert!(!satisfies_star(&eta).unwrap());
        for a in [0, 1, 2] {
            let eps = catalog::epsilon(3, q(), &q().from_i64(a)).unwrap();
            assert!(satisfies_star_star(&eps));
            assert!(satisfies_star(&eps).unwrap());
        }
        let f7 = FieldSpec::prime(7).unwrap();
        assert!(matches!(
            satisfies_star(&catalog::rho(3, f7).unwrap()),
            Err(Error::FieldTooSmall { .. })
        ));
        let f11 = FieldSpec::prime(11).unwrap();
        assert!(satisfies_star(&catalog::rho(3, f11).unwrap()).unwrap());
    }

    #[test]
    fn witnesses_exist_exactly_when_conditions_fail() {
        let eta = catalog::eta(3, q()).unwrap();
        let (x, y) = product_witness(&eta).unwrap();
        let xy = product(&eta, &x, &y).unwrap();
        assert!(independent(&[&x, &y, &xy]));
        assert!(product_witness(&catalog::rho(3, q()).unwrap()).is_none());
        let delta = catalog::delta(3, q()).unwrap();
        assert!(square_witness(&delta).is_some());
        assert!(square_witness(&eta).is_none());
    }

    #[test]
    fn nonvanishing_point_in_tiny_field() {
        // x0² + x0 vanishes on all of F_2 but x0 x1 + 1 does not
        let f2 = FieldSpec::prime(2).unwrap();
        let x0 = Polynomial::var(f2, 0);
        let x1 = Polynomial::var(f2, 1);
        let p = x0.mul(&x0).add(&x0);
        assert!(nonvanishing_point(&p, 1, &sample_values(f2)).is_none());
        let p = x0.mul(&x1).add(&Polynomial::constant(f2.one()));
        let pt = nonvanishing_point(&p, 2, &sample_values(f2)).unwrap();
        assert!(!p.eval(&pt).is_zero());
    }
}
