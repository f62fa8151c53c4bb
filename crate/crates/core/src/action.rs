//! The right action of GL_n(F) on structure vectors.
//!
//! A [`BasisChange`] `g` describes the new basis `v_j = Σ_i g_ij v*_i`. The
//! vector `λg` holds the structure constants of the same algebra in that
//! basis: `(λg)_ijk = Σ_{p,q,r} g_pi g_qj λ_pqr (g⁻¹)_kr`.

use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::algebras::CoordinateVector;
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::grading::WeightVector;
use crate::linalg;
use crate::tensor::StructureVector;

/// An invertible matrix together with its exact inverse.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasisChange {
    n: usize,
    field: FieldSpec,
    matrix: Vec<Vec<Scalar>>,
    inverse: Vec<Vec<Scalar>>,
}

impl BasisChange {
    pub fn new(field: FieldSpec, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: bad.len(),
            });
        }
        if let Some(bad) = rows.iter().flatten().find(|x| x.spec() != field) {
            return Err(Error::FieldMismatch(field.to_string(), bad.spec().to_string()));
        }
        let inverse = linalg::inverse(&rows, field).ok_or(Error::NotInvertible)?;
        Ok(BasisChange {
            n,
            field,
            matrix: rows,
            inverse,
        })
    }

    pub fn from_i64(field: FieldSpec, rows: &[&[i64]]) -> Result<Self> {
        BasisChange::new(
            field,
            rows.iter().map(|r| r.iter().map(|&x| field.from_i64(x)).collect()).collect(),
        )
    }

    /// The basis whose `j`-th vector has the coordinates `columns[j]`.
    pub fn from_columns(field: FieldSpec, columns: &[CoordinateVector]) -> Result<Self> {
        let n = columns.len();
        let rows = (0..n)
            .map(|i| columns.iter().map(|c| c.coords()[i].clone()).collect())
            .collect();
        BasisChange::new(field, rows)
    }

    pub fn identity(n: usize, field: FieldSpec) -> Self {
        let id: Vec<Vec<Scalar>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { field.one() } else { field.zero() }).collect())
            .collect();
        BasisChange {
            n,
            field,
            matrix: id.clone(),
            inverse: id,
        }
    }

    /// The matrix with `g_{σ(j), j} = 1`, so that `v_j = v*_{σ(j)}`.
    pub fn permutation(sigma: &[usize], field: FieldSpec) -> Result<Self> {
        check_permutation(sigma)?;
        let n = sigma.len();
        let mut rows = vec![vec![field.zero(); n]; n];
        for (j, &s) in sigma.iter().enumerate() {
            rows[s][j] = field.one();
        }
        BasisChange::new(field, rows)
    }

    pub fn diagonal(diag: &[Scalar]) -> Result<Self> {
        let field = diag.first().map(Scalar::spec).ok_or(Error::DimensionTooSmall { n: 0, min: 1 })?;
        let n = diag.len();
        let mut rows = vec![vec![field.zero(); n]; n];
        for (i, d) in diag.iter().enumerate() {
            rows[i][i] = d.clone();
        }
        BasisChange::new(field, rows)
    }

    /// Identity plus `t` in position `(i, j)`, `i ≠ j`.
    pub fn transvection(n: usize, field: FieldSpec, i: usize, j: usize, t: &Scalar) -> Result<Self> {
        if i == j || i >= n || j >= n {
            return Err(Error::BadIndices(format!("transvection ({i}, {j}) with n = {n}")));
        }
        let mut g = BasisChange::identity(n, field);
        g.matrix[i][j] = t.clone();
        g.inverse[i][j] = -t;
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn matrix(&self) -> &[Vec<Scalar>] {
        &self.matrix
    }

    pub fn inverse(&self) -> &[Vec<Scalar>] {
        &self.inverse
    }

    /// The product `self · other`; acting by it equals acting by `self` then `other`.
    pub fn compose(&self, other: &BasisChange) -> BasisChange {
        BasisChange {
            n: self.n,
            field: self.field,
            matrix: linalg::mat_mul(&self.matrix, &other.matrix, self.field),
            inverse: linalg::mat_mul(&other.inverse, &self.inverse, self.field),
        }
    }

    /// Coordinates of the `j`-th new basis vector.
    pub fn column(&self, j: usize) -> CoordinateVector {
        CoordinateVector::new(self.field, self.matrix.iter().map(|r| r[j].clone()).collect())
            .expect("entries are in the field")
    }
}

fn check_permutation(sigma: &[usize]) -> Result<()> {
    let n = sigma.len();
    let mut seen = vec![false; n];
    for &s in sigma {
        if s >= n || seen[s] {
            return Err(Error::BadIndices(format!("{sigma:?} is not a permutation")));
        }
        seen[s] = true;
    }
    Ok(())
}

/// `λg`, computed as three successive contractions.
pub fn act(lambda: &StructureVector, g: &BasisChange) -> Result<StructureVector> {
    let n = lambda.n();
    if g.n != n {
        return Err(Error::DimensionMismatch { expected: n, found: g.n });
    }
    if g.field != lambda.field() {
        return Err(Error::FieldMismatch(lambda.field().to_string(), g.field.to_string()));
    }
    let field = lambda.field();
    let idx = |a: usize, b: usize, c: usize| (a * n + b) * n + c;
    let src = lambda.entries();

    // t1[p,q,k] = Σ_r λ_pqr ginv_kr
    let mut t1 = vec![field.zero(); n * n * n];
    for p in 0..n {
        for q in 0..n {
            for r in 0..n {
                let x = &src[idx(p, q, r)];
                if x.is_zero() {
                    continue;
                }
                for k in 0..n {
                    let h = &g.inverse[k][r];
                    if !h.is_zero() {
                        t1[idx(p, q, k)] += &(x * h);
                    }
                }
            }
        }
    }
    // t2[p,j,k] = Σ_q g_qj t1[p,q,k]
    let mut t2 = vec![field.zero(); n * n * n];
    for p in 0..n {
        for q in 0..n {
            for k in 0..n {
                let x = &t1[idx(p, q, k)];
                if x.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let h = &g.matrix[q][j];
                    if !h.is_zero() {
                        t2[idx(p, j, k)] += &(x * h);
                    }
                }
            }
        }
    }
    // out[i,j,k] = Σ_p g_pi t2[p,j,k]
    let mut out = vec![field.zero(); n * n * n];
    for p in 0..n {
        for j in 0..n {
            for k in 0..n {
                let x = &t2[idx(p, j, k)];
                if x.is_zero() {
                    continue;
                }
                for i in 0..n {
                    let h = &g.matrix[p][i];
                    if !h.is_zero() {
                        out[idx(i, j, k)] += &(x * h);
                    }
                }
            }
        }
    }
    StructureVector::from_entries(n, field, out)
}

/// `λ'_ijk = λ_{σ(i), σ(j), σ(k)}`: the action of [`BasisChange::permutation`].
pub fn act_permutation(lambda: &StructureVector, sigma: &[usize]) -> Result<StructureVector> {
    check_permutation(sigma)?;
    let n = lambda.n();
    if sigma.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: sigma.len(),
        });
    }
    let mut out = StructureVector::zeros(n, lambda.field());
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let x = lambda.get(sigma[i], sigma[j], sigma[k]);
                if !x.is_zero() {
                    out.set(i, j, k, x.clone());
                }
            }
        }
    }
    Ok(out)
}

/// Multiplies `λ_ijk` by `τ^{q_i + q_j − q_k}`: the action of `diag(τ^{q_1}, …, τ^{q_n})`.
pub fn scale_basis(lambda: &StructureVector, weights: &WeightVector, tau: &Scalar) -> Result<StructureVector> {
    let n = lambda.n();
    weights.check_len(n)?;
    if tau.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let mut out = StructureVector::zeros(n, lambda.field());
    for ((i, j, k), x) in lambda.support() {
        let e = weights.class_of(i, j, k);
        out.set(i, j, k, x * &tau.pow(e)?);
    }
    Ok(out)
}

pub const MAX_ENUM_N: usize = 3;
pub const MAX_ENUM_P: u64 = 3;

fn enumeration_guard(n: usize, field: FieldSpec) -> Result<u64> {
    let FieldSpec::Prime(p) = field else {
        return Err(Error::EnumerationTooLarge("orbits over Q are infinite".into()));
    };
    if n > MAX_ENUM_N || p > MAX_ENUM_P {
        return Err(Error::EnumerationTooLarge(format!(
            "n = {n}, p = {p} exceeds n <= {MAX_ENUM_N}, p <= {MAX_ENUM_P}"
        )));
    }
    Ok(p)
}

/// Every element of GL_n(F_p) within the enumeration guard.
pub fn group_elements(n: usize, field: FieldSpec) -> Result<Vec<BasisChange>> {
    let p = enumeration_guard(n, field)?;
    let cells = n * n;
    let total = p.pow(cells as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut c = code;
        let mut rows = vec![Vec::with_capacity(n); n];
        for cell in 0..cells {
            rows[cell / n].push(field.from_i64((c % p) as i64));
            c /= p;
        }
        if let Ok(g) = BasisChange::new(field, rows) {
            out.push(g);
        }
    }
    Ok(out)
}

/// A full orbit over a small prime field.
#[derive(Clone, Debug)]
pub struct OrbitEnumeration {
    pub field: FieldSpec,
    pub representative: StructureVector,
    pub members: HashSet<StructureVector>,
    pub group_order: usize,
}

impl OrbitEnumeration {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: &StructureVector) -> bool {
        self.members.contains(v)
    }
}

/// The orbit of `λ` by a sweep over all of GL_n(F_p).
pub fn enumerate_orbit(lambda: &StructureVector) -> Result<OrbitEnumeration> {
    let group = group_elements(lambda.n(), lambda.field())?;
    let mut members = HashSet::new();
    for g in &group {
        members.insert(act(lambda, g)?);
    }
    Ok(OrbitEnumeration {
        field: lambda.field(),
        representative: lambda.clone(),
        members,
        group_order: group.len(),
    })
}

/// Generators of GL_n(F_p): adjacent transpositions, unit transvections and
/// single-entry diagonals.
pub fn group_generators(n: usize, field: FieldSpec) -> Result<Vec<BasisChange>> {
    let p = enumeration_guard(n, field)?;
    let mut gens = Vec::new();
    for i in 0..n.saturating_sub(1) {
        let mut sigma: Vec<usize> = (0..n).collect();
        sigma.swap(i, i + 1);
        gens.push(BasisChange::permutation(&sigma, field)?);
    }
    for i in 0..n {
        for j in (0..n).filter(|&j| j != i) {
            gens.push(BasisChange::transvection(n, field, i, j, &field.one())?);
        }
    }
    for u in 2..p {
        for i in 0..n {
            let mut d = vec![field.one(); n];
            d[i] = field.from_i64(u as i64);
            gens.push(BasisChange::diagonal(&d)?);
        }
    }
    Ok(gens)
}

/// The orbit of `λ` by breadth-first search over [`group_generators`].
pub fn enumerate_orbit_bfs(lambda: &StructureVector) -> Result<HashSet<StructureVector>> {
    let gens = group_generators(lambda.n(), lambda.field())?;
    let mut seen = HashSet::from([lambda.clone()]);
    let mut queue = VecDeque::from([lambda.clone()]);
    while let Some(v) = queue.pop_front() {
        for g in &gens {
            let w = act(&v, g)?;
            if seen.insert(w.clone()) {
                queue.push_back(w);
            }
        }
    }
    Ok(seen)
}

pub fn are_isomorphic(lambda: &StructureVector, mu: &StructureVector) -> Result<bool> {
    lambda.check_compatible(mu)?;
    Ok(enumerate_orbit(lambda)?.contains(mu))
}

#[derive(Serialize, Deserialize)]
struct BasisChangeRepr {
    n: usize,
    field: FieldSpec,
    rows: Vec<Vec<String>>,
}

impl Serialize for BasisChange {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        BasisChangeRepr {
            n: self.n,
            field: self.field,
            rows: self
                .matrix
                .iter()
                .map(|r| r.iter().map(ToString::to_string).collect())
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for BasisChange {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = BasisChangeRepr::deserialize(deserializer)?;
        basis_change_from_repr(repr).map_err(serde::de::Error::custom)
    }
}

fn basis_change_from_repr(repr: BasisChangeRepr) -> Result<BasisChange> {
    if repr.rows.len() != repr.n {
        return Err(Error::parse("rows", format!("expected {} rows, found {}", repr.n, repr.rows.len())));
    }
    let mut rows = Vec::with_capacity(repr.n);
    for (i, r) in repr.rows.iter().enumerate() {
        if r.len() != repr.n {
            return Err(Error::parse(format!("rows[{i}]"), format!("expected {} entries", repr.n)));
        }
        let row = r
            .iter()
            .enumerate()
            .map(|(j, s)| {
                repr.field
                    .parse_scalar(s)
                    .map_err(|e| Error::parse(format!("rows[{i}][{j}]"), e.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    BasisChange::new(repr.field, rows).map_err(|e| Error::parse("rows", e.to_string()))
}
