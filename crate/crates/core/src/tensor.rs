//! Structure vectors and their two flattenings.
//!
//! A structure vector of an `n`-dimensional algebra holds the `n³` constants
//! `λ_ijk` with `[v_i, v_j] = Σ_k λ_ijk v_k`, stored so that the triple
//! `(i, j, k)` (one-based) sits at position `m = (i−1)n² + (j−1)n + k`.
//! Rust-side accessors are zero-based; [`index_of`], [`triple_of`] and the
//! JSON form use the one-based convention.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg;

/// One-based position of the one-based triple `(i, j, k)`.
pub fn index_of(i: usize, j: usize, k: usize, n: usize) -> Result<usize> {
    for idx in [i, j, k] {
        if idx == 0 || idx > n {
            return Err(Error::IndexOutOfRange { index: idx, n });
        }
    }
    Ok((i - 1) * n * n + (j - 1) * n + k)
}

/// Inverse of [`index_of`].
pub fn triple_of(m: usize, n: usize) -> Result<(usize, usize, usize)> {
    if m == 0 || m > n * n * n {
        return Err(Error::IndexOutOfRange { index: m, n: n * n * n });
    }
    let z = m - 1;
    Ok((z / (n * n) + 1, (z / n) % n + 1, z % n + 1))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StructureVector {
    n: usize,
    field: FieldSpec,
    entries: Vec<Scalar>,
}

impl StructureVector {
    pub fn zeros(n: usize, field: FieldSpec) -> Self {
        StructureVector {
            n,
            field,
            entries: vec![field.zero(); n * n * n],
        }
    }

    pub fn from_entries(n: usize, field: FieldSpec, entries: Vec<Scalar>) -> Result<Self> {
        if n < 1 {
            return Err(Error::DimensionTooSmall { n, min: 1 });
        }
        if entries.len() != n * n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n * n,
                found: entries.len(),
            });
        }
        if let Some(bad) = entries.iter().find(|e| e.spec() != field) {
            return Err(Error::FieldMismatch(field.to_string(), bad.spec().to_string()));
        }
        Ok(StructureVector { n, field, entries })
    }

    /// Zero vector with the listed zero-based `(i, j, k, value)` entries set.
    pub fn from_triples(n: usize, field: FieldSpec, triples: &[(usize, usize, usize, i64)]) -> Self {
        let mut v = StructureVector::zeros(n, field);
        for &(i, j, k, x) in triples {
            v.set(i, j, k, field.from_i64(x));
        }
        v
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Scalar> {
        self.entries
    }

    #[inline]
    fn pos(&self, i: usize, j: usize, k: usize) -> usize {
        debug_assert!(i < self.n && j < self.n && k < self.n);
        (i * self.n + j) * self.n + k
    }

    /// Zero-based access to `λ_ijk`.
    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.entries[self.pos(i, j, k)]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, value: Scalar) {
        assert_eq!(value.spec(), self.field, "field of entry");
        let p = self.pos(i, j, k);
        self.entries[p] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    /// Zero-based triples of the nonzero entries, in storage order.
    pub fn support(&self) -> impl Iterator<Item = ((usize, usize, usize), &Scalar)> + '_ {
        let n = self.n;
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(move |(m, x)| ((m / (n * n), (m / n) % n, m % n), x))
    }

    pub fn check_compatible(&self, other: &StructureVector) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.to_string(), other.field.to_string()));
        }
        Ok(())
    }

    pub fn add(&self, other: &StructureVector) -> StructureVector {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &StructureVector) -> StructureVector {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, c: &Scalar) -> StructureVector {
        StructureVector {
            n: self.n,
            field: self.field,
            entries: self.entries.iter().map(|x| x * c).collect(),
        }
    }

    fn zip_with(&self, other: &StructureVector, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> StructureVector {
        self.check_compatible(other).expect("compatible structure vectors");
        StructureVector {
            n: self.n,
            field: self.field,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| f(a, b)).collect(),
        }
    }

    /// Reinterprets a rational vector over `target`.
    pub fn convert(&self, target: FieldSpec) -> Result<StructureVector> {
        let entries = self.entries.iter().map(|x| x.convert(target)).collect::<Result<_>>()?;
        StructureVector::from_entries(self.n, target, entries)
    }

    /// ã(λ): row `l` holds flat positions `(l−1)n²+1 ..= l·n²`.
    pub fn flatten_a(&self) -> FlatMatrix {
        let n2 = self.n * self.n;
        FlatMatrix {
            rows: self.n,
            cols: n2,
            entries: self.entries.clone(),
        }
    }

    /// b̃(λ): row `l`, column `m` holds flat position `(m−1)n + l`, i.e. `λ_{..l}`.
    pub fn flatten_b(&self) -> FlatMatrix {
        let n = self.n;
        let n2 = n * n;
        let mut entries = Vec::with_capacity(n * n2);
        for l in 0..n {
            for m in 0..n2 {
                entries.push(self.entries[m * n + l].clone());
            }
        }
        FlatMatrix { rows: n, cols: n2, entries }
    }
}

impl fmt::Display for StructureVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (m, x) in self.entries.iter().enumerate() {
            if m > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// A dense row-major matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl FlatMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        Ok(FlatMatrix { rows, cols, entries })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> FlatMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.get(r, c).clone());
            }
        }
        FlatMatrix {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    pub fn rank(&self) -> usize {
        linalg::rank(&self.to_rows())
    }
}

#[derive(Serialize, Deserialize)]
struct EntryRepr {
    i: usize,
    j: usize,
    k: usize,
    value: String,
}

#[derive(Serialize, Deserialize)]
struct VectorRepr {
    n: usize,
    field: FieldSpec,
    entries: Vec<EntryRepr>,
}

impl Serialize for StructureVector {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let entries = self
            .support()
            .map(|((i, j, k), x)| EntryRepr {
                i: i + 1,
                j: j + 1,
                k: k + 1,
                value: x.to_string(),
            })
            .collect();
        VectorRepr {
            n: self.n,
            field: self.field,
            entries,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for StructureVector {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = VectorRepr::deserialize(deserializer)?;
        StructureVector::try_from(repr).map_err(serde::de::Error::custom)
    }
}

impl TryFrom<VectorRepr> for StructureVector {
    type Error = Error;

    fn try_from(repr: VectorRepr) -> Result<Self> {
        let n = repr.n;
        if n < 1 {
            return Err(Error::parse("n", "dimension must be positive"));
        }
        let mut v = StructureVector::zeros(n, repr.field);
        for (idx, e) in repr.entries.iter().enumerate() {
            let m = index_of(e.i, e.j, e.k, n)
                .map_err(|err| Error::parse(format!("entries[{idx}]"), err.to_string()))?;
            let x = repr
                .field
                .parse_scalar(&e.value)
                .map_err(|err| Error::parse(format!("entries[{idx}].value"), err.to_string()))?;
            v.entries[m - 1] = x;
        }
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    #[test]
    fn index_examples() {
        assert_eq!(index_of(1, 1, 1, 3).unwrap(), 1);
        assert_eq!(index_of(1, 1, 2, 2).unwrap(), 2);
        assert_eq!(index_of(3, 3, 3, 3).unwrap(), 27);
        assert!(matches!(index_of(0, 1, 1, 3), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(index_of(1, 4, 1, 3), Err(Error::IndexOutOfRange { .. })));
        assert!(triple_of(28, 3).is_err());
    }

    #[test]
    fn index_bijection() {
        for n in 1..=5 {
            for m in 1..=n * n * n {
                let (i, j, k) = triple_of(m, n).unwrap();
                assert_eq!(index_of(i, j, k, n).unwrap(), m);
            }
        }
    }

    #[test]
    fn zero_flattenings() {
        let z = StructureVector::zeros(3, q());
        let a = z.flatten_a();
        assert_eq!((a.rows(), a.cols()), (3, 9));
        assert_eq!(a.rank(), 0);
        assert_eq!(z.flatten_b().rank(), 0);
    }

    #[test]
    fn flatten_b_layout() {
        // b̃ puts λ_ijk at row k, column (i, j)
        let mut v = StructureVector::zeros(3, q());
        v.set(0, 1, 2, q().from_i64(7));
        let b = v.flatten_b();
        assert_eq!(b.get(2, 1), &q().from_i64(7));
        let a = v.flatten_a();
        assert_eq!(a.get(0, 5), &q().from_i64(7));
    }

    #[test]
    fn json_roundtrip() {
        let v = StructureVector::from_triples(3, q(), &[(0, 1, 2, 1), (1, 0, 2, -1)]);
        let text = serde_json::to_string(&v).unwrap();
        assert_eq!(
            text,
            r#"{"n":3,"field":{"type":"Q"},"entries":[{"i":1,"j":2,"k":3,"value":"1"},{"i":2,"j":1,"k":3,"value":"-1"}]}"#
        );
        let back: StructureVector = serde_json::from_str(&text).unwrap();
        assert_eq!(back, v);
    }

    #[test]
    fn json_errors_name_the_field() {
        let bad = r#"{"n":2,"field":{"type":"Q"},"entries":[{"i":3,"j":1,"k":1,"value":"1"}]}"#;
        let err = serde_json::from_str::<StructureVector>(bad).unwrap_err().to_string();
        assert!(err.contains("entries[0]"), "{err}");
        let bad = r#"{"n":2,"field":{"type":"Fp","p":5},"entries":[{"i":1,"j":1,"k":1,"value":"1/5"}]}"#;
        let err = serde_json::from_str::<StructureVector>(bad).unwrap_err().to_string();
        assert!(err.contains("entries[0].value"), "{err}");
    }
}
