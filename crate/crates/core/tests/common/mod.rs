#![allow(dead_code)]

use degen_core::algebras::CoordinateVector;
use degen_core::{catalog, BasisChange, FieldSpec, StructureVector, WeightVector};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q() -> FieldSpec {
    FieldSpec::Rationals
}

pub fn fp(p: u64) -> FieldSpec {
    FieldSpec::prime(p).unwrap()
}

/// Entries drawn from `[-3, 3]`, redrawn until invertible.
pub fn random_basis_change(n: usize, field: FieldSpec, rng: &mut impl Rng) -> BasisChange {
    loop {
        let rows: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-3..=3)).collect()).collect();
        let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
        if let Ok(g) = BasisChange::from_i64(field, &refs) {
            return g;
        }
    }
}

/// Each entry is nonzero with probability `density`, with values in `[-3, 3]`.
pub fn random_vector(n: usize, field: FieldSpec, density: f64, rng: &mut impl Rng) -> StructureVector {
    let mut v = StructureVector::zeros(n, field);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if rng.gen_bool(density) {
                    v.set(i, j, k, field.from_i64(rng.gen_range(-3..=3)));
                }
            }
        }
    }
    v
}

pub fn random_skew(n: usize, field: FieldSpec, density: f64, rng: &mut impl Rng) -> StructureVector {
    let mut v = StructureVector::zeros(n, field);
    for i in 0..n {
        for j in i + 1..n {
            for k in 0..n {
                if rng.gen_bool(density) {
                    let x = field.from_i64(rng.gen_range(-3..=3));
                    v.set(j, i, k, -&x);
                    v.set(i, j, k, x);
                }
            }
        }
    }
    v
}

pub fn random_commutative(n: usize, field: FieldSpec, density: f64, rng: &mut impl Rng) -> StructureVector {
    let mut v = StructureVector::zeros(n, field);
    for i in 0..n {
        for j in i..n {
            for k in 0..n {
                if rng.gen_bool(density) {
                    let x = field.from_i64(rng.gen_range(-3..=3));
                    v.set(j, i, k, x.clone());
                    v.set(i, j, k, x);
                }
            }
        }
    }
    v
}

/// A random combination of the spanning set of `U_n`.
pub fn random_unimodular(n: usize, field: FieldSpec, rng: &mut impl Rng) -> StructureVector {
    let mut v = StructureVector::zeros(n, field);
    for s in catalog::unimodular_spanning_set(n, field).unwrap() {
        if rng.gen_bool(0.3) {
            v = v.add(&s.scale(&field.from_i64(rng.gen_range(-2..=2))));
        }
    }
    v
}

pub fn random_weights(n: usize, bound: i64, rng: &mut impl Rng) -> WeightVector {
    WeightVector::new((0..n).map(|_| rng.gen_range(-bound..=bound)).collect())
}

pub fn random_coords(n: usize, field: FieldSpec, rng: &mut impl Rng) -> CoordinateVector {
    let c: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
    CoordinateVector::from_i64(field, &c)
}

/// `[e1, e2] = e2`, `[e1, e3] = 2 e3`.
pub fn lie_example(field: FieldSpec) -> StructureVector {
    StructureVector::from_triples(3, field, &[(0, 1, 1, 1), (1, 0, 1, -1), (0, 2, 2, 2), (2, 0, 2, -2)])
}

/// Zeroes every entry in a class `r < 0`.
pub fn restrict_nonnegative(v: &StructureVector, q: &WeightVector) -> StructureVector {
    let mut out = StructureVector::zeros(v.n(), v.field());
    for ((i, j, k), x) in v.support() {
        if q.class_of(i, j, k) >= 0 {
            out.set(i, j, k, x.clone());
        }
    }
    out
}
