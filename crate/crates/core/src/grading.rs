//! Integer weightings of the basis, the induced partition of index triples,
//! and the truncation `λ(q̂)` that lands in the orbit closure of `λ`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::tensor::StructureVector;

/// A zero-based index triple `(i, j, k)`.
pub type Triple = (usize, usize, usize);

/// Weights `q̂ = (q_1, …, q_n)`; serializes as an integer array.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightVector(Vec<i64>);

impl WeightVector {
    pub fn new(weights: Vec<i64>) -> Self {
        WeightVector(weights)
    }

    pub fn uniform(n: usize, w: i64) -> Self {
        WeightVector(vec![w; n])
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn weights(&self) -> &[i64] {
        &self.0
    }

    /// `q_i + q_j − q_k`.
    pub fn class_of(&self, i: usize, j: usize, k: usize) -> i64 {
        self.0[i] + self.0[j] - self.0[k]
    }

    pub fn check_len(&self, n: usize) -> Result<()> {
        if self.0.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: self.0.len(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Parses a comma-separated list such as `1,1,2`.
impl FromStr for WeightVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.split(',')
            .enumerate()
            .map(|(idx, part)| {
                part.trim()
                    .parse::<i64>()
                    .map_err(|e| Error::parse(format!("q[{idx}]"), e.to_string()))
            })
            .collect::<Result<Vec<_>>>()
            .map(WeightVector)
    }
}

/// The classes `S(q̂, r)`, keyed by `r`; only nonempty classes are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriplePartition {
    pub classes: BTreeMap<i64, BTreeSet<Triple>>,
}

impl TriplePartition {
    pub fn class(&self, r: i64) -> Option<&BTreeSet<Triple>> {
        self.classes.get(&r)
    }

    pub fn class_of(&self, t: &Triple) -> Option<i64> {
        self.classes.iter().find(|(_, s)| s.contains(t)).map(|(&r, _)| r)
    }

    pub fn total(&self) -> usize {
        self.classes.values().map(BTreeSet::len).sum()
    }
}

pub fn partition(q: &WeightVector) -> TriplePartition {
    let n = q.n();
    let mut classes: BTreeMap<i64, BTreeSet<Triple>> = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                classes.entry(q.class_of(i, j, k)).or_default().insert((i, j, k));
            }
        }
    }
    TriplePartition { classes }
}

/// The polynomial variable standing for `X_ijk`: its zero-based position in the vector.
pub fn triple_variable(t: Triple, n: usize) -> usize {
    (t.0 * n + t.1) * n + t.2
}

fn variable_triple(v: usize, n: usize) -> Triple {
    (v / (n * n), (v / n) % n, v % n)
}

fn single_monomial(f: &Polynomial) -> Result<Vec<(usize, u32)>> {
    f.as_monomial()
        .map(|(m, _)| m.powers().to_vec())
        .ok_or(Error::NotAMonomial)
}

/// Total degree of the monomial `f` after setting `X_ijk = 1` outside `set`.
pub fn deg_restricted(f: &Polynomial, n: usize, set: &BTreeSet<Triple>) -> Result<u32> {
    let powers = single_monomial(f)?;
    Ok(powers
        .iter()
        .filter(|&&(v, _)| set.contains(&variable_triple(v, n)))
        .map(|&(_, e)| e)
        .sum())
}

/// The `q̂`-auxiliary degree of the monomial `f`.
pub fn qadeg(f: &Polynomial, q: &WeightVector) -> Result<i64> {
    let n = q.n();
    let powers = single_monomial(f)?;
    let mut total = 0;
    for (v, e) in powers {
        let (i, j, k) = variable_triple(v, n);
        if i >= n {
            return Err(Error::IndexOutOfRange { index: v, n: n * n * n });
        }
        let r = q.class_of(i, j, k);
        if r < 0 {
            return Ok(0);
        }
        total += r * i64::from(e);
    }
    Ok(total)
}

/// `λ(q̂)`: keeps `λ_ijk` when `q_i + q_j − q_k ≤ 0`.
pub fn truncate(lambda: &StructureVector, q: &WeightVector) -> Result<StructureVector> {
    q.check_len(lambda.n())?;
    let mut out = StructureVector::zeros(lambda.n(), lambda.field());
    for ((i, j, k), x) in lambda.support() {
        if q.class_of(i, j, k) <= 0 {
            out.set(i, j, k, x.clone());
        }
    }
    Ok(out)
}

/// True when `λ` vanishes on every class with `r < 0`.
pub fn hypothesis_holds(lambda: &StructureVector, q: &WeightVector) -> Result<bool> {
    q.check_len(lambda.n())?;
    Ok(lambda.support().all(|((i, j, k), _)| q.class_of(i, j, k) >= 0))
}

/// Per-coordinate search order: `1, …, Q, 0, −1, …, −Q`.
fn coordinate_order(bound: i64) -> Vec<i64> {
    (1..=bound).chain([0]).chain((1..=bound).map(|x| -x)).collect()
}

/// Searches `q̂ ∈ [−Q, Q]ⁿ` in lexicographic order over [`coordinate_order`]
/// for a weighting with `hypothesis_holds` and `λ(q̂) = target`.
pub fn search_weight_witness(lambda: &StructureVector, target: &StructureVector, bound: u32) -> Result<Option<WeightVector>> {
    lambda.check_compatible(target)?;
    let n = lambda.n();
    let order = coordinate_order(i64::from(bound.max(1)));
    let support: Vec<(Triple, bool)> = lambda
        .support()
        .map(|((i, j, k), x)| ((i, j, k), target.get(i, j, k) == x))
        .collect();
    // truncation only copies or zeroes entries
    if target.support().any(|((i, j, k), y)| lambda.get(i, j, k) != y) {
        return Ok(None);
    }
    let accepts = |q: &[i64]| {
        support.iter().all(|&((i, j, k), kept_in_target)| {
            let r = q[i] + q[j] - q[k];
            r >= 0 && ((r == 0) == kept_in_target)
        })
    };
    let mut digits = vec![0usize; n];
    loop {
        let q: Vec<i64> = digits.iter().map(|&d| order[d]).collect();
        if accepts(&q) {
            let q = WeightVector(q);
            debug_assert_eq!(truncate(lambda, &q).as_ref(), Ok(target));
            return Ok(Some(q));
        }
        let mut pos = n;
        loop {
            if pos == 0 {
                return Ok(None);
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < order.len() {
                break;
            }
            digits[pos] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::field::FieldSpec;
    use crate::poly::Monomial;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn x(powers: &[(Triple, u32)], n: usize) -> Polynomial {
        Polynomial::term(
            Monomial::from_powers(powers.iter().map(|&(t, e)| (triple_variable(t, n), e))),
            q().one(),
        )
    }

    #[test]
    fn partition_examples() {
        for n in 2..=4 {
            let p = partition(&WeightVector::uniform(n, 1));
            assert_eq!(p.classes.len(), 1);
            assert_eq!(p.class(1).unwrap().len(), n * n * n);
        }
        for n in 2..=5 {
            for m in 0..=n {
                let mut w = vec![0; m];
                w.extend(vec![1; n - m]);
                let p = partition(&WeightVector::new(w));
                assert!(p.classes.keys().all(|r| (-1..=2).contains(r)));
                assert_eq!(p.total(), n * n * n);
            }
        }
        for n in 3..=5 {
            let mut w = vec![1, 1];
            w.extend(vec![2; n - 2]);
            let p = partition(&WeightVector::new(w));
            let expect: BTreeSet<Triple> = (0..2)
                .flat_map(|i| (0..2).flat_map(move |j| (2..n).map(move |k| (i, j, k))))
                .collect();
            assert_eq!(p.class(0).unwrap(), &expect);
        }
    }

    #[test]
    fn restricted_degree() {
        let n = 3;
        let f = x(&[((0, 1, 2), 2), ((0, 0, 0), 1)], n);
        let all = partition(&WeightVector::uniform(n, 1)).classes[&1].clone();
        assert_eq!(deg_restricted(&f, n, &all).unwrap(), 3);
        assert_eq!(deg_restricted(&f, n, &BTreeSet::from([(0, 0, 0)])).unwrap(), 1);
        let one = Polynomial::constant(q().one());
        assert_eq!(deg_restricted(&one, n, &BTreeSet::new()).unwrap(), 0);
        let two_terms = f.add(&one);
        assert_eq!(deg_restricted(&two_terms, n, &all), Err(Error::NotAMonomial));
        assert_eq!(deg_restricted(&Polynomial::zero(q()), n, &all), Err(Error::NotAMonomial));
    }

    #[test]
    fn auxiliary_degree() {
        let n = 3;
        let f = x(&[((0, 1, 2), 2), ((0, 0, 0), 1), ((2, 1, 0), 4)], n);
        assert_eq!(qadeg(&f, &WeightVector::uniform(n, 1)).unwrap(), 7);
        let one = Polynomial::constant(q().from_i64(5));
        assert_eq!(qadeg(&one, &WeightVector::new(vec![3, -1, 2])).unwrap(), 0);
        let w = WeightVector::new(vec![1, 1, 2]);
        assert_eq!(qadeg(&x(&[((0, 1, 2), 1)], n), &w).unwrap(), 0);
        // (0,0,0) sits in class 1, (2,2,0) in class 3
        assert_eq!(qadeg(&x(&[((0, 0, 0), 2), ((2, 2, 0), 1)], n), &w).unwrap(), 5);
        // (0,0,2) sits in class −2
        let neg = x(&[((0, 0, 2), 1), ((1, 1, 1), 1)], n);
        assert_eq!(qadeg(&neg, &WeightVector::new(vec![0, 0, 2])).unwrap(), 0);
    }

    #[test]
    fn truncation() {
        let rho = catalog::rho(4, q()).unwrap();
        assert!(truncate(&rho, &WeightVector::uniform(4, 1)).unwrap().is_zero());
        let w = WeightVector::new(vec![0, 2, -1, 1]);
        let once = truncate(&rho, &w).unwrap();
        assert_eq!(truncate(&once, &w).unwrap(), once);
        assert!(truncate(&rho, &WeightVector::new(vec![1, 1])).is_err());
    }

    #[test]
    fn hypothesis() {
        let eta = catalog::eta(3, q()).unwrap();
        assert!(hypothesis_holds(&eta, &WeightVector::uniform(3, 1)).unwrap());
        assert!(hypothesis_holds(&eta, &WeightVector::new(vec![2, 1, 1])).unwrap());
        assert!(!hypothesis_holds(&eta, &WeightVector::new(vec![0, 0, 1])).unwrap());
        let rho = catalog::rho(3, q()).unwrap();
        assert!(hypothesis_holds(&rho, &WeightVector::new(vec![0, 0, 1])).unwrap());
    }

    #[test]
    fn weight_search() {
        for n in 3..=4 {
            let rho = catalog::rho(n, q()).unwrap();
            let zero = StructureVector::zeros(n, q());
            assert_eq!(search_weight_witness(&rho, &zero, 1).unwrap(), Some(WeightVector::uniform(n, 1)));
            let eta = catalog::eta(n, q()).unwrap();
            assert_eq!(search_weight_witness(&eta, &rho, 2).unwrap(), None);
        }
        // a Heisenberg-adapted vector: [v1,v2] = v3 plus products landing in v3
        let mut adapted = catalog::eta(3, q()).unwrap();
        adapted.set(0, 2, 2, q().from_i64(4));
        adapted.set(2, 0, 2, q().from_i64(-4));
        let found = search_weight_witness(&adapted, &catalog::eta(3, q()).unwrap(), 2).unwrap();
        assert_eq!(found, Some(WeightVector::new(vec![1, 1, 2])));
    }

    #[test]
    fn parse_weights() {
        assert_eq!("1, 1,2".parse::<WeightVector>().unwrap(), WeightVector::new(vec![1, 1, 2]));
        assert_eq!("-3".parse::<WeightVector>().unwrap(), WeightVector::new(vec![-3]));
        let err = "1,x".parse::<WeightVector>().unwrap_err();
        assert!(matches!(err, Error::Parse { ref field, .. } if field == "q[1]"));
        let json = serde_json::to_string(&WeightVector::new(vec![0, 1])).unwrap();
        assert_eq!(json, "[0,1]");
    }
}
