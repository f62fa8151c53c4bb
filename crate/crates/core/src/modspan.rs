//! GL_n-stable subspaces of the structure-vector space: the subspaces `P`
//! and `U_n`, and the span of an orbit computed by saturation.

use serde::Serialize;

use crate::action::{act, act_permutation, BasisChange};
use crate::algebras::is_skew;
use crate::catalog;
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::{self, Echelon};
use crate::tensor::StructureVector;

pub const MAX_SPAN_N: usize = 6;

/// `λ ∈ P`: skew, `λ_ijk = 0` for `k ∉ {i, j}`, and `λ_iji = λ_kjk` whenever `j ∉ {i, k}`.
pub fn in_p(lambda: &StructureVector) -> bool {
    if !is_skew(lambda) {
        return false;
    }
    let n = lambda.n();
    let off_support = lambda.support().any(|((i, j, k), _)| k != i && k != j);
    if off_support {
        return false;
    }
    (0..n).all(|j| {
        let mut others = (0..n).filter(|&i| i != j);
        let Some(first) = others.next() else {
            return true;
        };
        let c = lambda.get(first, j, first);
        others.all(|i| lambda.get(i, j, i) == c)
    })
}

/// `λ ∈ U_n`: skew with `Σ_j λ_ijj = 0` for every `i`.
pub fn in_u(lambda: &StructureVector) -> bool {
    if !is_skew(lambda) {
        return false;
    }
    let n = lambda.n();
    let field = lambda.field();
    (0..n).all(|i| {
        let mut sum = field.zero();
        for j in 0..n {
            sum += lambda.get(i, j, j);
        }
        sum.is_zero()
    })
}

fn require(n: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::DimensionTooSmall { n, min: 3 });
    }
    Ok(())
}

pub fn dim_p(n: usize) -> Result<usize> {
    require(n)?;
    Ok(n)
}

pub fn dim_u(n: usize) -> Result<usize> {
    require(n)?;
    Ok(n * (n - 2) * (n + 1) / 2)
}

pub fn dim_sk(n: usize) -> Result<usize> {
    require(n)?;
    Ok(n * n * (n - 1) / 2)
}

/// A subspace of `F^{n³}` held as a reduced echelon basis.
#[derive(Clone, Debug)]
pub struct SubspaceBasis {
    n: usize,
    echelon: Echelon,
}

impl SubspaceBasis {
    pub fn zero(n: usize, field: FieldSpec) -> Self {
        SubspaceBasis {
            n,
            echelon: Echelon::new(field, n * n * n),
        }
    }

    pub fn spanned_by(n: usize, field: FieldSpec, vectors: &[StructureVector]) -> Self {
        SubspaceBasis {
            n,
            echelon: Echelon::from_rows(field, n * n * n, vectors.iter().map(|v| v.entries().to_vec())),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> FieldSpec {
        self.echelon.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.n * self.n * self.n
    }

    pub fn dim(&self) -> usize {
        self.echelon.dim()
    }

    pub fn contains(&self, v: &StructureVector) -> bool {
        v.n() == self.n && v.field() == self.field() && self.echelon.contains(v.entries())
    }

    pub fn contains_subspace(&self, other: &SubspaceBasis) -> bool {
        self.echelon.contains_all(&other.echelon)
    }

    pub fn same_as(&self, other: &SubspaceBasis) -> bool {
        self.dim() == other.dim() && self.contains_subspace(other)
    }

    pub fn intersection_dim(&self, other: &SubspaceBasis) -> usize {
        self.echelon.intersection_dim(&other.echelon)
    }

    /// The reduced echelon basis as structure vectors.
    pub fn vectors(&self) -> Vec<StructureVector> {
        self.echelon
            .rows()
            .iter()
            .map(|r| StructureVector::from_entries(self.n, self.field(), r.clone()).expect("row has n³ entries"))
            .collect()
    }

    fn insert(&mut self, v: &StructureVector) -> bool {
        self.echelon.insert(v.entries().to_vec())
    }
}

#[derive(Serialize)]
struct SubspaceRepr {
    n: usize,
    field: FieldSpec,
    dim: usize,
    basis: Vec<StructureVector>,
}

impl Serialize for SubspaceBasis {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        SubspaceRepr {
            n: self.n,
            field: self.field(),
            dim: self.dim(),
            basis: self.vectors(),
        }
        .serialize(serializer)
    }
}

/// Linear equations in the `n³` coordinates, one coefficient row each.
struct Equations {
    n: usize,
    field: FieldSpec,
    rows: Vec<Vec<Scalar>>,
}

impl Equations {
    fn new(n: usize, field: FieldSpec) -> Self {
        Equations {
            n,
            field,
            rows: Vec::new(),
        }
    }

    fn push(&mut self, terms: &[((usize, usize, usize), i64)]) {
        let n = self.n;
        let mut row = vec![self.field.zero(); n * n * n];
        for &((i, j, k), c) in terms {
            row[(i * n + j) * n + k] += &self.field.from_i64(c);
        }
        self.rows.push(row);
    }

    fn skew(&mut self) {
        let n = self.n;
        for i in 0..n {
            for k in 0..n {
                self.push(&[((i, i, k), 1)]);
            }
            for j in i + 1..n {
                for k in 0..n {
                    self.push(&[((i, j, k), 1), ((j, i, k), 1)]);
                }
            }
        }
    }

    fn solve(self) -> SubspaceBasis {
        let width = self.n * self.n * self.n;
        let kernel = linalg::kernel(&self.rows, width, self.field);
        SubspaceBasis {
            n: self.n,
            echelon: Echelon::from_rows(self.field, width, kernel),
        }
    }
}

/// Solution space of the defining equations of Sk.
pub fn sk_subspace(n: usize, field: FieldSpec) -> Result<SubspaceBasis> {
    require(n)?;
    let mut eqs = Equations::new(n, field);
    eqs.skew();
    Ok(eqs.solve())
}

/// Solution space of the defining equations of `P`.
pub fn p_subspace(n: usize, field: FieldSpec) -> Result<SubspaceBasis> {
    require(n)?;
    let mut eqs = Equations::new(n, field);
    eqs.skew();
    for i in 0..n {
        for j in 0..n {
            for k in (0..n).filter(|&k| k != i && k != j) {
                eqs.push(&[((i, j, k), 1)]);
            }
        }
    }
    for j in 0..n {
        let first = usize::from(j == 0);
        for i in (0..n).filter(|&i| i != j && i != first) {
            eqs.push(&[((i, j, i), 1), ((first, j, first), -1)]);
        }
    }
    Ok(eqs.solve())
}

/// Solution space of the defining equations of `U_n`.
pub fn u_subspace(n: usize, field: FieldSpec) -> Result<SubspaceBasis> {
    require(n)?;
    let mut eqs = Equations::new(n, field);
    eqs.skew();
    for i in 0..n {
        let terms: Vec<_> = (0..n).map(|j| ((i, j, j), 1)).collect();
        eqs.push(&terms);
    }
    Ok(eqs.solve())
}

/// Transvection parameters and diagonal entries used by the saturation.
fn sample_parameters(field: FieldSpec) -> (Vec<Scalar>, Vec<Scalar>) {
    match field {
        FieldSpec::Prime(p) if p <= 7 => {
            let ts = (1..p as i64).map(|t| field.from_i64(t)).collect();
            let us = (2..p as i64).map(|u| field.from_i64(u)).collect();
            (ts, us)
        }
        _ => {
            let ts = (1..=5).map(|t| field.from_i64(t)).collect();
            let us = (2..=5).map(|u| field.from_i64(u)).collect();
            (ts, us)
        }
    }
}

enum Generator {
    Permutation(Vec<usize>),
    Matrix(BasisChange),
}

fn saturation_generators(n: usize, field: FieldSpec) -> Result<Vec<Generator>> {
    let mut gens = Vec::new();
    for i in 0..n - 1 {
        let mut sigma: Vec<usize> = (0..n).collect();
        sigma.swap(i, i + 1);
        gens.push(Generator::Permutation(sigma));
    }
    gens.push(Generator::Permutation((0..n).map(|i| (i + 1) % n).collect()));
    let (ts, us) = sample_parameters(field);
    for i in 0..n {
        for j in (0..n).filter(|&j| j != i) {
            for t in &ts {
                gens.push(Generator::Matrix(BasisChange::transvection(n, field, i, j, t)?));
            }
        }
    }
    for i in 0..n {
        for u in &us {
            let mut d = vec![field.one(); n];
            d[i] = u.clone();
            gens.push(Generator::Matrix(BasisChange::diagonal(&d)?));
        }
    }
    Ok(gens)
}

/// The smallest GL_n(F)-stable subspace containing `λ`.
pub fn fg_span(lambda: &StructureVector) -> Result<SubspaceBasis> {
    let n = lambda.n();
    if n > MAX_SPAN_N {
        return Err(Error::DimensionTooLarge { n, max: MAX_SPAN_N });
    }
    let field = lambda.field();
    let mut span = SubspaceBasis::zero(n, field);
    if lambda.is_zero() {
        return Ok(span);
    }
    let gens = saturation_generators(n, field)?;
    span.insert(lambda);
    let mut queue = vec![lambda.clone()];
    while let Some(v) = queue.pop() {
        for g in &gens {
            let w = match g {
                Generator::Permutation(sigma) => act_permutation(&v, sigma)?,
                Generator::Matrix(m) => act(&v, m)?,
            };
            if span.insert(&w) {
                queue.push(w);
            }
        }
    }
    Ok(span)
}

/// How the spans of `ρ` and `η` sit inside Sk.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum Branch {
    /// `ρ(FG) ⊕ η(FG) = Sk`.
    DirectSum,
    /// `ρ(FG) ⊆ η(FG)`.
    Chain,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompositionReport {
    pub n: usize,
    pub field: FieldSpec,
    pub branch: Branch,
    pub dim_rho_span: usize,
    pub dim_eta_span: usize,
    pub dim_sk: usize,
    pub intersection_dim: usize,
    pub rho_in_eta_span: bool,
    /// Whether the computed spans satisfy the relations of `branch`.
    pub verified: bool,
}

/// Computes `ρ(FG)` and `η(FG)` and checks the relation selected by whether
/// the characteristic divides `n − 1`.
pub fn composition_branch(n: usize, field: FieldSpec) -> Result<CompositionReport> {
    require(n)?;
    let rho = catalog::rho(n, field)?;
    let rho_span = fg_span(&rho)?;
    let eta_span = fg_span(&catalog::eta(n, field)?)?;
    let dim_sk = dim_sk(n)?;
    let intersection_dim = rho_span.intersection_dim(&eta_span);
    let rho_in_eta_span = eta_span.contains(&rho);
    let (branch, verified) = if field.char_divides(n as i64 - 1) {
        (Branch::Chain, rho_in_eta_span && eta_span.contains_subspace(&rho_span))
    } else {
        (
            Branch::DirectSum,
            intersection_dim == 0 && rho_span.dim() + eta_span.dim() == dim_sk,
        )
    };
    Ok(CompositionReport {
        n,
        field,
        branch,
        dim_rho_span: rho_span.dim(),
        dim_eta_span: eta_span.dim(),
        dim_sk,
        intersection_dim,
        rho_in_eta_span,
        verified,
    })
}
