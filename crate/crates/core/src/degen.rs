//! Degeneration certificates: obstructions from closed invariant sets and
//! monotone invariants, explicit weighting witnesses, and the level-one
//! classifier.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::action::{act, BasisChange};
use crate::algebras::{
    ann_dims, is_commutative, is_lie, is_metabelian, is_skew, is_unimodular, product, product_witness, square_dim,
    square_witness, star_identity, satisfies_star_star, CoordinateVector,
};
use crate::catalog;
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::grading::{hypothesis_holds, truncate, WeightVector};
use crate::linalg::Echelon;
use crate::modspan::{in_p, in_u};
use crate::tensor::StructureVector;

/// The evidence carried by a [`DegenerationVerdict`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum VerdictKind {
    /// `truncate(act(from, basis), q) = to` with the hypothesis satisfied.
    WitnessGrading { q: WeightVector, basis: BasisChange },
    /// As `WitnessGrading`, where the first `m` basis vectors span an ideal.
    WitnessIdeal { m: usize, q: WeightVector, basis: BasisChange },
    /// A monotone invariant or closed invariant set separates `from` and `to`.
    Blocked {
        condition: String,
        from_value: String,
        to_value: String,
    },
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegenerationVerdict {
    pub from: StructureVector,
    pub to: StructureVector,
    #[serde(flatten)]
    pub kind: VerdictKind,
}

fn check_grading(from: &StructureVector, to: &StructureVector, q: &WeightVector, basis: &BasisChange) -> Result<()> {
    let moved = act(from, basis)?;
    if !hypothesis_holds(&moved, q)? {
        return Err(Error::CertificateRejected(format!(
            "entries in negative classes for q = ({q})"
        )));
    }
    if truncate(&moved, q)? != *to {
        return Err(Error::CertificateRejected(format!("truncation for q = ({q}) differs from the target")));
    }
    Ok(())
}

impl DegenerationVerdict {
    /// A grading witness, checked before it is returned.
    pub fn grading(from: StructureVector, to: StructureVector, q: WeightVector, basis: BasisChange) -> Result<Self> {
        check_grading(&from, &to, &q, &basis)?;
        Ok(DegenerationVerdict {
            from,
            to,
            kind: VerdictKind::WitnessGrading { q, basis },
        })
    }

    /// Re-checks a witness; `Blocked` verdicts are re-derived from the invariants.
    pub fn verify(&self) -> Result<()> {
        match &self.kind {
            VerdictKind::WitnessGrading { q, basis } => check_grading(&self.from, &self.to, q, basis),
            VerdictKind::WitnessIdeal { m, q, basis } => {
                check_grading(&self.from, &self.to, q, basis)?;
                check_ideal(&self.from, &(0..*m).map(|j| basis.column(j)).collect::<Vec<_>>())
            }
            VerdictKind::Blocked { .. } => match necessary_conditions(&self.from, &self.to)?.kind {
                VerdictKind::Blocked { .. } => Ok(()),
                _ => Err(Error::CertificateRejected("no obstruction found".into())),
            },
            VerdictKind::Inconclusive => Ok(()),
        }
    }

    pub fn is_witness(&self) -> bool {
        matches!(
            self.kind,
            VerdictKind::WitnessGrading { .. } | VerdictKind::WitnessIdeal { .. }
        )
    }

    pub fn is_blocked(&self) -> bool {
        matches!(self.kind, VerdictKind::Blocked { .. })
    }
}

impl fmt::Display for DegenerationVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            VerdictKind::WitnessGrading { q, .. } => write!(f, "degenerates: grading witness q = ({q})"),
            VerdictKind::WitnessIdeal { m, q, .. } => {
                write!(f, "degenerates: {m}-dimensional ideal, grading witness q = ({q})")
            }
            VerdictKind::Blocked {
                condition,
                from_value,
                to_value,
            } => write!(f, "blocked by {condition}: {from_value} -> {to_value}"),
            VerdictKind::Inconclusive => write!(f, "inconclusive: no obstruction found"),
        }
    }
}

fn blocked(lambda: &StructureVector, mu: &StructureVector, condition: &str, from: impl ToString, to: impl ToString) -> DegenerationVerdict {
    DegenerationVerdict {
        from: lambda.clone(),
        to: mu.clone(),
        kind: VerdictKind::Blocked {
            condition: condition.to_string(),
            from_value: from.to_string(),
            to_value: to.to_string(),
        },
    }
}

type ClosedSet = (&'static str, fn(&StructureVector) -> bool);

const CLOSED_SETS: [ClosedSet; 9] = [
    ("closed set: skew", is_skew),
    ("closed set: Lie", is_lie),
    ("closed set: metabelian", is_metabelian),
    ("closed set: commutative", is_commutative),
    ("closed set: unimodular", is_unimodular),
    ("closed set: U_n", in_u),
    ("closed set: P", in_p),
    ("closed set: condition (**)", satisfies_star_star),
    ("closed set: condition (*)", star_identity),
];

/// Membership of `λ` in each closed GL_n-stable set checked by [`necessary_conditions`].
pub fn closed_set_memberships(lambda: &StructureVector) -> Vec<(&'static str, bool)> {
    CLOSED_SETS.iter().map(|&(name, member)| (name, member(lambda))).collect()
}

/// Looks for an obstruction to `λ` degenerating to `μ`.
pub fn necessary_conditions(lambda: &StructureVector, mu: &StructureVector) -> Result<DegenerationVerdict> {
    lambda.check_compatible(mu)?;
    let (a, b) = (ann_dims(lambda), ann_dims(mu));
    if b.left < a.left {
        return Ok(blocked(lambda, mu, "left annihilator monotonicity", a.left, b.left));
    }
    if b.right < a.right {
        return Ok(blocked(lambda, mu, "right annihilator monotonicity", a.right, b.right));
    }
    let (sa, sb) = (square_dim(lambda), square_dim(mu));
    if sb > sa {
        return Ok(blocked(lambda, mu, "square dimension monotonicity", sa, sb));
    }
    for (name, member) in CLOSED_SETS {
        if member(lambda) && !member(mu) {
            return Ok(blocked(lambda, mu, name, true, false));
        }
    }
    Ok(DegenerationVerdict {
        from: lambda.clone(),
        to: mu.clone(),
        kind: VerdictKind::Inconclusive,
    })
}

/// Degeneration to the abelian algebra with `q̂ = (1, …, 1)`.
pub fn witness_to_abelian(lambda: &StructureVector) -> Result<DegenerationVerdict> {
    let n = lambda.n();
    DegenerationVerdict::grading(
        lambda.clone(),
        StructureVector::zeros(n, lambda.field()),
        WeightVector::uniform(n, 1),
        BasisChange::identity(n, lambda.field()),
    )
}

/// `vectors` followed by standard basis vectors that keep the list independent.
fn complete_basis(field: FieldSpec, n: usize, vectors: &[CoordinateVector]) -> Result<BasisChange> {
    let mut ech = Echelon::new(field, n);
    let mut columns = Vec::with_capacity(n);
    for v in vectors {
        if !ech.insert(v.coords().to_vec()) {
            return Err(Error::PreconditionFailed("basis vectors are linearly dependent".into()));
        }
        columns.push(v.clone());
    }
    for i in 0..n {
        let e = CoordinateVector::basis(field, n, i);
        if ech.insert(e.coords().to_vec()) {
            columns.push(e);
        }
    }
    BasisChange::from_columns(field, &columns)
}

fn check_ideal(lambda: &StructureVector, vectors: &[CoordinateVector]) -> Result<()> {
    let n = lambda.n();
    let field = lambda.field();
    let span = Echelon::from_rows(field, n, vectors.iter().map(|v| v.coords().to_vec()));
    if span.dim() != vectors.len() {
        return Err(Error::NotAnIdeal("vectors are linearly dependent".into()));
    }
    for (a, v) in vectors.iter().enumerate() {
        for i in 0..n {
            let e = CoordinateVector::basis(field, n, i);
            if !span.contains(product(lambda, v, &e)?.coords()) {
                return Err(Error::NotAnIdeal(format!("[u{}, v{}] leaves the span", a + 1, i + 1)));
            }
            if !span.contains(product(lambda, &e, v)?.coords()) {
                return Err(Error::NotAnIdeal(format!("[v{}, u{}] leaves the span", i + 1, a + 1)));
            }
        }
    }
    Ok(())
}

/// Degeneration to `g₁ ⊕ a_{n−m}` for the ideal `g₁` spanned by `vectors`,
/// using `q̂ = (0, …, 0, 1, …, 1)` in a basis extending the ideal's.
pub fn witness_ideal(lambda: &StructureVector, vectors: &[CoordinateVector]) -> Result<DegenerationVerdict> {
    let n = lambda.n();
    let field = lambda.field();
    for v in vectors {
        if v.n() != n || v.field() != field {
            return Err(Error::DimensionMismatch { expected: n, found: v.n() });
        }
    }
    check_ideal(lambda, vectors)?;
    let m = vectors.len();
    let basis = complete_basis(field, n, vectors)?;
    let mut w = vec![0; m];
    w.extend(vec![1; n - m]);
    let q = WeightVector::new(w);
    let to = truncate(&act(lambda, &basis)?, &q)?;
    check_grading(lambda, &to, &q, &basis)?;
    Ok(DegenerationVerdict {
        from: lambda.clone(),
        to,
        kind: VerdictKind::WitnessIdeal { m, q, basis },
    })
}

/// Degeneration to `h_n` for algebras satisfying (**) but not (*).
pub fn witness_to_heisenberg(lambda: &StructureVector) -> Result<DegenerationVerdict> {
    let n = lambda.n();
    let field = lambda.field();
    if n < 3 {
        return Err(Error::DimensionTooSmall { n, min: 3 });
    }
    if !satisfies_star_star(lambda) {
        return Err(Error::PreconditionFailed("condition (**) fails".into()));
    }
    if star_identity(lambda) {
        return Err(Error::PreconditionFailed("condition (*) holds".into()));
    }
    let (x, y) = product_witness(lambda)
        .ok_or_else(|| Error::PreconditionFailed(format!("no witness pair in the sample set over {field}")))?;
    let xy = product(lambda, &x, &y)?;
    let basis = complete_basis(field, n, &[x, y, xy])?;
    let mut w = vec![1, 1];
    w.extend(vec![2; n - 2]);
    DegenerationVerdict::grading(lambda.clone(), catalog::eta(n, field)?, WeightVector::new(w), basis)
}

/// Degeneration to `d_n` for algebras violating (**).
pub fn witness_to_dn(lambda: &StructureVector) -> Result<DegenerationVerdict> {
    let n = lambda.n();
    let field = lambda.field();
    if satisfies_star_star(lambda) {
        return Err(Error::PreconditionFailed("condition (**) holds".into()));
    }
    let x = square_witness(lambda)
        .ok_or_else(|| Error::PreconditionFailed(format!("no witness point in the sample set over {field}")))?;
    let xx = product(lambda, &x, &x)?;
    let basis = complete_basis(field, n, &[x, xx])?;
    let mut w = vec![1];
    w.extend(vec![2; n - 1]);
    DegenerationVerdict::grading(lambda.clone(), catalog::delta(n, field)?, WeightVector::new(w), basis)
}

/// Degeneration to `e_n(α)` for non-skew algebras satisfying (*); returns `α`.
///
/// With `[x, x] = c(x)·x` for a linear form `c`, the basis is `e_1` scaled so
/// that `[e_1, e_1] = e_1`, followed by a basis of `ker c`.
pub fn witness_to_e_alpha(lambda: &StructureVector) -> Result<(DegenerationVerdict, Scalar)> {
    let n = lambda.n();
    let field = lambda.field();
    if n < 2 {
        return Err(Error::DimensionTooSmall { n, min: 2 });
    }
    if is_skew(lambda) {
        return Err(Error::PreconditionFailed("the structure is skew".into()));
    }
    if !star_identity(lambda) {
        return Err(Error::PreconditionFailed("condition (*) fails".into()));
    }
    let c: Vec<Scalar> = (0..n).map(|i| lambda.get(i, i, i).clone()).collect();
    let i = c.iter().position(|x| !x.is_zero()).expect("non-skew with (**) has a nonzero square");
    let ci_inv = c[i].inverse()?;
    let mut columns = vec![CoordinateVector::basis(field, n, i).scale(&ci_inv)];
    for j in (0..n).filter(|&j| j != i) {
        let mut coords = vec![field.zero(); n];
        coords[j] = field.one();
        coords[i] = -(&c[j] * &ci_inv);
        columns.push(CoordinateVector::new(field, coords)?);
    }
    let basis = BasisChange::from_columns(field, &columns)?;
    let moved = act(lambda, &basis)?;
    let alpha = if n == 1 { field.zero() } else { moved.get(0, 1, 1).clone() };
    let mut w = vec![0];
    w.extend(vec![1; n - 1]);
    let verdict = DegenerationVerdict::grading(
        lambda.clone(),
        catalog::epsilon(n, field, &alpha)?,
        WeightVector::new(w),
        basis,
    )?;
    Ok((verdict, alpha))
}

/// The classifier's verdict; equality ignores attached witnesses.
#[derive(Clone, Debug, Eq)]
pub enum ClassificationLabel {
    Abelian,
    RN,
    HN,
    DN,
    EN(Scalar),
    /// Not level one, with a certificate of degeneration to a non-abelian
    /// algebra when the witness search succeeded.
    NotLevelOne(Option<Box<DegenerationVerdict>>),
    /// Dimension two, outside the scope of the classification.
    Dim2Family,
}

impl ClassificationLabel {
    pub fn name(&self) -> String {
        match self {
            ClassificationLabel::Abelian => "Abelian".into(),
            ClassificationLabel::RN => "R_n".into(),
            ClassificationLabel::HN => "H_n".into(),
            ClassificationLabel::DN => "D_n".into(),
            ClassificationLabel::EN(alpha) => format!("E_n({alpha})"),
            ClassificationLabel::NotLevelOne(_) => "NotLevelOne".into(),
            ClassificationLabel::Dim2Family => "Dim2Family".into(),
        }
    }

    pub fn witness(&self) -> Option<&DegenerationVerdict> {
        match self {
            ClassificationLabel::NotLevelOne(w) => w.as_deref(),
            _ => None,
        }
    }
}

impl PartialEq for ClassificationLabel {
    fn eq(&self, other: &Self) -> bool {
        use ClassificationLabel::*;
        match (self, other) {
            (EN(a), EN(b)) => a == b,
            (NotLevelOne(_), NotLevelOne(_)) => true,
            _ => std::mem::discriminant(self) == std::mem::discriminant(other),
        }
    }
}

impl fmt::Display for ClassificationLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

#[derive(Serialize)]
struct LabelRepr<'a> {
    label: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    alpha: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<&'a DegenerationVerdict>,
}

impl Serialize for ClassificationLabel {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let (label, alpha, witness) = match self {
            ClassificationLabel::Abelian => ("Abelian", None, None),
            ClassificationLabel::RN => ("R_n", None, None),
            ClassificationLabel::HN => ("H_n", None, None),
            ClassificationLabel::DN => ("D_n", None, None),
            ClassificationLabel::EN(a) => ("E_n", Some(a.to_string()), None),
            ClassificationLabel::NotLevelOne(w) => ("NotLevelOne", None, w.as_deref()),
            ClassificationLabel::Dim2Family => ("Dim2Family", None, None),
        };
        LabelRepr { label, alpha, witness }.serialize(serializer)
    }
}

fn not_level_one(witness: Result<DegenerationVerdict>) -> ClassificationLabel {
    ClassificationLabel::NotLevelOne(witness.ok().map(Box::new))
}

/// Sorts `λ` into the level-one families or certifies that it is not level one.
pub fn classify(lambda: &StructureVector) -> Result<ClassificationLabel> {
    let n = lambda.n();
    if n < 2 {
        return Err(Error::DimensionTooSmall { n, min: 2 });
    }
    if lambda.is_zero() {
        return Ok(ClassificationLabel::Abelian);
    }
    if n == 2 {
        return Ok(ClassificationLabel::Dim2Family);
    }
    let ann = ann_dims(lambda).two_sided;
    if is_skew(lambda) {
        if in_p(lambda) {
            return Ok(ClassificationLabel::RN);
        }
        if is_metabelian(lambda) && ann == n - 2 {
            return Ok(ClassificationLabel::HN);
        }
        return Ok(not_level_one(witness_to_heisenberg(lambda)));
    }
    if !satisfies_star_star(lambda) {
        if is_commutative(lambda) && is_metabelian(lambda) && ann == n - 1 {
            return Ok(ClassificationLabel::DN);
        }
        return Ok(not_level_one(witness_to_dn(lambda)));
    }
    if !star_identity(lambda) {
        return Ok(not_level_one(witness_to_heisenberg(lambda)));
    }
    let (verdict, alpha) = witness_to_e_alpha(lambda)?;
    match catalog::match_g_family(lambda) {
        Some(a) if a == alpha => Ok(ClassificationLabel::EN(alpha)),
        _ => Ok(ClassificationLabel::NotLevelOne(Some(Box::new(verdict)))),
    }
}
