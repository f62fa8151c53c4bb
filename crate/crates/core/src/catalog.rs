//! Named structure vectors. Indices are zero-based; signs are formed in the
//! target field, so in characteristic 2 `−1` and `1` coincide.

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::tensor::StructureVector;

fn require(n: usize, min: usize) -> Result<()> {
    if n < min {
        return Err(Error::DimensionTooSmall { n, min });
    }
    Ok(())
}

/// The abelian algebra a_n: the zero vector.
pub fn abelian(n: usize, field: FieldSpec) -> Result<StructureVector> {
    require(n, 2)?;
    Ok(StructureVector::zeros(n, field))
}

/// r_n: `[v_i, v_n] = v_i = −[v_n, v_i]` for `i < n`.
pub fn rho(n: usize, field: FieldSpec) -> Result<StructureVector> {
    require(n, 3)?;
    let last = n - 1;
    let mut v = StructureVector::zeros(n, field);
    for i in 0..last {
        v.set(i, last, i, field.one());
        v.set(last, i, i, -field.one());
    }
    Ok(v)
}

/// h_n: `[v_1, v_2] = v_3 = −[v_2, v_1]`.
pub fn eta(n: usize, field: FieldSpec) -> Result<StructureVector> {
    require(n, 3)?;
    Ok(StructureVector::from_triples(n, field, &[(0, 1, 2, 1), (1, 0, 2, -1)]))
}

/// d_n: `[v_1, v_1] = v_2` and nothing else.
pub fn delta(n: usize, field: FieldSpec) -> Result<StructureVector> {
    require(n, 2)?;
    Ok(StructureVector::from_triples(n, field, &[(0, 0, 1, 1)]))
}

/// e_n(α): `[v_1, v_1] = v_1`, `[v_1, v_i] = α v_i`, `[v_i, v_1] = (1 − α) v_i`.
pub fn epsilon(n: usize, field: FieldSpec, alpha: &Scalar) -> Result<StructureVector> {
    require(n, 2)?;
    check_field(field, alpha)?;
    let mut v = StructureVector::zeros(n, field);
    v.set(0, 0, 0, field.one());
    let beta = &field.one() - alpha;
    for i in 1..n {
        v.set(0, i, i, alpha.clone());
        v.set(i, 0, i, beta.clone());
    }
    Ok(v)
}

/// λ̂(r, s, t) for `r < s`, `t ∉ {r, s}`: `+1` at `(r, s, t)`, `−1` at `(s, r, t)`.
pub fn lambda_hat(r: usize, s: usize, t: usize, n: usize, field: FieldSpec) -> Result<StructureVector> {
    require(n, 3)?;
    if r >= s || s >= n || t >= n || t == r || t == s {
        return Err(Error::BadIndices(format!("lambda_hat({r}, {s}, {t}) with n = {n}")));
    }
    Ok(StructureVector::from_triples(n, field, &[(r, s, t, 1), (s, r, t, -1)]))
}

/// λ̃(r, s, t) for `s ≠ t`, `r ∉ {s, t}`: `+1` at `(r, s, s)`, `(t, r, t)`;
/// `−1` at `(r, t, t)`, `(s, r, s)`.
pub fn lambda_tilde(r: usize, s: usize, t: usize, n: usize, field: FieldSpec) -> Result<StructureVector> {
    require(n, 3)?;
    if r >= n || s >= n || t >= n || s == t || r == s || r == t {
        return Err(Error::BadIndices(format!("lambda_tilde({r}, {s}, {t}) with n = {n}")));
    }
    Ok(StructureVector::from_triples(
        n,
        field,
        &[(r, s, s, 1), (t, r, t, 1), (r, t, t, -1), (s, r, s, -1)],
    ))
}

/// Every λ̂ followed by every λ̃, in lexicographic index order.
pub fn unimodular_spanning_set(n: usize, field: FieldSpec) -> Result<Vec<StructureVector>> {
    let mut out = Vec::new();
    for r in 0..n {
        for s in r + 1..n {
            for t in (0..n).filter(|&t| t != r && t != s) {
                out.push(lambda_hat(r, s, t, n, field)?);
            }
        }
    }
    for r in 0..n {
        for s in (0..n).filter(|&s| s != r) {
            for t in (0..n).filter(|&t| t != r && t != s) {
                out.push(lambda_tilde(r, s, t, n, field)?);
            }
        }
    }
    Ok(out)
}

/// The two-dimensional skew vector `(0, 0, β, α, −β, −α, 0, 0)`.
pub fn k2_member(field: FieldSpec, alpha: &Scalar, beta: &Scalar) -> Result<StructureVector> {
    check_field(field, alpha)?;
    check_field(field, beta)?;
    let mut v = StructureVector::zeros(2, field);
    v.set(0, 1, 0, beta.clone());
    v.set(0, 1, 1, alpha.clone());
    v.set(1, 0, 0, -beta);
    v.set(1, 0, 1, -alpha);
    Ok(v)
}

/// `[v_i, v_i] = β_i v_i` and `[v_i, v_j] = αβ_i v_j + (1 − α)β_j v_i` for `i ≠ j`.
/// The dimension is `betas.len()`.
pub fn g_family(field: FieldSpec, alpha: &Scalar, betas: &[Scalar]) -> Result<StructureVector> {
    let n = betas.len();
    require(n, 1)?;
    check_field(field, alpha)?;
    for b in betas {
        check_field(field, b)?;
    }
    let co_alpha = &field.one() - alpha;
    let mut v = StructureVector::zeros(n, field);
    for i in 0..n {
        v.set(i, i, i, betas[i].clone());
        for j in (0..n).filter(|&j| j != i) {
            v.set(i, j, j, alpha * &betas[i]);
            v.set(i, j, i, &co_alpha * &betas[j]);
        }
    }
    Ok(v)
}

/// If `lambda` equals some `g_family(α, β)` with `β ≠ 0`, returns `α`.
pub fn match_g_family(lambda: &StructureVector) -> Option<Scalar> {
    let n = lambda.n();
    let field = lambda.field();
    let betas: Vec<Scalar> = (0..n).map(|i| lambda.get(i, i, i).clone()).collect();
    let i = betas.iter().position(|b| !b.is_zero())?;
    let alpha = if n == 1 {
        field.zero()
    } else {
        let j = usize::from(i == 0);
        lambda.get(i, j, j).div(&betas[i]).ok()?
    };
    let candidate = g_family(field, &alpha, &betas).ok()?;
    (candidate == *lambda).then_some(alpha)
}

fn check_field(field: FieldSpec, x: &Scalar) -> Result<()> {
    if x.spec() != field {
        return Err(Error::FieldMismatch(field.to_string(), x.spec().to_string()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::{ann_dims, is_commutative, is_lie, is_skew, square_dim};
    use crate::modspan::in_u;
    use crate::tensor::index_of;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    #[test]
    fn abelian_is_zero_and_lie() {
        let a = abelian(3, q()).unwrap();
        assert_eq!(a.entries().len(), 27);
        assert!(a.is_zero() && is_lie(&a));
    }

    #[test]
    fn rho_support() {
        let r = rho(3, q()).unwrap();
        let support: Vec<_> = r.support().map(|(t, x)| (t, x.to_string())).collect();
        assert_eq!(
            support,
            vec![
                ((0, 2, 0), "1".to_string()),
                ((1, 2, 1), "1".to_string()),
                ((2, 0, 0), "-1".to_string()),
                ((2, 1, 1), "-1".to_string()),
            ]
        );
        assert!(is_lie(&r));
        assert_eq!(ann_dims(&r).two_sided, 0);
        assert!(matches!(rho(2, q()), Err(Error::DimensionTooSmall { .. })));
    }

    #[test]
    fn eta_and_delta() {
        for n in 3..=5 {
            let h = eta(n, q()).unwrap();
            assert_eq!(h.support().count(), 2);
            assert_eq!(square_dim(&h), 1);
            let d = ann_dims(&h);
            assert_eq!((d.left, d.right, d.two_sided), (n - 2, n - 2, n - 2));
        }
        for n in 2..=5 {
            let d = delta(n, q()).unwrap();
            assert_eq!(d.support().count(), 1);
            assert!(is_commutative(&d));
            let a = ann_dims(&d);
            assert_eq!((a.left, a.right, a.two_sided), (n - 1, n - 1, n - 1));
        }
        let d2 = delta(2, q()).unwrap();
        let m = index_of(1, 1, 2, 2).unwrap();
        assert!(d2.entries().iter().enumerate().all(|(p, x)| x.is_zero() != (p + 1 == m)));
    }

    #[test]
    fn epsilon_specializations() {
        let e0 = epsilon(3, q(), &q().zero()).unwrap();
        assert_eq!(e0, StructureVector::from_triples(3, q(), &[(0, 0, 0, 1), (1, 0, 1, 1), (2, 0, 2, 1)]));
        let e1 = epsilon(3, q(), &q().one()).unwrap();
        assert_eq!(e1, StructureVector::from_triples(3, q(), &[(0, 0, 0, 1), (0, 1, 1, 1), (0, 2, 2, 1)]));
    }

    #[test]
    fn hat_and_tilde() {
        assert_eq!(lambda_hat(0, 1, 2, 3, q()).unwrap(), eta(3, q()).unwrap());
        let t = lambda_tilde(0, 1, 2, 3, q()).unwrap();
        assert_eq!(
            t,
            StructureVector::from_triples(3, q(), &[(0, 1, 1, 1), (2, 0, 2, 1), (0, 2, 2, -1), (1, 0, 1, -1)])
        );
        assert!(matches!(lambda_hat(1, 0, 2, 3, q()), Err(Error::BadIndices(_))));
        assert!(matches!(lambda_hat(0, 1, 1, 3, q()), Err(Error::BadIndices(_))));
        assert!(matches!(lambda_tilde(0, 1, 1, 3, q()), Err(Error::BadIndices(_))));
        assert!(matches!(lambda_tilde(1, 1, 2, 3, q()), Err(Error::BadIndices(_))));
        for n in 3..=5 {
            for v in unimodular_spanning_set(n, q()).unwrap() {
                assert!(in_u(&v));
            }
        }
    }

    #[test]
    fn k2_members() {
        let one = q().one();
        let v = k2_member(q(), &one, &one).unwrap();
        assert_eq!(v, StructureVector::from_triples(2, q(), &[(0, 1, 0, 1), (1, 0, 0, -1), (0, 1, 1, 1), (1, 0, 1, -1)]));
        assert!(k2_member(q(), &q().zero(), &q().zero()).unwrap().is_zero());
        for a in -2..=2 {
            for b in -2..=2 {
                assert!(is_skew(&k2_member(q(), &q().from_i64(a), &q().from_i64(b)).unwrap()));
            }
        }
    }

    #[test]
    fn g_family_specializations() {
        for a in [0, 1, 2, 5] {
            let alpha = q().from_i64(a);
            let betas = [q().one(), q().zero(), q().zero()];
            assert_eq!(g_family(q(), &alpha, &betas).unwrap(), epsilon(3, q(), &alpha).unwrap());
            assert_eq!(match_g_family(&epsilon(3, q(), &alpha).unwrap()), Some(alpha));
        }
        let zeros = [q().zero(), q().zero(), q().zero()];
        assert!(g_family(q(), &q().from_i64(3), &zeros).unwrap().is_zero());
        assert_eq!(match_g_family(&delta(3, q()).unwrap()), None);
        assert_eq!(match_g_family(&StructureVector::zeros(3, q())), None);
    }
}
