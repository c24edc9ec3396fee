//! Quadratic and bilinear form machinery: isotropy, right-orthogonal bases,
//! congruence up to a scalar, similarity of quadratic forms, and the explicit
//! witness for equivalence of the affine spaces `I + P.Alt_n`.

use serde::Serialize;

use crate::construct::p_alt;
use crate::enumerate::{self, EnumOptions};
use crate::error::{Error, Result};
use crate::linalg::{AffineSpace, FieldDesc, Matrix, Scalar, Vector};

/// Largest field order searched by [`congruent_up_to_scalar`] for 2x2 forms.
pub const CONGRUENCE_MAX_Q: u32 = 11;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DiscClass {
    Square,
    Nonsquare,
    /// Odd dimension: scaling moves the discriminant through every class.
    NotApplicable,
}

/// Similarity invariants of a non-degenerate quadratic form over odd `F_q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct QuadSimClass {
    pub dim: usize,
    pub disc_class: DiscClass,
}

fn quad_value(p: &Matrix, x: &Vector) -> Scalar {
    p.bilinear(x, x)
}

/// A nonzero `X` with `X^T P X = 0`, searched over projective points.
pub fn find_isotropic_vector(p: &Matrix, opts: &EnumOptions) -> Result<Option<Vector>> {
    if !p.is_square() {
        return Err(Error::DimensionMismatch(format!("{}x{} form", p.rows(), p.cols())));
    }
    let field = p.field();
    enumerate::find_first(field, p.rows(), opts, |x| {
        let v = Vector::from_elems(field, x.to_vec());
        quad_value(p, &v).is_zero().then_some(v)
    })
}

pub fn is_isotropic(p: &Matrix, opts: &EnumOptions) -> Result<bool> {
    Ok(find_isotropic_vector(p, opts)?.is_some())
}

/// Invertible `S` with `S^T P S` lower triangular with nonzero diagonal.
///
/// The columns of `S` form a right-orthogonal basis for `b(x, y) = x^T P y`:
/// pick the first remaining basis vector `x`, then project the others onto
/// `{y : b(x, y) = 0}`, which is a complement of `x` because `b(x, x) != 0`.
/// Fails with `IsotropicForm` as soon as a chosen vector has `b(x, x) = 0`,
/// which never happens for a non-isotropic `P`.
pub fn right_orthogonal_congruence(p: &Matrix) -> Result<Matrix> {
    if !p.is_square() {
        return Err(Error::DimensionMismatch(format!("{}x{} form", p.rows(), p.cols())));
    }
    let field = p.field();
    let n = p.rows();
    let mut remaining: Vec<Vector> = (0..n).map(|i| Vector::unit(field, n, i)).collect();
    let mut chosen = Vec::with_capacity(n);
    while !remaining.is_empty() {
        let x = remaining.remove(0);
        let bxx = p.bilinear(&x, &x);
        let inv = bxx.inv().ok_or(Error::IsotropicForm)?;
        remaining = remaining
            .into_iter()
            .map(|y| {
                let c = p.bilinear(&x, &y).try_mul(&inv).unwrap();
                y.try_add(&x.scale(&c.neg())).unwrap()
            })
            .collect();
        chosen.push(x);
    }
    Matrix::from_columns(field, &chosen)
}

fn require_same_square(p: &Matrix, q: &Matrix) -> Result<usize> {
    p.field().check_same(q.field())?;
    if !p.is_square() || !q.is_square() || p.rows() != q.rows() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} vs {}x{}",
            p.rows(),
            p.cols(),
            q.rows(),
            q.cols()
        )));
    }
    Ok(p.rows())
}

/// Decides `P = R (lambda Q) R^T` for some invertible `R` and nonzero
/// `lambda`, returning the first witness found.
///
/// Size 1 is decided in closed form over any field; size 2 is a brute-force
/// search over `F_q^* x GL_2(F_q)` for `q <= 11`. Pure scalings (`R = I`)
/// are tried before the full search.
pub fn congruent_up_to_scalar(p: &Matrix, q: &Matrix) -> Result<Option<(Scalar, Matrix)>> {
    let m = require_same_square(p, q)?;
    if !p.is_invertible() || !q.is_invertible() {
        return Err(Error::SingularMatrix);
    }
    let field = p.field();
    if m == 1 {
        let lambda = p.get(0, 0).try_mul(&q.get(0, 0).inv().unwrap())?;
        return Ok(Some((lambda, Matrix::identity(field, 1))));
    }
    let order = match field {
        FieldDesc::Prime(order) if m == 2 && order <= CONGRUENCE_MAX_Q => order,
        _ => {
            return Err(Error::SizeLimitExceeded(format!(
                "congruence search supports m <= 2 over F_q with q <= {CONGRUENCE_MAX_Q}, got m = {m} over {field}"
            )))
        }
    };
    let md = order as u64;
    let raw = |a: &Matrix| -> [u64; 4] {
        let g = |i, j| a.get(i, j).as_u32().unwrap() as u64;
        [g(0, 0), g(0, 1), g(1, 0), g(1, 1)]
    };
    let pr = raw(p);
    let qr = raw(q);
    // R (l Q) R^T entry (i, j) = l * sum_{a,b} R_ia Q_ab R_jb
    let congruent = |l: u64, r: [u64; 4]| -> bool {
        for i in 0..2 {
            for j in 0..2 {
                let mut acc = 0;
                for a in 0..2 {
                    for b in 0..2 {
                        acc += r[2 * i + a] * qr[2 * a + b] % md * r[2 * j + b] % md;
                    }
                }
                if acc % md * l % md != pr[2 * i + j] {
                    return false;
                }
            }
        }
        true
    };
    let to_matrix = |r: [u64; 4]| Matrix::from_i64(field, &[[r[0] as i64, r[1] as i64], [r[2] as i64, r[3] as i64]]);
    let identity = [1, 0, 0, 1];
    for l in 1..md {
        if congruent(l, identity) {
            return Ok(Some((field.from_i64(l as i64), to_matrix(identity))));
        }
    }
    for l in 1..md {
        for idx in 0..md.pow(4) {
            let r = [idx / (md * md * md), idx / (md * md) % md, idx / md % md, idx % md];
            if (r[0] * r[3] + md * md - r[1] * r[2] % md).is_multiple_of(md) {
                continue;
            }
            if congruent(l, r) {
                return Ok(Some((field.from_i64(l as i64), to_matrix(r))));
            }
        }
    }
    Ok(None)
}

fn odd_prime(field: FieldDesc) -> Result<u32> {
    let q = field.require_finite()?;
    if q == 2 {
        return Err(Error::EvenCharacteristic);
    }
    Ok(q)
}

/// `(P + P^T) / 2`, the Gram matrix of the quadratic form `X -> X^T P X`.
pub fn symmetrize(p: &Matrix) -> Result<Matrix> {
    if p.field().characteristic() == 2 {
        return Err(Error::EvenCharacteristic);
    }
    let half = p.field().from_i64(2).inv().unwrap();
    Ok((p + &p.transpose()).scale(&half))
}

/// Dimension and (for even dimension) discriminant square class of the
/// symmetrized form.
pub fn quad_sim_class(p: &Matrix) -> Result<QuadSimClass> {
    odd_prime(p.field())?;
    if !p.is_square() {
        return Err(Error::DimensionMismatch(format!("{}x{} form", p.rows(), p.cols())));
    }
    let disc = symmetrize(p)?.det();
    if disc.is_zero() {
        return Err(Error::DegenerateForm);
    }
    let dim = p.rows();
    let disc_class = if dim % 2 == 1 {
        DiscClass::NotApplicable
    } else if disc.is_square() {
        DiscClass::Square
    } else {
        DiscClass::Nonsquare
    };
    Ok(QuadSimClass { dim, disc_class })
}

/// Whether `X -> X^T P X` and `X -> X^T Q X` are similar over odd `F_q`.
pub fn quad_similar(p: &Matrix, q: &Matrix) -> Result<bool> {
    p.field().check_same(q.field())?;
    Ok(quad_sim_class(p)? == quad_sim_class(q)?)
}

/// Sufficient non-isotropy test over `Q`: the symmetrized form is positive or
/// negative definite by leading principal minors. `false` is inconclusive.
pub fn definite_certificate(p: &Matrix) -> bool {
    if p.field() != FieldDesc::Rational || !p.is_square() {
        return false;
    }
    let sym = symmetrize(p).expect("characteristic zero");
    let signs: Vec<i32> = (1..=p.rows()).map(|k| sym.block(0, 0, k, k).det().signum().unwrap()).collect();
    let positive = signs.iter().all(|&s| s > 0);
    let negative = signs.iter().enumerate().all(|(k, &s)| s == if k % 2 == 0 { -1 } else { 1 });
    positive || negative
}

/// Explicit `S` with `R (I + P.Alt) = (I + Q.Alt) S`, given `lambda` and `R`
/// such that `lambda Q - R P R^T` is alternate.
///
/// `S = R (I + P A)` with `A = -(R P)^-1 A' ((R P)^T)^-1`; the caller
/// certifies that `P` is non-isotropic. The set equality is checked before
/// returning.
pub fn equivalence_witness(p: &Matrix, q: &Matrix, lambda: &Scalar, r: &Matrix) -> Result<Matrix> {
    let n = require_same_square(p, q)?;
    let field = p.field();
    field.check_same(lambda.field())?;
    field.check_same(r.field())?;
    if r.rows() != n || r.cols() != n {
        return Err(Error::DimensionMismatch(format!("{}x{} R for size {n}", r.rows(), r.cols())));
    }
    if lambda.is_zero() {
        return Err(Error::InvalidBlock("lambda must be nonzero".into()));
    }
    let rp = r * p;
    let rp_inv = rp.inverse()?;
    let a_prime = &q.scale(lambda) - &(&rp * &r.transpose());
    if !a_prime.is_alternate() {
        return Err(Error::NotAlternate);
    }
    let a = (&(&rp_inv * &a_prime) * &rp_inv.transpose()).neg();
    let id = Matrix::identity(field, n);
    let s = r * &(&id + &(p * &a));
    if !s.is_invertible() {
        return Err(Error::SingularWitness);
    }
    let lhs = AffineSpace::new(id.clone(), p_alt(p)?)?.left_mul(r)?;
    let rhs = AffineSpace::new(id, p_alt(q)?)?.right_mul(&s)?;
    if lhs != rhs {
        return Err(Error::WitnessMismatch);
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::alt_basis;

    fn f(p: u64) -> FieldDesc {
        FieldDesc::prime(p).unwrap()
    }

    fn opts() -> EnumOptions {
        EnumOptions::default()
    }

    #[test]
    fn isotropy_examples() {
        assert!(!is_isotropic(&Matrix::identity(f(3), 2), &opts()).unwrap());
        let w = find_isotropic_vector(&Matrix::identity(f(5), 2), &opts()).unwrap().unwrap();
        assert_eq!(w, Vector::from_i64(f(5), &[1, 2]));
        for q in [3, 5, 7] {
            assert!(is_isotropic(&Matrix::identity(f(q), 3), &opts()).unwrap());
        }
        assert!(matches!(is_isotropic(&Matrix::identity(FieldDesc::rational(), 2), &opts()), Err(Error::InfiniteField(_))));
    }

    #[test]
    fn right_orthogonal_examples() {
        let k = f(3);
        let lower = Matrix::from_i64(k, &[[1, 0], [2, 2]]);
        assert_eq!(right_orthogonal_congruence(&lower).unwrap(), Matrix::identity(k, 2));
        let p = Matrix::from_i64(k, &[[1, 1], [0, 1]]);
        let s = right_orthogonal_congruence(&p).unwrap();
        let t = &(&s.transpose() * &p) * &s;
        assert!(t.get(0, 1).is_zero());
        assert!(s.is_invertible());
        let q = FieldDesc::rational();
        assert_eq!(right_orthogonal_congruence(&Matrix::identity(q, 3)).unwrap(), Matrix::identity(q, 3));
        let hyperbolic = Matrix::from_i64(k, &[[0, 1], [1, 0]]);
        assert_eq!(right_orthogonal_congruence(&hyperbolic), Err(Error::IsotropicForm));
    }

    #[test]
    fn congruence_examples() {
        let k = f(3);
        let p = Matrix::from_i64(k, &[[1, 1], [0, 1]]);
        assert_eq!(congruent_up_to_scalar(&p, &p).unwrap(), Some((k.one(), Matrix::identity(k, 2))));
        let two_p = p.scale(&k.from_i64(2));
        assert_eq!(congruent_up_to_scalar(&two_p, &p).unwrap(), Some((k.from_i64(2), Matrix::identity(k, 2))));
        let alt = Matrix::from_i64(k, &[[0, 1], [-1, 0]]);
        assert_eq!(congruent_up_to_scalar(&alt, &Matrix::identity(k, 2)).unwrap(), None);
        assert!(matches!(
            congruent_up_to_scalar(&Matrix::identity(f(13), 2), &Matrix::identity(f(13), 2)),
            Err(Error::SizeLimitExceeded(_))
        ));
        let q = FieldDesc::rational();
        let (l, _) = congruent_up_to_scalar(&Matrix::diagonal(q, &[3]), &Matrix::diagonal(q, &[6])).unwrap().unwrap();
        assert_eq!(l.to_string(), "1/2");
    }

    #[test]
    fn congruence_witness_is_exact() {
        let k = f(5);
        let p = Matrix::from_i64(k, &[[1, 2], [0, 3]]);
        let r0 = Matrix::from_i64(k, &[[2, 1], [1, 1]]);
        let q = &(&r0 * &p) * &r0.transpose();
        let (l, r) = congruent_up_to_scalar(&q, &p).unwrap().unwrap();
        assert_eq!(&(&r * &p.scale(&l)) * &r.transpose(), q);
    }

    #[test]
    fn similarity_examples() {
        let k = f(3);
        let i2 = Matrix::identity(k, 2);
        assert!(quad_similar(&i2, &i2.scale(&k.from_i64(2))).unwrap());
        for c in 1..3 {
            assert!(quad_similar(&Matrix::identity(k, 1), &Matrix::diagonal(k, &[c])).unwrap());
        }
        assert!(!quad_similar(&i2, &Matrix::diagonal(k, &[1, 2])).unwrap());
        assert_eq!(quad_similar(&Matrix::identity(f(2), 2), &Matrix::identity(f(2), 2)), Err(Error::EvenCharacteristic));
        let alt = Matrix::from_i64(k, &[[0, 1], [-1, 0]]);
        assert_eq!(quad_sim_class(&alt), Err(Error::DegenerateForm));
    }

    #[test]
    fn definite_examples() {
        let q = FieldDesc::rational();
        assert!(definite_certificate(&Matrix::identity(q, 3)));
        assert!(definite_certificate(&Matrix::diagonal(q, &[-1, -2])));
        assert!(!definite_certificate(&Matrix::diagonal(q, &[1, -1])));
        assert!(!definite_certificate(&Matrix::from_i64(q, &[[1, 3], [0, 1]])));
        assert!(!definite_certificate(&Matrix::identity(f(3), 2)));
    }

    #[test]
    fn witness_examples() {
        let k = f(3);
        let i2 = Matrix::identity(k, 2);
        assert_eq!(equivalence_witness(&i2, &i2, &k.one(), &i2).unwrap(), i2);
        let two = k.from_i64(2);
        assert_eq!(equivalence_witness(&i2, &i2.scale(&two), &two, &i2).unwrap(), i2);
        let kk = alt_basis(2, k).remove(0);
        let q = &i2 + &kk;
        let s = equivalence_witness(&i2, &q, &k.one(), &i2).unwrap();
        // A' = K, A = -K, S = I - K
        assert_eq!(s, &i2 - &kk);
        assert_eq!(equivalence_witness(&i2, &Matrix::diagonal(k, &[1, 2]), &k.one(), &i2), Err(Error::NotAlternate));
    }
}
