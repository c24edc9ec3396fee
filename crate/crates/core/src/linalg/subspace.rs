//! Canonically represented subspaces of `K^n`, of `M_n(K)`, and affine
//! translates of the latter.
//!
//! Every subspace stores its reduced row-echelon basis (pivots ascending), so
//! two equal subspaces have identical representations and `==` is subspace
//! equality.

use std::fmt;

use super::echelon::{self, Echelon};
use super::field::{Elem, FieldDesc};
use super::matrix::{Matrix, Vector};
use crate::error::{Error, Result};

/// Subspace of `K^n` in canonical echelon form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VectorSubspace {
    field: FieldDesc,
    ambient: usize,
    ech: Echelon,
}

impl VectorSubspace {
    pub(crate) fn from_echelon(field: FieldDesc, ambient: usize, ech: Echelon) -> Self {
        VectorSubspace { field, ambient, ech }
    }

    pub fn zero(field: FieldDesc, ambient: usize) -> Self {
        VectorSubspace { field, ambient, ech: Echelon::empty() }
    }

    pub fn full(field: FieldDesc, ambient: usize) -> Self {
        let basis: Vec<Vector> = (0..ambient).map(|i| Vector::unit(field, ambient, i)).collect();
        Self::span(field, ambient, &basis).unwrap()
    }

    /// Canonical span of `vectors`, all of which must have length `ambient`.
    pub fn span(field: FieldDesc, ambient: usize, vectors: &[Vector]) -> Result<Self> {
        let mut rows = Vec::with_capacity(vectors.len());
        for v in vectors {
            field.check_same(v.field())?;
            if v.len() != ambient {
                return Err(Error::DimensionMismatch(format!("vector of length {} in K^{ambient}", v.len())));
            }
            rows.push(v.elems().to_vec());
        }
        Ok(VectorSubspace { field, ambient, ech: echelon::rref(&field, rows, ambient) })
    }

    pub fn field(&self) -> FieldDesc {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.ech.rank()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    pub fn pivots(&self) -> &[usize] {
        &self.ech.pivots
    }

    pub fn basis(&self) -> Vec<Vector> {
        self.ech.rows.iter().map(|r| Vector::from_elems(self.field, r.clone())).collect()
    }

    pub fn contains(&self, v: &Vector) -> bool {
        v.len() == self.ambient && v.field() == self.field && self.ech.contains(&self.field, v.elems())
    }

    pub fn is_subspace_of(&self, other: &VectorSubspace) -> bool {
        self.ech.rows.iter().all(|r| other.ech.contains(&other.field, r))
    }

    pub fn join(&self, other: &VectorSubspace) -> Result<VectorSubspace> {
        self.field.check_same(other.field)?;
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch("subspaces of different ambient spaces".into()));
        }
        let mut ech = self.ech.clone();
        for r in &other.ech.rows {
            ech.insert(&self.field, r.clone());
        }
        Ok(VectorSubspace { ech, ..self.clone() })
    }

    /// `{y : x^T y = 0 for all x in self}` under the standard pairing.
    pub fn orthogonal(&self) -> VectorSubspace {
        let ns = echelon::nullspace(&self.field, self.ech.rows.clone(), self.ambient);
        VectorSubspace { field: self.field, ambient: self.ambient, ech: echelon::rref(&self.field, ns, self.ambient) }
    }
}

impl fmt::Display for VectorSubspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "span{{")?;
        for (i, v) in self.basis().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Canonical echelon basis of the span of `vectors`.
pub fn echelonize(field: FieldDesc, ambient: usize, vectors: &[Vector]) -> Result<VectorSubspace> {
    VectorSubspace::span(field, ambient, vectors)
}

/// Linear subspace of `M_n(K)`, canonical under row-major vectorization.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MatrixSubspace {
    field: FieldDesc,
    n: usize,
    ech: Echelon,
}

impl MatrixSubspace {
    pub fn zero(field: FieldDesc, n: usize) -> Self {
        MatrixSubspace { field, n, ech: Echelon::empty() }
    }

    /// The whole of `M_n(K)`.
    pub fn full(field: FieldDesc, n: usize) -> Self {
        let gens: Vec<Matrix> =
            (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| Matrix::unit(field, n, i, j)).collect();
        Self::span(field, n, &gens).unwrap()
    }

    pub fn span(field: FieldDesc, n: usize, generators: &[Matrix]) -> Result<Self> {
        let mut rows = Vec::with_capacity(generators.len());
        for m in generators {
            field.check_same(m.field())?;
            if m.rows() != n || m.cols() != n {
                return Err(Error::DimensionMismatch(format!(
                    "{}x{} generator in M_{n}",
                    m.rows(),
                    m.cols()
                )));
            }
            rows.push(m.elems().to_vec());
        }
        Ok(MatrixSubspace { field, n, ech: echelon::rref(&field, rows, n * n) })
    }

    pub fn field(&self) -> FieldDesc {
        self.field
    }

    /// Size `n` of the ambient `M_n(K)`.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.ech.rank()
    }

    pub fn basis(&self) -> Vec<Matrix> {
        self.ech.rows.iter().map(|r| Matrix::from_elems(self.field, self.n, self.n, r.clone())).collect()
    }

    pub fn contains(&self, m: &Matrix) -> bool {
        m.field() == self.field
            && m.rows() == self.n
            && m.cols() == self.n
            && self.ech.contains(&self.field, m.elems())
    }

    pub fn is_subspace_of(&self, other: &MatrixSubspace) -> bool {
        self.ech.rows.iter().all(|r| other.ech.contains(&other.field, r))
    }

    pub fn join(&self, other: &MatrixSubspace) -> Result<MatrixSubspace> {
        self.field.check_same(other.field)?;
        if self.n != other.n {
            return Err(Error::DimensionMismatch(format!("M_{} vs M_{}", self.n, other.n)));
        }
        let mut ech = self.ech.clone();
        for r in &other.ech.rows {
            ech.insert(&self.field, r.clone());
        }
        Ok(MatrixSubspace { ech, ..self.clone() })
    }

    /// Element `sum_k coeffs[k] * basis[k]`.
    pub fn combination(&self, coeffs: &[super::Scalar]) -> Result<Matrix> {
        if coeffs.len() != self.dim() {
            return Err(Error::DimensionMismatch(format!("{} coefficients for dimension {}", coeffs.len(), self.dim())));
        }
        let f = self.field;
        let mut acc = vec![f.zero_elem(); self.n * self.n];
        for (c, row) in coeffs.iter().zip(&self.ech.rows) {
            f.check_same(c.field())?;
            if c.is_zero() {
                continue;
            }
            for (a, r) in acc.iter_mut().zip(row) {
                *a = f.add(a, &f.mul(c.elem(), r));
            }
        }
        Ok(Matrix::from_elems(f, self.n, self.n, acc))
    }

    /// The vectors `B_k x` for each basis matrix `B_k`.
    pub(crate) fn images(&self, x: &[Elem]) -> Vec<Vec<Elem>> {
        let n = self.n;
        let f = self.field;
        self.ech
            .rows
            .iter()
            .map(|b| {
                (0..n)
                    .map(|i| {
                        let mut acc = f.zero_elem();
                        for (a, xj) in b[i * n..(i + 1) * n].iter().zip(x) {
                            if !f.is_zero(a) && !f.is_zero(xj) {
                                acc = f.add(&acc, &f.mul(a, xj));
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect()
    }

    /// `dim VX` without building the canonical subspace.
    pub(crate) fn apply_rank(&self, x: &[Elem]) -> usize {
        echelon::rank(&self.field, self.images(x), self.n)
    }
}

impl fmt::Display for MatrixSubspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "subspace of M_{}({}) of dimension {}", self.n, self.field, self.dim())?;
        for (i, m) in self.basis().iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            writeln!(f, "{m}")?;
        }
        Ok(())
    }
}

/// `VX = { M X : M in V }`.
pub fn space_apply(v: &MatrixSubspace, x: &Vector) -> Result<VectorSubspace> {
    v.field.check_same(x.field())?;
    if x.len() != v.n {
        return Err(Error::DimensionMismatch(format!("vector of length {} for M_{}", x.len(), v.n)));
    }
    let ech = echelon::rref(&v.field, v.images(x.elems()), v.n);
    Ok(VectorSubspace::from_echelon(v.field, v.n, ech))
}

/// `S V S^-1`.
pub fn conjugate(v: &MatrixSubspace, s: &Matrix) -> Result<MatrixSubspace> {
    v.field.check_same(s.field())?;
    if s.rows() != v.n || s.cols() != v.n {
        return Err(Error::DimensionMismatch(format!("{}x{} conjugator for M_{}", s.rows(), s.cols(), v.n)));
    }
    let s_inv = s.inverse()?;
    let gens: Vec<Matrix> = v.basis().iter().map(|b| &(s * b) * &s_inv).collect();
    MatrixSubspace::span(v.field, v.n, &gens)
}

/// `V^T = { M^T : M in V }`.
pub fn transpose_space(v: &MatrixSubspace) -> MatrixSubspace {
    let gens: Vec<Matrix> = v.basis().iter().map(Matrix::transpose).collect();
    MatrixSubspace::span(v.field, v.n, &gens).unwrap()
}

/// Left product `R V = { R M : M in V }`.
pub fn left_mul(r: &Matrix, v: &MatrixSubspace) -> Result<MatrixSubspace> {
    let gens = v.basis().iter().map(|b| r.try_mul(b)).collect::<Result<Vec<_>>>()?;
    MatrixSubspace::span(v.field, v.n, &gens)
}

/// Right product `V S = { M S : M in V }`.
pub fn right_mul(v: &MatrixSubspace, s: &Matrix) -> Result<MatrixSubspace> {
    let gens = v.basis().iter().map(|b| b.try_mul(s)).collect::<Result<Vec<_>>>()?;
    MatrixSubspace::span(v.field, v.n, &gens)
}

/// Smallest `V`-invariant subspace containing `x`.
pub fn invariant_closure(v: &MatrixSubspace, x: &Vector) -> Result<VectorSubspace> {
    v.field.check_same(x.field())?;
    if x.len() != v.n {
        return Err(Error::DimensionMismatch(format!("vector of length {} for M_{}", x.len(), v.n)));
    }
    if x.is_zero() {
        return Err(Error::ZeroVector);
    }
    let f = v.field;
    let mut ech = Echelon::empty();
    ech.insert(&f, x.elems().to_vec());
    // Each pass either grows the span or terminates, so at most n passes.
    loop {
        let before = ech.rank();
        let current = ech.rows.clone();
        for u in &current {
            for img in v.images(u) {
                ech.insert(&f, img);
            }
        }
        if ech.rank() == before {
            break;
        }
    }
    Ok(VectorSubspace::from_echelon(f, v.n, ech))
}

/// `offset + translation`, with `offset` reduced to the canonical coset
/// representative (zero in every pivot coordinate of the translation basis).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineSpace {
    offset: Matrix,
    translation: MatrixSubspace,
}

impl AffineSpace {
    pub fn new(offset: Matrix, translation: MatrixSubspace) -> Result<Self> {
        translation.field.check_same(offset.field())?;
        if offset.rows() != translation.n || offset.cols() != translation.n {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} offset for M_{}",
                offset.rows(),
                offset.cols(),
                translation.n
            )));
        }
        let mut data = offset.elems().to_vec();
        translation.ech.reduce(&translation.field, &mut data);
        let n = translation.n;
        Ok(AffineSpace { offset: Matrix::from_elems(translation.field, n, n, data), translation })
    }

    pub fn field(&self) -> FieldDesc {
        self.translation.field
    }

    pub fn n(&self) -> usize {
        self.translation.n
    }

    pub fn dim(&self) -> usize {
        self.translation.dim()
    }

    pub fn offset(&self) -> &Matrix {
        &self.offset
    }

    pub fn translation(&self) -> &MatrixSubspace {
        &self.translation
    }

    pub fn contains(&self, m: &Matrix) -> bool {
        match m.try_sub(&self.offset) {
            Ok(d) => self.translation.contains(&d),
            Err(_) => false,
        }
    }

    /// Element `offset + sum_k coeffs[k] * basis[k]`.
    pub fn element(&self, coeffs: &[super::Scalar]) -> Result<Matrix> {
        Ok(&self.offset + &self.translation.combination(coeffs)?)
    }

    /// `R A = { R M : M in A }`.
    pub fn left_mul(&self, r: &Matrix) -> Result<AffineSpace> {
        AffineSpace::new(r.try_mul(&self.offset)?, left_mul(r, &self.translation)?)
    }

    /// `A S = { M S : M in A }`.
    pub fn right_mul(&self, s: &Matrix) -> Result<AffineSpace> {
        AffineSpace::new(self.offset.try_mul(s)?, right_mul(&self.translation, s)?)
    }
}

impl fmt::Display for AffineSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "offset")?;
        writeln!(f, "{}", self.offset)?;
        write!(f, "+ {}", self.translation)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> FieldDesc {
        FieldDesc::prime(3).unwrap()
    }

    fn nt(field: FieldDesc, n: usize) -> MatrixSubspace {
        let gens: Vec<Matrix> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| Matrix::unit(field, n, i, j))
            .collect();
        MatrixSubspace::span(field, n, &gens).unwrap()
    }

    #[test]
    fn echelonize_examples() {
        let k = f3();
        let s = echelonize(k, 3, &[Vector::from_i64(k, &[1, 1, 0]), Vector::from_i64(k, &[0, 1, 1])]).unwrap();
        assert_eq!(s.basis(), vec![Vector::from_i64(k, &[1, 0, 2]), Vector::from_i64(k, &[0, 1, 1])]);
        assert_eq!(echelonize(k, 3, &[]).unwrap().dim(), 0);
        let s = echelonize(k, 2, &[Vector::from_i64(k, &[2, 0]), Vector::from_i64(k, &[1, 0])]).unwrap();
        assert_eq!(s.basis(), vec![Vector::from_i64(k, &[1, 0])]);
    }

    #[test]
    fn echelonize_rejects_mixed_inputs() {
        let k = f3();
        let f5 = FieldDesc::prime(5).unwrap();
        assert!(matches!(
            echelonize(k, 2, &[Vector::from_i64(k, &[1, 0]), Vector::from_i64(f5, &[1, 0])]),
            Err(Error::MixedFields(..))
        ));
        assert!(matches!(echelonize(k, 2, &[Vector::from_i64(k, &[1, 0, 0])]), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn space_apply_nt3() {
        let k = f3();
        let v = nt(k, 3);
        let img = space_apply(&v, &Vector::unit(k, 3, 2)).unwrap();
        assert_eq!(img, VectorSubspace::span(k, 3, &[Vector::unit(k, 3, 0), Vector::unit(k, 3, 1)]).unwrap());
        assert_eq!(space_apply(&v, &Vector::zeros(k, 3)).unwrap().dim(), 0);
        assert!(matches!(space_apply(&v, &Vector::zeros(k, 2)), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn conjugate_nt2_by_swap_is_lower() {
        let k = f3();
        let swap = Matrix::from_i64(k, &[[0, 1], [1, 0]]);
        let lower = MatrixSubspace::span(k, 2, &[Matrix::unit(k, 2, 1, 0)]).unwrap();
        assert_eq!(conjugate(&nt(k, 2), &swap).unwrap(), lower);
        assert_eq!(transpose_space(&nt(k, 2)), lower);
        let singular = Matrix::from_i64(k, &[[1, 1], [1, 1]]);
        assert_eq!(conjugate(&nt(k, 2), &singular), Err(Error::SingularMatrix));
    }

    #[test]
    fn closure_examples() {
        let k = f3();
        let v = nt(k, 3);
        assert_eq!(invariant_closure(&v, &Vector::unit(k, 3, 0)).unwrap().dim(), 1);
        assert!(invariant_closure(&v, &Vector::unit(k, 3, 2)).unwrap().is_full());
        assert_eq!(invariant_closure(&v, &Vector::zeros(k, 3)), Err(Error::ZeroVector));
    }

    #[test]
    fn affine_offset_is_reduced() {
        let k = f3();
        let a = AffineSpace::new(Matrix::from_i64(k, &[[1, 2], [0, 1]]), nt(k, 2)).unwrap();
        assert_eq!(a.offset(), &Matrix::identity(k, 2));
        assert!(a.contains(&Matrix::from_i64(k, &[[1, 1], [0, 1]])));
        assert!(!a.contains(&Matrix::from_i64(k, &[[1, 1], [1, 1]])));
    }

    #[test]
    fn orthogonal_of_line() {
        let k = f3();
        let line = VectorSubspace::span(k, 3, &[Vector::from_i64(k, &[1, 1, 1])]).unwrap();
        let perp = line.orthogonal();
        assert_eq!(perp.dim(), 2);
        for b in perp.basis() {
            assert!(b.dot(&Vector::from_i64(k, &[1, 1, 1])).is_zero());
        }
    }
}
