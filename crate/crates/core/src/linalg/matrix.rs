use std::fmt;
use std::ops::{Add, Mul, Sub};

use super::echelon;
use super::field::{Elem, FieldDesc, Scalar};
use crate::error::{Error, Result};

/// Column vector over an exact field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vector {
    field: FieldDesc,
    data: Vec<Elem>,
}

impl Vector {
    pub(crate) fn from_elems(field: FieldDesc, data: Vec<Elem>) -> Self {
        Vector { field, data }
    }

    pub(crate) fn elems(&self) -> &[Elem] {
        &self.data
    }

    pub fn zeros(field: FieldDesc, n: usize) -> Self {
        Vector { field, data: vec![field.zero_elem(); n] }
    }

    /// The `i`-th standard basis vector (0-based).
    pub fn unit(field: FieldDesc, n: usize, i: usize) -> Self {
        let mut v = Self::zeros(field, n);
        v.data[i] = field.one_elem();
        v
    }

    pub fn from_i64(field: FieldDesc, xs: &[i64]) -> Self {
        Vector { field, data: xs.iter().map(|&x| field.elem_i64(x)).collect() }
    }

    pub fn from_scalars(field: FieldDesc, xs: &[Scalar]) -> Result<Self> {
        let mut data = Vec::with_capacity(xs.len());
        for x in xs {
            field.check_same(x.field())?;
            data.push(x.elem().clone());
        }
        Ok(Vector { field, data })
    }

    pub fn field(&self) -> FieldDesc {
        self.field
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn get(&self, i: usize) -> Scalar {
        self.field.scalar(self.data[i].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    /// Standard bilinear pairing `x^T y`.
    pub fn dot(&self, other: &Vector) -> Scalar {
        assert_eq!(self.len(), other.len(), "dot: length mismatch");
        let f = self.field;
        let mut acc = f.zero_elem();
        for (a, b) in self.data.iter().zip(&other.data) {
            acc = f.add(&acc, &f.mul(a, b));
        }
        f.scalar(acc)
    }

    pub fn scale(&self, c: &Scalar) -> Vector {
        let f = self.field;
        Vector { field: f, data: self.data.iter().map(|x| f.mul(x, c.elem())).collect() }
    }

    pub fn try_add(&self, other: &Vector) -> Result<Vector> {
        self.field.check_same(other.field)?;
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch(format!("vector lengths {} and {}", self.len(), other.len())));
        }
        let f = self.field;
        Ok(Vector { field: f, data: self.data.iter().zip(&other.data).map(|(a, b)| f.add(a, b)).collect() })
    }

    pub fn to_scalars(&self) -> Vec<Scalar> {
        self.data.iter().map(|x| self.field.scalar(x.clone())).collect()
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.to_scalars().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Dense row-major matrix over an exact field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: FieldDesc,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl Matrix {
    pub(crate) fn from_elems(field: FieldDesc, rows: usize, cols: usize, data: Vec<Elem>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        Matrix { field, rows, cols, data }
    }

    pub(crate) fn elems(&self) -> &[Elem] {
        &self.data
    }

    #[inline]
    pub(crate) fn at(&self, i: usize, j: usize) -> &Elem {
        &self.data[i * self.cols + j]
    }

    pub fn zeros(field: FieldDesc, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![field.zero_elem(); rows * cols] }
    }

    pub fn identity(field: FieldDesc, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one_elem();
        }
        m
    }

    /// Matrix unit `E_ij` (0-based).
    pub fn unit(field: FieldDesc, n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        m.data[i * n + j] = field.one_elem();
        m
    }

    /// Builds a matrix from integer rows, reducing into the field.
    ///
    /// Panics if the rows are ragged.
    pub fn from_i64<R: AsRef<[i64]>>(field: FieldDesc, rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.iter().map(|&x| field.elem_i64(x)));
        }
        Matrix { field, rows: rows.len(), cols, data }
    }

    pub fn from_scalars(field: FieldDesc, rows: usize, cols: usize, entries: &[Scalar]) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        let mut data = Vec::with_capacity(entries.len());
        for e in entries {
            field.check_same(e.field())?;
            data.push(e.elem().clone());
        }
        Ok(Matrix { field, rows, cols, data })
    }

    pub fn diagonal(field: FieldDesc, diag: &[i64]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(field, n, n);
        for (i, &d) in diag.iter().enumerate() {
            m.data[i * n + i] = field.elem_i64(d);
        }
        m
    }

    /// Inverse of [`Matrix::vectorize`].
    pub fn from_vector(v: &Vector, rows: usize, cols: usize) -> Result<Self> {
        if v.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!("vector of length {} is not {rows}x{cols}", v.len())));
        }
        Ok(Matrix { field: v.field(), rows, cols, data: v.elems().to_vec() })
    }

    pub fn field(&self) -> FieldDesc {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.field.scalar(self.at(i, j).clone())
    }

    pub fn set(&mut self, i: usize, j: usize, value: &Scalar) -> Result<()> {
        self.field.check_same(value.field())?;
        self.data[i * self.cols + j] = value.elem().clone();
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    /// Row-major vectorization in `K^(rows*cols)`.
    pub fn vectorize(&self) -> Vector {
        Vector::from_elems(self.field, self.data.clone())
    }

    pub fn row(&self, i: usize) -> Vector {
        Vector::from_elems(self.field, self.data[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    pub fn column(&self, j: usize) -> Vector {
        Vector::from_elems(self.field, (0..self.rows).map(|i| self.at(i, j).clone()).collect())
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: FieldDesc, cols: &[Vector]) -> Result<Self> {
        let rows = cols.first().map_or(0, |c| c.len());
        let mut m = Self::zeros(field, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            field.check_same(c.field())?;
            if c.len() != rows {
                return Err(Error::DimensionMismatch("columns of unequal length".into()));
            }
            for i in 0..rows {
                m.data[i * cols.len() + j] = c.elems()[i].clone();
            }
        }
        Ok(m)
    }

    pub fn transpose(&self) -> Matrix {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.at(i, j).clone());
            }
        }
        Matrix { field: self.field, rows: self.cols, cols: self.rows, data }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        assert_eq!(self.field, c.field(), "scale: field mismatch");
        let f = self.field;
        Matrix { data: self.data.iter().map(|x| f.mul(x, c.elem())).collect(), ..self.clone() }
    }

    pub fn neg(&self) -> Matrix {
        let f = self.field;
        Matrix { data: self.data.iter().map(|x| f.neg(x)).collect(), ..self.clone() }
    }

    fn check_same_shape(&self, other: &Matrix) -> Result<()> {
        self.field.check_same(other.field)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other)?;
        let f = self.field;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f.add(a, b)).collect();
        Ok(Matrix { data, ..self.clone() })
    }

    pub fn try_sub(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other)?;
        let f = self.field;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f.sub(a, b)).collect();
        Ok(Matrix { data, ..self.clone() })
    }

    pub fn try_mul(&self, other: &Matrix) -> Result<Matrix> {
        self.field.check_same(other.field)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = self.field;
        let mut data = vec![f.zero_elem(); self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if !f.is_zero(b) {
                        let slot = &mut data[i * other.cols + j];
                        *slot = f.add(slot, &f.mul(a, b));
                    }
                }
            }
        }
        Ok(Matrix { field: f, rows: self.rows, cols: other.cols, data })
    }

    pub fn try_mul_vec(&self, x: &Vector) -> Result<Vector> {
        self.field.check_same(x.field())?;
        if self.cols != x.len() {
            return Err(Error::DimensionMismatch(format!(
                "cannot apply {}x{} matrix to vector of length {}",
                self.rows,
                self.cols,
                x.len()
            )));
        }
        Ok(Vector::from_elems(self.field, self.apply_elems(x.elems())))
    }

    #[inline]
    pub(crate) fn apply_elems(&self, x: &[Elem]) -> Vec<Elem> {
        let f = self.field;
        (0..self.rows)
            .map(|i| {
                let mut acc = f.zero_elem();
                for (a, b) in self.data[i * self.cols..(i + 1) * self.cols].iter().zip(x) {
                    if !f.is_zero(a) && !f.is_zero(b) {
                        acc = f.add(&acc, &f.mul(a, b));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn pow(&self, e: u32) -> Matrix {
        assert!(self.is_square(), "pow of a non-square matrix");
        let mut acc = Matrix::identity(self.field, self.rows);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    fn row_vecs(&self) -> Vec<Vec<Elem>> {
        self.data.chunks(self.cols.max(1)).map(|r| r.to_vec()).collect()
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        echelon::rank(&self.field, self.row_vecs(), self.cols)
    }

    /// Determinant by Gaussian elimination.
    pub fn det(&self) -> Scalar {
        assert!(self.is_square(), "det of a non-square matrix");
        let f = self.field;
        let n = self.rows;
        let mut a = self.row_vecs();
        let mut det = f.one_elem();
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !f.is_zero(&a[r][col])) else {
                return f.zero();
            };
            if piv != col {
                a.swap(piv, col);
                det = f.neg(&det);
            }
            det = f.mul(&det, &a[col][col]);
            let inv = f.inv(&a[col][col]).unwrap();
            for r in col + 1..n {
                if f.is_zero(&a[r][col]) {
                    continue;
                }
                let c = f.mul(&a[r][col], &inv);
                for k in col..n {
                    let sub = a[col][k].clone();
                    a[r][k] = f.sub_mul(&a[r][k], &c, &sub);
                }
            }
        }
        f.scalar(det)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!("{}x{} is not square", self.rows, self.cols)));
        }
        let f = self.field;
        let n = self.rows;
        let rows: Vec<Vec<Elem>> = (0..n)
            .map(|i| {
                let mut r = self.data[i * n..(i + 1) * n].to_vec();
                r.extend((0..n).map(|j| if i == j { f.one_elem() } else { f.zero_elem() }));
                r
            })
            .collect();
        let ech = echelon::rref(&f, rows, 2 * n);
        if ech.rank() < n || ech.pivots[n - 1] != n - 1 {
            return Err(Error::SingularMatrix);
        }
        let data = ech.rows.into_iter().flat_map(|r| r.into_iter().skip(n)).collect();
        Ok(Matrix { field: f, rows: n, cols: n, data })
    }

    /// `X^T A X = 0` for every `X`: zero diagonal and `A^T = -A`.
    pub fn is_alternate(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        let f = self.field;
        (0..self.rows).all(|i| {
            f.is_zero(self.at(i, i))
                && (i + 1..self.rows).all(|j| f.is_zero(&f.add(self.at(i, j), self.at(j, i))))
        })
    }

    pub fn is_nilpotent(&self) -> bool {
        self.is_square() && self.pow(self.rows as u32).is_zero()
    }

    /// `x^T A y`.
    pub fn bilinear(&self, x: &Vector, y: &Vector) -> Scalar {
        let ay = Vector::from_elems(self.field, self.apply_elems(y.elems()));
        x.dot(&ay)
    }

    /// Submatrix of `rows x cols` starting at `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in r0..r0 + rows {
            data.extend_from_slice(&self.data[i * self.cols + c0..i * self.cols + c0 + cols]);
        }
        Matrix { field: self.field, rows, cols, data }
    }

    /// Copies `m` into `self` at `(r0, c0)`.
    pub fn put_block(&mut self, r0: usize, c0: usize, m: &Matrix) {
        for i in 0..m.rows {
            for j in 0..m.cols {
                self.data[(r0 + i) * self.cols + c0 + j] = m.at(i, j).clone();
            }
        }
    }

    /// First nonzero entry in row-major order.
    pub fn leading_entry(&self) -> Option<Scalar> {
        self.data.iter().find(|x| !self.field.is_zero(x)).map(|x| self.field.scalar(x.clone()))
    }

    /// Scales so the first nonzero row-major entry is one.
    pub fn normalized(&self) -> Matrix {
        match self.leading_entry() {
            Some(lead) => self.scale(&lead.inv().unwrap()),
            None => self.clone(),
        }
    }

    pub fn to_scalar_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j)).collect()).collect()
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> =
            self.to_scalar_rows().iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect();
        let width = cells.iter().flatten().map(|s| s.len()).max().unwrap_or(1);
        for (i, row) in cells.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let line: Vec<String> = row.iter().map(|s| format!("{s:>width$}")).collect();
            write!(f, "[{}]", line.join(" "))?;
        }
        Ok(())
    }
}

impl Mul for &Matrix {
    type Output = Matrix;

    fn mul(self, rhs: &Matrix) -> Matrix {
        self.try_mul(rhs).expect("matrix product")
    }
}

impl Add for &Matrix {
    type Output = Matrix;

    fn add(self, rhs: &Matrix) -> Matrix {
        self.try_add(rhs).expect("matrix sum")
    }
}

impl Sub for &Matrix {
    type Output = Matrix;

    fn sub(self, rhs: &Matrix) -> Matrix {
        self.try_sub(rhs).expect("matrix difference")
    }
}

impl Mul<&Vector> for &Matrix {
    type Output = Vector;

    fn mul(self, rhs: &Vector) -> Vector {
        self.try_mul_vec(rhs).expect("matrix-vector product")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> FieldDesc {
        FieldDesc::prime(3).unwrap()
    }

    #[test]
    fn inverse_roundtrip_mod3() {
        let k = f3();
        let a = Matrix::from_i64(k, &[[1, 2, 0], [0, 1, 1], [2, 0, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(&a * &inv, Matrix::identity(k, 3));
        assert_eq!(a.det().try_mul(&inv.det()).unwrap(), k.one());
    }

    #[test]
    fn singular_inverse_rejected() {
        let k = f3();
        let a = Matrix::from_i64(k, &[[1, 2], [2, 1]]);
        assert!(a.det().is_zero());
        assert_eq!(a.inverse(), Err(Error::SingularMatrix));
        assert!(!a.is_invertible());
    }

    #[test]
    fn det_over_rationals() {
        let q = FieldDesc::rational();
        let a = Matrix::from_i64(q, &[[2, 3], [1, 4]]);
        assert_eq!(a.det(), q.from_i64(5));
        let inv = a.inverse().unwrap();
        assert_eq!(inv.get(0, 0).to_string(), "4/5");
    }

    #[test]
    fn alternate_needs_zero_diagonal_in_char2() {
        let f2 = FieldDesc::prime(2).unwrap();
        let sym = Matrix::from_i64(f2, &[[1, 1], [1, 0]]);
        assert!(!sym.is_alternate());
        assert!(Matrix::from_i64(f2, &[[0, 1], [1, 0]]).is_alternate());
    }

    #[test]
    fn mixed_fields_rejected() {
        let a = Matrix::identity(f3(), 2);
        let b = Matrix::identity(FieldDesc::prime(5).unwrap(), 2);
        assert!(matches!(a.try_mul(&b), Err(Error::MixedFields(..))));
    }
}
