//! Builders for the model spaces: `Alt_n`, `NT_n`, `P.Alt_n`, the block
//! composition `V v W`, companion lines and the affine models `I_n + V`.

use crate::error::{Error, Result};
use crate::linalg::{choose2, AffineSpace, FieldDesc, Matrix, MatrixSubspace, Scalar};

/// One diagonal block `P_k . Alt_{n_k}` of a model space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Block {
    size: usize,
    gram: Matrix,
}

impl Block {
    pub fn new(gram: Matrix) -> Result<Self> {
        if !gram.is_square() || gram.rows() == 0 {
            return Err(Error::InvalidBlock(format!("gram must be square and nonempty, got {}x{}", gram.rows(), gram.cols())));
        }
        if !gram.is_invertible() {
            return Err(Error::InvalidBlock("gram matrix is singular".into()));
        }
        Ok(Block { size: gram.rows(), gram })
    }

    /// Size-1 block; `Alt_1 = {0}` carries no gram information so it is fixed to `[1]`.
    pub fn trivial(field: FieldDesc) -> Self {
        Block { size: 1, gram: Matrix::identity(field, 1) }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }
}

/// Ordered list of blocks describing `P_1 Alt_{n_1} v ... v P_p Alt_{n_p}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VeeSpec {
    blocks: Vec<Block>,
}

impl VeeSpec {
    pub fn new(blocks: Vec<Block>) -> Result<Self> {
        let Some(first) = blocks.first() else {
            return Err(Error::InvalidBlock("a model needs at least one block".into()));
        };
        let field = first.gram.field();
        for b in &blocks {
            field.check_same(b.gram.field())?;
        }
        Ok(VeeSpec { blocks })
    }

    /// Model with every block of size one, i.e. `NT_n`.
    pub fn all_trivial(field: FieldDesc, n: usize) -> Result<Self> {
        Self::new((0..n).map(|_| Block::trivial(field)).collect())
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Block::size).collect()
    }

    pub fn n(&self) -> usize {
        self.blocks.iter().map(Block::size).sum()
    }

    pub fn field(&self) -> FieldDesc {
        self.blocks[0].gram.field()
    }
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
}

/// `E_ij - E_ji` for `i < j` in lexicographic order.
pub fn alt_basis(n: usize, field: FieldDesc) -> Vec<Matrix> {
    pairs(n)
        .map(|(i, j)| {
            let mut m = Matrix::unit(field, n, i, j);
            m.set(j, i, &field.from_i64(-1)).unwrap();
            m
        })
        .collect()
}

/// Alternate matrices of `M_n(K)`.
pub fn alt_space(n: usize, field: FieldDesc) -> MatrixSubspace {
    MatrixSubspace::span(field, n, &alt_basis(n, field)).unwrap()
}

/// Strictly upper triangular matrices of `M_n(K)`.
pub fn nt_space(n: usize, field: FieldDesc) -> MatrixSubspace {
    let gens: Vec<Matrix> = pairs(n).map(|(i, j)| Matrix::unit(field, n, i, j)).collect();
    MatrixSubspace::span(field, n, &gens).unwrap()
}

/// `P . Alt_n`. Isotropic `P` is allowed; only invertibility is required.
pub fn p_alt(p: &Matrix) -> Result<MatrixSubspace> {
    if !p.is_square() {
        return Err(Error::DimensionMismatch(format!("{}x{} gram", p.rows(), p.cols())));
    }
    if !p.is_invertible() {
        return Err(Error::SingularMatrix);
    }
    let n = p.rows();
    let gens: Vec<Matrix> = alt_basis(n, p.field()).iter().map(|a| p * a).collect();
    MatrixSubspace::span(p.field(), n, &gens)
}

/// Block upper triangular composition `[[A, B], [0, C]]` with `A in V`,
/// `C in W` and `B` arbitrary.
pub fn vee(v: &MatrixSubspace, w: &MatrixSubspace) -> Result<MatrixSubspace> {
    v.field().check_same(w.field())?;
    let field = v.field();
    let (n, p) = (v.n(), w.n());
    let size = n + p;
    let mut gens = Vec::with_capacity(v.dim() + w.dim() + n * p);
    for a in v.basis() {
        let mut m = Matrix::zeros(field, size, size);
        m.put_block(0, 0, &a);
        gens.push(m);
    }
    for c in w.basis() {
        let mut m = Matrix::zeros(field, size, size);
        m.put_block(n, n, &c);
        gens.push(m);
    }
    for i in 0..n {
        for j in 0..p {
            gens.push(Matrix::unit(field, size, i, n + j));
        }
    }
    MatrixSubspace::span(field, size, &gens)
}

/// `P_1 Alt_{n_1} v ... v P_p Alt_{n_p}`, of dimension `n(n-1)/2`.
pub fn model_space(spec: &VeeSpec) -> Result<MatrixSubspace> {
    let mut blocks = spec.blocks.iter();
    let first = blocks.next().expect("VeeSpec is nonempty");
    let mut acc = p_alt(&first.gram)?;
    for b in blocks {
        acc = vee(&acc, &p_alt(&b.gram)?)?;
    }
    debug_assert_eq!(acc.dim(), choose2(spec.n()));
    Ok(acc)
}

/// The line spanned by the companion matrix `[[0, b], [1, a]]` of `t^2 - a t - b`.
pub fn companion_line(a: &Scalar, b: &Scalar) -> Result<MatrixSubspace> {
    let field = a.field();
    field.check_same(b.field())?;
    let m = Matrix::from_scalars(field, 2, 2, &[field.zero(), b.clone(), field.one(), a.clone()])?;
    MatrixSubspace::span(field, 2, &[m])
}

/// `I_n + model_space(spec)`.
pub fn affine_model(spec: &VeeSpec) -> Result<AffineSpace> {
    AffineSpace::new(Matrix::identity(spec.field(), spec.n()), model_space(spec)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> FieldDesc {
        FieldDesc::prime(p).unwrap()
    }

    #[test]
    fn alt_dimensions() {
        let k = f(3);
        let a2 = alt_space(2, k);
        assert_eq!(a2.basis(), vec![Matrix::from_i64(k, &[[0, 1], [-1, 0]])]);
        assert_eq!(alt_space(3, f(5)).dim(), 3);
        assert_eq!(alt_space(1, k).dim(), 0);
    }

    #[test]
    fn alt_basis_is_already_canonical() {
        let k = f(7);
        assert_eq!(alt_space(4, k).basis(), alt_basis(4, k));
    }

    #[test]
    fn alt_in_char2_has_zero_diagonal() {
        let k = f(2);
        for m in alt_space(3, k).basis() {
            assert!(m.is_alternate());
        }
    }

    #[test]
    fn nt_dimensions() {
        let k = f(3);
        assert_eq!(nt_space(2, k).basis(), vec![Matrix::unit(k, 2, 0, 1)]);
        assert_eq!(nt_space(4, k).dim(), 6);
    }

    #[test]
    fn p_alt_examples() {
        let k = f(3);
        assert_eq!(p_alt(&Matrix::identity(k, 3)).unwrap(), alt_space(3, k));
        let d = Matrix::diagonal(k, &[1, 2]);
        let expected = MatrixSubspace::span(k, 2, &[Matrix::from_i64(k, &[[0, 1], [-2, 0]])]).unwrap();
        assert_eq!(p_alt(&d).unwrap(), expected);
        assert_eq!(p_alt(&Matrix::from_i64(k, &[[1, 1], [1, 1]])), Err(Error::SingularMatrix));
    }

    #[test]
    fn vee_examples() {
        let k = f(3);
        assert_eq!(vee(&alt_space(2, k), &alt_space(2, k)).unwrap().dim(), 6);
        let z = MatrixSubspace::zero(k, 1);
        assert_eq!(vee(&z, &z).unwrap(), nt_space(2, k));
        let a = alt_space(2, k);
        let b = nt_space(1, k);
        let c = p_alt(&Matrix::diagonal(k, &[1, 2])).unwrap();
        assert_eq!(
            vee(&vee(&a, &b).unwrap(), &c).unwrap(),
            vee(&a, &vee(&b, &c).unwrap()).unwrap()
        );
        assert!(matches!(vee(&a, &alt_space(2, f(5))), Err(Error::MixedFields(..))));
    }

    #[test]
    fn model_space_examples() {
        let k = f(3);
        assert_eq!(model_space(&VeeSpec::all_trivial(k, 3).unwrap()).unwrap(), nt_space(3, k));
        let p = Matrix::from_i64(k, &[[1, 0], [0, 1]]);
        let single = VeeSpec::new(vec![Block::new(p.clone()).unwrap()]).unwrap();
        assert_eq!(model_space(&single).unwrap(), p_alt(&p).unwrap());
        let mixed = VeeSpec::new(vec![Block::trivial(k), Block::new(p).unwrap()]).unwrap();
        assert_eq!(model_space(&mixed).unwrap().dim(), 3);
    }

    #[test]
    fn invalid_blocks_rejected() {
        let k = f(3);
        assert!(Block::new(Matrix::from_i64(k, &[[1, 2], [2, 1]])).is_err());
        assert!(Block::new(Matrix::zeros(k, 2, 3)).is_err());
        assert!(VeeSpec::new(vec![]).is_err());
        let mixed = VeeSpec::new(vec![Block::trivial(k), Block::trivial(f(5))]);
        assert!(matches!(mixed, Err(Error::MixedFields(..))));
    }

    #[test]
    fn affine_model_offsets() {
        let k = f(3);
        let a = affine_model(&VeeSpec::all_trivial(k, 1).unwrap()).unwrap();
        assert_eq!(a.dim(), 0);
        assert_eq!(a.offset(), &Matrix::identity(k, 1));
        // all 27 elements of I_3 + NT_3 have determinant one
        let a = affine_model(&VeeSpec::all_trivial(k, 3).unwrap()).unwrap();
        let mut count = 0;
        for x in 0..3 {
            for y in 0..3 {
                for z in 0..3 {
                    let m = a.element(&[k.from_i64(x), k.from_i64(y), k.from_i64(z)]).unwrap();
                    assert_eq!(m.det(), k.one());
                    count += 1;
                }
            }
        }
        assert_eq!(count, 27);
    }

    #[test]
    fn companion_line_shape() {
        let k = f(3);
        let l = companion_line(&k.from_i64(1), &k.from_i64(1)).unwrap();
        assert_eq!(l.basis(), vec![Matrix::from_i64(k, &[[0, 1], [1, 1]]).normalized()]);
        let nil = companion_line(&k.zero(), &k.zero()).unwrap();
        assert_eq!(nil.basis(), vec![Matrix::unit(k, 2, 1, 0)]);
    }
}
