//! Exact scalar arithmetic and canonical linear algebra over `F_p` and `Q`.

mod echelon;
mod field;
mod matrix;
mod subspace;

pub(crate) use echelon::{nullspace, solve, Echelon};
pub(crate) use field::Elem;
pub use field::{FieldDesc, Scalar};
pub use matrix::{Matrix, Vector};
pub use subspace::{
    conjugate, echelonize, invariant_closure, left_mul, right_mul, space_apply, transpose_space, AffineSpace,
    MatrixSubspace, VectorSubspace,
};

/// Binomial coefficient `n choose 2`.
pub fn choose2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}
