//! Construction, testing and classification of linear spaces of matrices
//! with trivial spectrum, and of affine spaces of invertible matrices, over
//! exact fields.

pub mod classify;
pub mod construct;
pub mod enumerate;
pub mod error;
pub mod linalg;
pub mod quadform;
pub mod sample;
pub mod spectrum;
pub mod verify;

pub use error::{Error, Result};
pub use linalg::{FieldDesc, Matrix, MatrixSubspace, Scalar, Vector, VectorSubspace, AffineSpace};
