//! Seeded random generation of matrices for sampling-based checks.
//!
//! All randomness goes through SplitMix64 (a 64-bit multiply-xor-shift
//! generator) seeded explicitly, so every sampled input is replayable from
//! its seed.

use rand::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::enumerate::EnumOptions;
use crate::error::Result;
use crate::linalg::{Elem, FieldDesc, Matrix, MatrixSubspace, Scalar};
use crate::quadform::is_isotropic;

pub type SeededRng = SplitMix64;

pub fn seeded(seed: u64) -> SeededRng {
    SplitMix64::seed_from_u64(seed)
}

/// Uniform element of `F_p`. Panics over the rationals.
pub fn random_scalar(field: FieldDesc, rng: &mut SeededRng) -> Scalar {
    let p = field.require_finite().expect("sampling needs a finite field");
    field.from_i64(rng.gen_range(0..p) as i64)
}

pub fn random_matrix(field: FieldDesc, rows: usize, cols: usize, rng: &mut SeededRng) -> Matrix {
    let p = field.require_finite().expect("sampling needs a finite field");
    let data = (0..rows * cols).map(|_| Elem::Mod(rng.gen_range(0..p))).collect();
    Matrix::from_elems(field, rows, cols, data)
}

/// Rejection sampling on `det != 0`; not uniform over `GL_n` in any sense
/// that matters here, only covering.
pub fn random_invertible(field: FieldDesc, n: usize, rng: &mut SeededRng) -> Matrix {
    loop {
        let m = random_matrix(field, n, n, rng);
        if m.is_invertible() {
            return m;
        }
    }
}

/// Random invertible non-isotropic `m x m` matrix, by rejection.
pub fn random_non_isotropic(field: FieldDesc, m: usize, rng: &mut SeededRng) -> Result<Matrix> {
    loop {
        let p = random_invertible(field, m, rng);
        if !is_isotropic(&p, &EnumOptions::default())? {
            return Ok(p);
        }
    }
}

/// Uniform element of a finite-field matrix subspace.
pub fn random_element(space: &MatrixSubspace, rng: &mut SeededRng) -> Matrix {
    let coeffs: Vec<Scalar> = (0..space.dim()).map(|_| random_scalar(space.field(), rng)).collect();
    space.combination(&coeffs).expect("coefficient count")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_stream() {
        let f = FieldDesc::prime(7).unwrap();
        let a: Vec<Matrix> = {
            let mut rng = seeded(42);
            (0..5).map(|_| random_invertible(f, 3, &mut rng)).collect()
        };
        let b: Vec<Matrix> = {
            let mut rng = seeded(42);
            (0..5).map(|_| random_invertible(f, 3, &mut rng)).collect()
        };
        assert_eq!(a, b);
        assert!(a.iter().all(Matrix::is_invertible));
    }

    #[test]
    fn non_isotropic_samples() {
        let f = FieldDesc::prime(5).unwrap();
        let mut rng = seeded(1);
        for _ in 0..10 {
            let p = random_non_isotropic(f, 2, &mut rng).unwrap();
            assert!(!is_isotropic(&p, &EnumOptions::default()).unwrap());
        }
    }
}
