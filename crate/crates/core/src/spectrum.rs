//! Decision procedures for the spectral predicates over finite fields.
//!
//! A subspace `V` has a trivial spectrum when no `M in V` fixes a nonzero
//! vector. Since `V` is closed under scaling, `M X = c X` with `c != 0` gives
//! `(M / c) X = X`, so testing `X in VX` over projective representatives
//! covers every nonzero eigenvalue.

use crate::enumerate::{self, EnumOptions};
use crate::error::Result;
use crate::linalg::{choose2, invariant_closure, Matrix, MatrixSubspace, Scalar, Vector};

/// A nonzero `X` and an `M in V` with `M X = X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub vector: Vector,
    pub matrix: Matrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumReport {
    pub trivial_spectrum: bool,
    pub witness: Option<Witness>,
    pub totally_intransitive: bool,
    pub maximal: bool,
    /// Only computed for maximal spaces.
    pub irreducible: Option<bool>,
}

/// Smallest-index fixed vector of some matrix of `V`, if any.
pub fn find_fixed_vector(v: &MatrixSubspace, opts: &EnumOptions) -> Result<Option<Witness>> {
    let field = v.field();
    let n = v.n();
    let found = enumerate::find_first(field, n, opts, |x| {
        let cols = v.images(x);
        crate::linalg::solve(&field, &cols, x).map(|coeffs| (x.to_vec(), coeffs))
    })?;
    Ok(found.map(|(x, coeffs)| {
        let coeffs: Vec<Scalar> = coeffs.into_iter().map(|c| field.scalar(c)).collect();
        Witness { vector: Vector::from_elems(field, x), matrix: v.combination(&coeffs).expect("coefficient count") }
    }))
}

pub fn has_trivial_spectrum(v: &MatrixSubspace, opts: &EnumOptions) -> Result<bool> {
    Ok(find_fixed_vector(v, opts)?.is_none())
}

/// `dim VX < n` for every `X`.
pub fn is_totally_intransitive(v: &MatrixSubspace, opts: &EnumOptions) -> Result<bool> {
    let n = v.n();
    let hit = enumerate::find_first(v.field(), n, opts, |x| (v.apply_rank(x) == n).then_some(()))?;
    Ok(hit.is_none())
}

/// Trivial spectrum and dimension `n(n-1)/2`.
pub fn is_maximal_trivial(v: &MatrixSubspace, opts: &EnumOptions) -> Result<bool> {
    v.field().require_finite()?;
    if v.dim() != choose2(v.n()) {
        return Ok(false);
    }
    has_trivial_spectrum(v, opts)
}

/// `V` stabilizes no subspace other than `{0}` and `K^n`.
///
/// Every proper invariant subspace contains the invariant closure of each of
/// its nonzero vectors, so it suffices that every closure is all of `K^n`.
pub fn is_irreducible(v: &MatrixSubspace, opts: &EnumOptions) -> Result<bool> {
    let field = v.field();
    let n = v.n();
    let hit = enumerate::find_first(field, n, opts, |x| {
        let closure = invariant_closure(v, &Vector::from_elems(field, x.to_vec())).expect("nonzero point");
        (!closure.is_full()).then_some(())
    })?;
    Ok(hit.is_none())
}

pub fn spectrum_report(v: &MatrixSubspace, opts: &EnumOptions) -> Result<SpectrumReport> {
    let witness = find_fixed_vector(v, opts)?;
    let trivial_spectrum = witness.is_none();
    let totally_intransitive = is_totally_intransitive(v, opts)?;
    let maximal = trivial_spectrum && v.dim() == choose2(v.n());
    let irreducible = if maximal { Some(is_irreducible(v, opts)?) } else { None };
    Ok(SpectrumReport { trivial_spectrum, witness, totally_intransitive, maximal, irreducible })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{alt_space, companion_line, nt_space, p_alt};
    use crate::error::Error;
    use crate::linalg::{transpose_space, FieldDesc};

    fn f(p: u64) -> FieldDesc {
        FieldDesc::prime(p).unwrap()
    }

    fn opts() -> EnumOptions {
        EnumOptions::default()
    }

    #[test]
    fn nilpotent_spaces_have_trivial_spectrum() {
        for n in 1..5 {
            assert!(has_trivial_spectrum(&nt_space(n, f(3)), &opts()).unwrap());
        }
    }

    #[test]
    fn e11_has_witness() {
        let k = f(3);
        let v = MatrixSubspace::span(k, 2, &[Matrix::unit(k, 2, 0, 0)]).unwrap();
        let w = find_fixed_vector(&v, &opts()).unwrap().unwrap();
        assert_eq!(w.vector, Vector::unit(k, 2, 0));
        assert_eq!(w.matrix, Matrix::unit(k, 2, 0, 0));
        assert_eq!(&w.matrix * &w.vector, w.vector);
    }

    #[test]
    fn non_isotropic_gram_gives_trivial_spectrum() {
        let k = f(3);
        assert!(has_trivial_spectrum(&p_alt(&Matrix::identity(k, 2)).unwrap(), &opts()).unwrap());
        // x^2 - y^2 is isotropic
        let iso = p_alt(&Matrix::diagonal(k, &[1, -1])).unwrap();
        let w = find_fixed_vector(&iso, &opts()).unwrap().unwrap();
        assert_eq!(&w.matrix * &w.vector, w.vector);
        assert!(iso.contains(&w.matrix));
    }

    #[test]
    fn companion_lines() {
        let k = f(3);
        let irr = companion_line(&k.from_i64(1), &k.from_i64(1)).unwrap();
        assert!(has_trivial_spectrum(&irr, &opts()).unwrap());
        let split = companion_line(&k.from_i64(0), &k.from_i64(1)).unwrap();
        let w = find_fixed_vector(&split, &opts()).unwrap().unwrap();
        // eigenvector (1, 1) of [[0,1],[1,0]]
        assert_eq!(w.vector, Vector::from_i64(k, &[1, 1]));
        assert!(has_trivial_spectrum(&companion_line(&k.zero(), &k.zero()).unwrap(), &opts()).unwrap());
    }

    #[test]
    fn total_intransitivity() {
        let k = f(3);
        assert!(is_totally_intransitive(&alt_space(3, k), &opts()).unwrap());
        assert!(!is_totally_intransitive(&MatrixSubspace::full(k, 2), &opts()).unwrap());
        assert!(is_totally_intransitive(&nt_space(3, k), &opts()).unwrap());
    }

    #[test]
    fn maximality() {
        let k = f(3);
        assert!(is_maximal_trivial(&nt_space(4, k), &opts()).unwrap());
        assert!(is_maximal_trivial(&MatrixSubspace::zero(k, 1), &opts()).unwrap());
        let hyper = MatrixSubspace::span(k, 3, &[Matrix::unit(k, 3, 0, 1), Matrix::unit(k, 3, 1, 2)]).unwrap();
        assert!(!is_maximal_trivial(&hyper, &opts()).unwrap());
    }

    #[test]
    fn irreducibility() {
        let k = f(3);
        assert!(!is_irreducible(&nt_space(3, k), &opts()).unwrap());
        assert!(is_irreducible(&p_alt(&Matrix::identity(k, 2)).unwrap(), &opts()).unwrap());
        assert!(is_irreducible(&MatrixSubspace::zero(k, 1), &opts()).unwrap());
    }

    #[test]
    fn rationals_rejected() {
        let q = FieldDesc::rational();
        assert!(matches!(has_trivial_spectrum(&nt_space(2, q), &opts()), Err(Error::InfiniteField(_))));
        assert!(matches!(is_irreducible(&nt_space(2, q), &opts()), Err(Error::InfiniteField(_))));
    }

    #[test]
    fn transpose_preserves_trivial_spectrum() {
        let k = f(5);
        for v in [nt_space(3, k), p_alt(&Matrix::diagonal(k, &[1, 2])).unwrap(), alt_space(3, k)] {
            let t = has_trivial_spectrum(&v, &opts()).unwrap();
            assert_eq!(has_trivial_spectrum(&transpose_space(&v), &opts()).unwrap(), t);
        }
    }
}
