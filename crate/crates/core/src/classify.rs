//! The classification engine.
//!
//! A maximal trivial-spectrum space `V` is conjugate to a block model
//! `P_1 Alt_{n_1} v ... v P_p Alt_{n_p}`. The blocks are found from the level
//! sets of `X -> dim VX`: the sets `{X : dim VX <= n_1 + ... + n_k - 1}` are
//! the subspaces of a `V`-invariant flag. In a basis adapted to that flag,
//! `V` is block upper triangular, and each diagonal block space is
//! `P_k Alt_{n_k}` with `P_k` recovered by a linear solve.

use std::collections::BTreeMap;

use rand::Rng;

use crate::construct::{model_space, p_alt, Block, VeeSpec};
use crate::enumerate::{self, projective_count, EnumOptions};
use crate::error::{Error, Result};
use crate::linalg::{
    choose2, conjugate, left_mul, nullspace, AffineSpace, Echelon, Elem, FieldDesc, Matrix, MatrixSubspace,
    Vector, VectorSubspace,
};
use crate::quadform::{congruent_up_to_scalar, is_isotropic, quad_similar};
use crate::sample;

/// Attempts made by [`affine_normalize`] when the coset is too large to scan.
pub const AFFINE_SAMPLE_ATTEMPTS: usize = 10_000;

/// Strictly increasing chain of `V`-invariant subspaces ending at `K^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flag {
    subspaces: Vec<VectorSubspace>,
}

impl Flag {
    pub fn subspaces(&self) -> &[VectorSubspace] {
        &self.subspaces
    }

    /// Block sizes `n_k = dim F_k - dim F_{k-1}`.
    pub fn sizes(&self) -> Vec<usize> {
        let mut prev = 0;
        self.subspaces
            .iter()
            .map(|s| {
                let d = s.dim() - prev;
                prev = s.dim();
                d
            })
            .collect()
    }
}

/// Result of [`classify`]: `S^-1 V S = model_space(blocks)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub blocks: Vec<Block>,
    pub basis_change: Matrix,
    pub verified: bool,
}

impl Decomposition {
    pub fn sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Block::size).collect()
    }

    pub fn spec(&self) -> VeeSpec {
        VeeSpec::new(self.blocks.clone()).expect("decomposition has at least one block")
    }
}

struct Level {
    value: usize,
    count: u64,
    span: Echelon,
}

/// Level sets of `dim VX` over nonzero `X`, cumulative: entry `v` holds the
/// number of projective points with `dim VX <= v` and their span.
fn levels(v: &MatrixSubspace, opts: &EnumOptions) -> Result<Vec<Level>> {
    let field = v.field();
    let n = v.n();
    let per_value = enumerate::fold(
        field,
        n,
        opts,
        BTreeMap::<usize, (u64, Echelon)>::new,
        |acc, x| {
            let d = v.apply_rank(x);
            let entry = acc.entry(d).or_insert_with(|| (0, Echelon::empty()));
            entry.0 += 1;
            if entry.1.rank() < n {
                entry.1.insert(&field, x.to_vec());
            }
        },
        |mut a, b| {
            for (d, (count, ech)) in b {
                let entry = a.entry(d).or_insert_with(|| (0, Echelon::empty()));
                entry.0 += count;
                for row in ech.rows {
                    entry.1.insert(&field, row);
                }
            }
            a
        },
    )?;
    let mut out = Vec::with_capacity(per_value.len());
    let mut count = 0;
    let mut span = Echelon::empty();
    for (value, (c, ech)) in per_value {
        count += c;
        for row in ech.rows {
            span.insert(&field, row);
        }
        out.push(Level { value, count, span: span.clone() });
    }
    Ok(out)
}

/// For each value `v` of `dim VX` over nonzero `X` (ascending), the span of
/// `{X : dim VX <= v}`.
pub fn vx_profile(v: &MatrixSubspace, opts: &EnumOptions) -> Result<Vec<(usize, VectorSubspace)>> {
    let field = v.field();
    Ok(levels(v, opts)?
        .into_iter()
        .map(|l| (l.value, VectorSubspace::from_echelon(field, v.n(), l.span)))
        .collect())
}

fn require_classifiable_field(field: FieldDesc) -> Result<u32> {
    let q = field.require_finite()?;
    if q == 2 {
        return Err(Error::CharTwoUnsupported);
    }
    Ok(q)
}

/// The invariant flag of a maximal trivial-spectrum space.
pub fn find_flag(v: &MatrixSubspace, opts: &EnumOptions) -> Result<Flag> {
    let field = v.field();
    let q = require_classifiable_field(field)? as u64;
    let n = v.n();
    let mut subspaces = Vec::new();
    for level in levels(v, opts)? {
        let dim = level.span.rank();
        if level.count != projective_count(q, dim) {
            return Err(Error::NotAFlag(format!(
                "{{X : dim VX <= {}}} is not a subspace ({} points span dimension {dim})",
                level.value, level.count
            )));
        }
        if level.value + 1 != dim {
            return Err(Error::NotAFlag(format!(
                "dim VX = {} on a level set of dimension {dim}",
                level.value
            )));
        }
        for row in &level.span.rows {
            for img in v.images(row) {
                if !level.span.contains(&field, &img) {
                    return Err(Error::NotAFlag(format!("level set of dimension {dim} is not V-invariant")));
                }
            }
        }
        subspaces.push(VectorSubspace::from_echelon(field, n, level.span));
    }
    if subspaces.last().map(VectorSubspace::dim) != Some(n) {
        return Err(Error::NotAFlag("level sets do not exhaust K^n".into()));
    }
    Ok(Flag { subspaces })
}

/// `P` with `W = P . Alt_m`, normalized so its first nonzero row-major entry is one.
///
/// Solves for `Y` with `Y M` alternate for every basis matrix `M` of `W`.
/// For `W = P . Alt_m` the solutions are exactly the multiples of `P^-1`.
pub fn recover_gram(w: &MatrixSubspace) -> Result<Matrix> {
    let field = w.field();
    let m = w.n();
    if m < 2 {
        return Err(Error::NotPAltForm(format!("block size {m} carries no gram matrix")));
    }
    if w.dim() != choose2(m) {
        return Err(Error::NotPAltForm(format!("dimension {} is not {}", w.dim(), choose2(m))));
    }
    // unknown Y_ib sits at index i*m + b; (Y M)_ij = sum_b Y_ib M_bj
    let coeff_row = |mat: &Matrix, i: usize, j: usize, row: &mut Vec<Elem>| {
        for b in 0..m {
            let slot = &mut row[i * m + b];
            *slot = field.add(slot, mat.at(b, j));
        }
    };
    let mut rows = Vec::new();
    for mat in w.basis() {
        for i in 0..m {
            let mut row = vec![field.zero_elem(); m * m];
            coeff_row(&mat, i, i, &mut row);
            rows.push(row);
            for j in i + 1..m {
                let mut row = vec![field.zero_elem(); m * m];
                coeff_row(&mat, i, j, &mut row);
                coeff_row(&mat, j, i, &mut row);
                rows.push(row);
            }
        }
    }
    let solutions = nullspace(&field, rows, m * m);
    if solutions.len() != 1 {
        return Err(Error::NotPAltForm(format!("solution space has dimension {}", solutions.len())));
    }
    let y = Matrix::from_elems(field, m, m, solutions.into_iter().next().unwrap());
    let p = y
        .inverse()
        .map_err(|_| Error::NotPAltForm("solution generator is singular".into()))?
        .normalized();
    if p_alt(&p)? != *w {
        return Err(Error::NotPAltForm("recovered gram does not reproduce the space".into()));
    }
    Ok(p)
}

/// Basis of `K^n` adapted to the flag: each `F_{k-1}` basis is extended to
/// one of `F_k` greedily from the echelon basis of `F_k`.
fn adapted_basis(flag: &Flag) -> Result<Matrix> {
    let field = flag.subspaces[0].field();
    let mut ech = Echelon::empty();
    let mut cols: Vec<Vector> = Vec::new();
    for f in &flag.subspaces {
        for b in f.basis() {
            if ech.insert(&field, b.elems().to_vec()) {
                cols.push(b);
            }
        }
    }
    Matrix::from_columns(field, &cols)
}

/// Conjugates `V` into block model form and recovers the block grams.
///
/// Errors with `ClassificationFailed` if the adapted space is not exactly
/// the reconstructed model. Over `q >= 3` every maximal trivial-spectrum
/// space conjugates to a block model, so this signals a defect.
pub fn classify(v: &MatrixSubspace, opts: &EnumOptions) -> Result<Decomposition> {
    require_classifiable_field(v.field())?;
    let n = v.n();
    if v.dim() != choose2(n) {
        return Err(Error::NotMaximal { dim: v.dim(), expected: choose2(n) });
    }
    let flag = find_flag(v, opts)?;
    let sizes = flag.sizes();
    let s = adapted_basis(&flag)?;
    let w = conjugate(v, &s.inverse()?)?;

    let offsets: Vec<usize> = sizes.iter().scan(0, |acc, &k| {
        let start = *acc;
        *acc += k;
        Some(start)
    }).collect();
    let basis = w.basis();
    for m in &basis {
        for (a, (&ra, &ka)) in offsets.iter().zip(&sizes).enumerate() {
            for (&rb, &kb) in offsets.iter().zip(&sizes).take(a) {
                if !m.block(ra, rb, ka, kb).is_zero() {
                    return Err(Error::ClassificationFailed("adapted space is not block upper triangular".into()));
                }
            }
        }
    }

    let field = v.field();
    let mut blocks = Vec::with_capacity(sizes.len());
    for (&start, &k) in offsets.iter().zip(&sizes) {
        if k == 1 {
            blocks.push(Block::trivial(field));
            continue;
        }
        let diag: Vec<Matrix> = basis.iter().map(|m| m.block(start, start, k, k)).collect();
        let wk = MatrixSubspace::span(field, k, &diag)?;
        let p = recover_gram(&wk)?;
        if is_isotropic(&p, opts)? {
            return Err(Error::ClassificationFailed(format!("recovered gram of block size {k} is isotropic")));
        }
        blocks.push(Block::new(p)?);
    }
    let spec = VeeSpec::new(blocks)?;
    if model_space(&spec)? != w {
        return Err(Error::ClassificationFailed("adapted space differs from the reconstructed model".into()));
    }
    Ok(Decomposition { blocks: spec.blocks().to_vec(), basis_change: s, verified: true })
}

/// Failures saying the input is not a maximal trivial-spectrum space.
fn is_structural(e: &Error) -> bool {
    matches!(
        e,
        Error::NotMaximal { .. } | Error::NotAFlag(_) | Error::NotPAltForm(_) | Error::ClassificationFailed(_)
    )
}

/// Whether two maximal trivial-spectrum spaces are conjugate: equal block
/// sizes and pairwise grams congruent up to a scalar.
pub fn similar_spaces(v: &MatrixSubspace, w: &MatrixSubspace, opts: &EnumOptions) -> Result<bool> {
    v.field().check_same(w.field())?;
    if v.n() != w.n() {
        return Ok(false);
    }
    let (a, b) = match (classify(v, opts), classify(w, opts)) {
        (Ok(a), Ok(b)) => (a, b),
        // classifiability is a similarity invariant
        (Ok(_), Err(e)) | (Err(e), Ok(_)) if is_structural(&e) => return Ok(false),
        (Err(e), _) | (_, Err(e)) => return Err(e),
    };
    if a.sizes() != b.sizes() {
        return Ok(false);
    }
    for (x, y) in a.blocks.iter().zip(&b.blocks) {
        if congruent_up_to_scalar(x.gram(), y.gram())?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// First invertible element found in `A`: the offset, then the coset in
/// enumeration order, or seeded random samples when the coset is too large.
fn find_invertible(a: &AffineSpace, opts: &EnumOptions) -> Result<Matrix> {
    if a.offset().is_invertible() {
        return Ok(a.offset().clone());
    }
    let field = a.field();
    let q = field.require_finite()?;
    let d = a.dim();
    if opts.check_guardrail(d, q as u64).is_ok() {
        for coeffs in enumerate::all_vectors(field, d)? {
            let m = a.element(&coeffs.to_scalars())?;
            if m.is_invertible() {
                return Ok(m);
            }
        }
    } else {
        let mut rng = sample::seeded(0);
        for _ in 0..AFFINE_SAMPLE_ATTEMPTS {
            let coeffs: Vec<_> = (0..d).map(|_| field.from_i64(rng.gen_range(0..q) as i64)).collect();
            let m = a.element(&coeffs)?;
            if m.is_invertible() {
                return Ok(m);
            }
        }
    }
    Err(Error::NoInvertibleElement)
}

/// Translation space of `P^-1 A` for an invertible `P in A`; it has a
/// trivial spectrum iff `A` consists of invertible matrices.
pub fn affine_normalize(a: &AffineSpace, opts: &EnumOptions) -> Result<MatrixSubspace> {
    let p = find_invertible(a, opts)?;
    left_mul(&p.inverse()?, a.translation())
}

/// Whether `B = R A S` for invertible `R, S`, for affine spaces of
/// invertible matrices of dimension `n(n-1)/2` over odd `F_q`.
pub fn affine_equivalent(a: &AffineSpace, b: &AffineSpace, opts: &EnumOptions) -> Result<bool> {
    a.field().check_same(b.field())?;
    if a.field().require_finite()? == 2 {
        return Err(Error::EvenCharacteristic);
    }
    if a.n() != b.n() || a.dim() != b.dim() {
        return Ok(false);
    }
    let x = classify(&affine_normalize(a, opts)?, opts)?;
    let y = classify(&affine_normalize(b, opts)?, opts)?;
    if x.sizes() != y.sizes() {
        return Ok(false);
    }
    for (p, q) in x.blocks.iter().zip(&y.blocks) {
        if !quad_similar(p.gram(), q.gram())? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{affine_model, alt_space, companion_line, nt_space};

    fn f(p: u64) -> FieldDesc {
        FieldDesc::prime(p).unwrap()
    }

    fn opts() -> EnumOptions {
        EnumOptions::default()
    }

    fn span(field: FieldDesc, n: usize, idx: &[usize]) -> VectorSubspace {
        let vs: Vec<Vector> = idx.iter().map(|&i| Vector::unit(field, n, i)).collect();
        VectorSubspace::span(field, n, &vs).unwrap()
    }

    #[test]
    fn profile_of_nt3() {
        let k = f(3);
        let prof = vx_profile(&nt_space(3, k), &opts()).unwrap();
        assert_eq!(
            prof,
            vec![(0, span(k, 3, &[0])), (1, span(k, 3, &[0, 1])), (2, span(k, 3, &[0, 1, 2]))]
        );
    }

    #[test]
    fn profile_of_p_alt() {
        let k = f(3);
        let prof = vx_profile(&p_alt(&Matrix::identity(k, 2)).unwrap(), &opts()).unwrap();
        assert_eq!(prof, vec![(1, VectorSubspace::full(k, 2))]);
        let prof = vx_profile(&MatrixSubspace::zero(k, 1), &opts()).unwrap();
        assert_eq!(prof, vec![(0, VectorSubspace::full(k, 1))]);
    }

    #[test]
    fn flag_of_mixed_model() {
        let k = f(3);
        let spec = VeeSpec::new(vec![Block::trivial(k), Block::new(Matrix::identity(k, 2)).unwrap()]).unwrap();
        let flag = find_flag(&model_space(&spec).unwrap(), &opts()).unwrap();
        assert_eq!(flag.sizes(), vec![1, 2]);
        assert_eq!(flag.subspaces()[0], span(k, 3, &[0]));
        let flag = find_flag(&nt_space(4, k), &opts()).unwrap();
        assert_eq!(flag.sizes(), vec![1, 1, 1, 1]);
    }

    #[test]
    fn flag_rejects_non_maximal_space() {
        // M_2 contains E11 with dim(M_2 e1) = 2 but the level set is all of K^2 at value 2 != 1
        let k = f(3);
        assert!(matches!(find_flag(&MatrixSubspace::full(k, 2), &opts()), Err(Error::NotAFlag(_))));
    }

    #[test]
    fn gram_recovery() {
        let k = f(5);
        assert_eq!(recover_gram(&alt_space(3, k)).unwrap(), Matrix::identity(k, 3));
        let p = Matrix::from_i64(k, &[[2, 1], [1, 4]]);
        assert_eq!(recover_gram(&p_alt(&p).unwrap()).unwrap(), p.normalized());
        assert!(matches!(recover_gram(&nt_space(2, f(3))), Err(Error::NotPAltForm(_))));
    }

    #[test]
    fn classify_nt3() {
        let k = f(3);
        let d = classify(&nt_space(3, k), &opts()).unwrap();
        assert_eq!(d.sizes(), vec![1, 1, 1]);
        assert!(d.verified);
        assert!(d.blocks.iter().all(|b| b.gram() == &Matrix::identity(k, 1)));
    }

    #[test]
    fn classify_reconstructs_conjugation() {
        let k = f(5);
        let p = Matrix::from_i64(k, &[[1, 0], [0, 2]]);
        let spec = VeeSpec::new(vec![Block::new(p).unwrap(), Block::trivial(k)]).unwrap();
        let s = Matrix::from_i64(k, &[[1, 2, 0], [0, 1, 3], [1, 0, 1]]);
        let v = conjugate(&model_space(&spec).unwrap(), &s).unwrap();
        let d = classify(&v, &opts()).unwrap();
        assert_eq!(d.sizes(), vec![2, 1]);
        let back = conjugate(&v, &d.basis_change.inverse().unwrap()).unwrap();
        assert_eq!(back, model_space(&d.spec()).unwrap());
    }

    #[test]
    fn classify_errors() {
        let k = f(3);
        let hyper = MatrixSubspace::span(k, 3, &[Matrix::unit(k, 3, 0, 1)]).unwrap();
        assert_eq!(classify(&hyper, &opts()), Err(Error::NotMaximal { dim: 1, expected: 3 }));
        assert_eq!(classify(&nt_space(2, f(2)), &opts()), Err(Error::CharTwoUnsupported));
        assert!(matches!(classify(&nt_space(2, FieldDesc::rational()), &opts()), Err(Error::InfiniteField(_))));
        // isotropic gram: x^2 - y^2
        let iso = p_alt(&Matrix::diagonal(k, &[1, -1])).unwrap();
        assert!(matches!(classify(&iso, &opts()), Err(Error::ClassificationFailed(_))));
    }

    #[test]
    fn similarity_decisions() {
        let k = f(3);
        let nt2 = nt_space(2, k);
        let s = Matrix::from_i64(k, &[[1, 1], [2, 0]]);
        assert!(similar_spaces(&nt2, &conjugate(&nt2, &s).unwrap(), &opts()).unwrap());
        let line = companion_line(&k.one(), &k.one()).unwrap();
        assert!(!similar_spaces(&nt2, &line, &opts()).unwrap());
        let a = p_alt(&Matrix::identity(k, 2)).unwrap();
        let b = p_alt(&Matrix::diagonal(k, &[1, 2])).unwrap();
        // diag(1, 2) is isotropic over F_3 (1 + 2 = 0), so b is not classifiable
        assert!(classify(&b, &opts()).is_err());
        assert!(!similar_spaces(&a, &b, &opts()).unwrap());
        assert!(similar_spaces(&b, &b, &opts()).is_err());
    }

    #[test]
    fn normalize_examples() {
        let k = f(3);
        let a = affine_model(&VeeSpec::all_trivial(k, 2).unwrap()).unwrap();
        assert_eq!(affine_normalize(&a, &opts()).unwrap(), nt_space(2, k));
        let a = AffineSpace::new(Matrix::diagonal(k, &[2, 2]), nt_space(2, k)).unwrap();
        assert_eq!(affine_normalize(&a, &opts()).unwrap(), nt_space(2, k));
        let a = AffineSpace::new(Matrix::unit(k, 2, 0, 0), MatrixSubspace::zero(k, 2)).unwrap();
        assert_eq!(affine_normalize(&a, &opts()), Err(Error::NoInvertibleElement));
        // singular offset, invertible elsewhere in the coset
        let a = AffineSpace::new(Matrix::unit(k, 2, 0, 0), MatrixSubspace::span(k, 2, &[Matrix::unit(k, 2, 1, 1)]).unwrap()).unwrap();
        let t = affine_normalize(&a, &opts()).unwrap();
        assert_eq!(t.dim(), 1);
    }

    #[test]
    fn affine_equivalence_examples() {
        let k = f(3);
        let i2 = Matrix::identity(k, 2);
        let a = affine_model(&VeeSpec::new(vec![Block::new(i2.clone()).unwrap()]).unwrap()).unwrap();
        let b = affine_model(&VeeSpec::new(vec![Block::new(i2.scale(&k.from_i64(2))).unwrap()]).unwrap()).unwrap();
        assert!(affine_equivalent(&a, &b, &opts()).unwrap());
        let nt = affine_model(&VeeSpec::all_trivial(k, 2).unwrap()).unwrap();
        assert!(!affine_equivalent(&a, &nt, &opts()).unwrap());
        let r = Matrix::from_i64(k, &[[1, 2], [0, 2]]);
        let s = Matrix::from_i64(k, &[[0, 1], [1, 1]]);
        let moved = a.left_mul(&r).unwrap().right_mul(&s).unwrap();
        assert!(affine_equivalent(&a, &moved, &opts()).unwrap());
        let nt3 = affine_model(&VeeSpec::all_trivial(k, 3).unwrap()).unwrap();
        let mixed = affine_model(&VeeSpec::new(vec![Block::trivial(k), Block::new(i2).unwrap()]).unwrap()).unwrap();
        assert!(!affine_equivalent(&nt3, &mixed, &opts()).unwrap());
    }
}
