//! Verification suites: brute-force oracles, small exhaustive censuses and
//! seeded sampling, each producing a replayable [`SuiteReport`].
//!
//! Suites only go through the public API of the other modules.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::classify::{classify, recover_gram, similar_spaces};
use crate::construct::{alt_basis, alt_space, model_space, nt_space, p_alt, Block, VeeSpec};
use crate::enumerate::{all_vectors, projective_points, EnumOptions};
use crate::error::{Error, Result};
use crate::linalg::{conjugate, space_apply, FieldDesc, Matrix, MatrixSubspace, VectorSubspace};
use crate::quadform::{congruent_up_to_scalar, is_isotropic};
use crate::sample::{self, SeededRng};
use crate::spectrum::{has_trivial_spectrum, is_irreducible, is_totally_intransitive};

/// Names accepted by [`run_suite`], in the order `all` runs them.
pub const SUITE_NAMES: &[&str] = &[
    "action1",
    "anisotropy",
    "exhaustive-n2-q3",
    "f2-counterexample",
    "gerstenhaber",
    "hyperplane-rigidity",
    "classification-roundtrip",
];

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SuiteParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_n: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub input: String,
    pub expected: String,
    pub actual: String,
}

/// Outcome of one suite. `elapsed` is wall-clock and is left out of the
/// JSON form so reports stay byte-identical across runs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub params: SuiteParams,
    pub checks_run: u64,
    pub failures: Vec<Failure>,
    pub seed: Option<u64>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

struct Recorder {
    report: SuiteReport,
    start: Instant,
}

impl Recorder {
    fn new(suite: &str, params: SuiteParams) -> Self {
        let seed = params.seed;
        Recorder {
            report: SuiteReport {
                suite: suite.to_string(),
                params,
                checks_run: 0,
                failures: Vec::new(),
                seed,
                elapsed: Duration::ZERO,
            },
            start: Instant::now(),
        }
    }

    fn check(&mut self, ok: bool, input: impl FnOnce() -> String, expected: impl ToString, actual: impl ToString) {
        self.report.checks_run += 1;
        if !ok {
            self.report.failures.push(Failure {
                input: input(),
                expected: expected.to_string(),
                actual: actual.to_string(),
            });
        }
    }

    fn check_eq<T: PartialEq + std::fmt::Debug>(&mut self, expected: T, actual: T, input: impl FnOnce() -> String) {
        let ok = expected == actual;
        self.check(ok, input, format!("{expected:?}"), format!("{actual:?}"));
    }

    fn finish(mut self) -> SuiteReport {
        self.report.elapsed = self.start.elapsed();
        self.report
    }
}

/// `[[a, b], [c, d]]` on one line.
pub fn compact(m: &Matrix) -> String {
    let rows: Vec<String> = m
        .to_scalar_rows()
        .iter()
        .map(|r| format!("[{}]", r.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(", ")))
        .collect();
    format!("[{}]", rows.join(", "))
}

fn odd_finite(q: u64) -> Result<FieldDesc> {
    let field = FieldDesc::prime(q)?;
    if q == 2 {
        return Err(Error::EvenCharacteristic);
    }
    Ok(field)
}

/// Gaussian binomial `[n choose k]_q`, from the product formula.
pub fn gaussian_binomial(n: u32, k: u32, q: u64) -> u64 {
    if k > n {
        return 0;
    }
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..k {
        num *= (q as u128).pow(n - i) - 1;
        den *= (q as u128).pow(i + 1) - 1;
    }
    (num / den) as u64
}

/// `Alt_n X` is the orthogonal of `X` and has dimension `n - 1`, for every
/// projective `X` of `F_q^n`.
pub fn suite_action1(n: usize, q: u64, opts: &EnumOptions) -> Result<SuiteReport> {
    let field = FieldDesc::prime(q)?;
    opts.check_guardrail(n, q)?;
    let mut rec = Recorder::new("action1", SuiteParams { n: Some(n), q: Some(q), ..Default::default() });
    let alt = alt_space(n, field);
    for x in projective_points(field, n)? {
        let vx = space_apply(&alt, &x)?;
        let perp = VectorSubspace::span(field, n, std::slice::from_ref(&x))?.orthogonal();
        rec.check(vx == perp, || format!("X={x} n={n} q={q}"), "Alt_n X = X^perp", "spaces differ");
        rec.check_eq(n - 1, vx.dim(), || format!("dim Alt_n X, X={x} n={n} q={q}"));
    }
    Ok(rec.finish())
}

/// `p_alt(P)` has a trivial spectrum iff `P` is non-isotropic. Exhaustive
/// over `GL_2(F_3)`, sampled elsewhere; for `n >= 3` every `P` must also be
/// isotropic.
pub fn suite_anisotropy(n: usize, q: u64, samples: usize, seed: u64, opts: &EnumOptions) -> Result<SuiteReport> {
    let field = odd_finite(q)?;
    opts.check_guardrail(n, q)?;
    let exhaustive = n == 2 && q == 3;
    let params = SuiteParams {
        n: Some(n),
        q: Some(q),
        samples: (!exhaustive).then_some(samples),
        seed: (!exhaustive).then_some(seed),
        ..Default::default()
    };
    let mut rec = Recorder::new("anisotropy", params);
    let grams: Vec<Matrix> = if exhaustive {
        all_vectors(field, n * n)?
            .map(|v| Matrix::from_vector(&v, n, n).expect("square"))
            .filter(Matrix::is_invertible)
            .collect()
    } else {
        let mut rng = sample::seeded(seed);
        (0..samples).map(|_| sample::random_invertible(field, n, &mut rng)).collect()
    };
    for p in &grams {
        let trivial = has_trivial_spectrum(&p_alt(p)?, opts)?;
        let iso = is_isotropic(p, opts)?;
        rec.check(
            trivial != iso,
            || format!("P={} q={q}", compact(p)),
            format!("trivial spectrum = {}", !iso),
            format!("trivial spectrum = {trivial}"),
        );
        if n >= 3 && !iso {
            rec.report.failures.push(Failure {
                input: format!("P={} q={q}", compact(p)),
                expected: "isotropic".into(),
                actual: "non-isotropic".into(),
            });
        }
    }
    Ok(rec.finish())
}

/// Census of `M_2(F_3)`: every line and every plane.
pub fn suite_exhaustive_n2_q3(opts: &EnumOptions) -> Result<SuiteReport> {
    let q = 3u64;
    let field = FieldDesc::prime(q)?;
    let mut rec = Recorder::new("exhaustive-n2-q3", SuiteParams { n: Some(2), q: Some(q), ..Default::default() });

    // lines: projective points of F_3^4 read row-major
    let lines: Vec<Matrix> = projective_points(field, 4)?
        .map(|v| Matrix::from_vector(&v, 2, 2).expect("square"))
        .collect();
    rec.check_eq(gaussian_binomial(4, 1, q), lines.len() as u64, || "line count".into());

    let mut trivial_lines = 0u64;
    let mut nilpotent_lines = 0u64;
    let mut oracle_lines = 0u64;
    for m in &lines {
        let input = || format!("M={} q=3", compact(m));
        let v = MatrixSubspace::span(field, 2, std::slice::from_ref(m))?;
        // oracle: no nonzero root of x^2 - tr(M) x + det(M)
        let tr = m.get(0, 0).try_add(&m.get(1, 1))?;
        let det = m.det();
        let no_root = (1..q as i64).all(|l| {
            let l = field.from_i64(l);
            let val = l.try_mul(&l).and_then(|a| a.try_sub(&tr.try_mul(&l)?)).and_then(|a| a.try_add(&det));
            !val.expect("same field").is_zero()
        });
        if no_root {
            oracle_lines += 1;
        }
        if !has_trivial_spectrum(&v, opts)? {
            continue;
        }
        trivial_lines += 1;
        let d = classify(&v, opts)?;
        let sizes = d.sizes();
        let ok_shape = sizes == [1, 1] || sizes == [2];
        rec.check(ok_shape, input, "sizes (1,1) or (2)", format!("{sizes:?}"));
        if m.is_nilpotent() {
            nilpotent_lines += 1;
        }
        rec.check_eq(m.is_nilpotent(), sizes == [1, 1], || format!("nilpotent <=> (1,1), M={} q=3", compact(m)));
        // singular M is triangularizable
        if det.is_zero() {
            rec.check_eq(vec![1, 1], sizes.clone(), || format!("singular M={} q=3", compact(m)));
        }
        rec.check_eq(sizes == [2], is_irreducible(&v, opts)?, || format!("irreducible <=> (2), M={} q=3", compact(m)));
    }
    rec.check_eq(oracle_lines, trivial_lines, || "trivial-spectrum lines vs char-poly oracle".into());
    // (q^2 - 1)/(q - 1) nilpotent lines; q(q-1)/2 irreducible quadratics,
    // each the char poly of q(q-1) matrices, over q - 1 scalings
    let nil_pred = q + 1;
    let irr_pred = (q * (q - 1) / 2) * q * (q - 1) / (q - 1);
    rec.check_eq(nil_pred, nilpotent_lines, || "nilpotent line count".into());
    rec.check_eq(nil_pred + irr_pred, trivial_lines, || "trivial-spectrum line count".into());

    // planes: reduced echelon 2x4 forms, one per plane
    let mut planes = 0u64;
    let mut trivial_planes = 0u64;
    for a in 0..4usize {
        for b in a + 1..4 {
            let free1: Vec<usize> = (a + 1..4).filter(|&c| c != b).collect();
            let free2: Vec<usize> = (b + 1..4).collect();
            for fill in all_vectors(field, free1.len() + free2.len())? {
                let vals = fill.to_scalars();
                let mut r1 = vec![field.zero(); 4];
                let mut r2 = vec![field.zero(); 4];
                r1[a] = field.one();
                r2[b] = field.one();
                for (k, &c) in free1.iter().enumerate() {
                    r1[c] = vals[k].clone();
                }
                for (k, &c) in free2.iter().enumerate() {
                    r2[c] = vals[free1.len() + k].clone();
                }
                let m1 = Matrix::from_scalars(field, 2, 2, &r1)?;
                let m2 = Matrix::from_scalars(field, 2, 2, &r2)?;
                let v = MatrixSubspace::span(field, 2, &[m1.clone(), m2.clone()])?;
                planes += 1;
                rec.check_eq(2, v.dim(), || format!("plane span({}, {}) q=3", compact(&m1), compact(&m2)));
                if has_trivial_spectrum(&v, opts)? {
                    trivial_planes += 1;
                    rec.check(
                        false,
                        || format!("plane span({}, {}) q=3", compact(&m1), compact(&m2)),
                        "non-trivial spectrum",
                        "trivial spectrum",
                    );
                }
            }
        }
    }
    rec.check_eq(gaussian_binomial(4, 2, q), planes, || "plane count".into());
    rec.check_eq(0, trivial_planes, || "trivial-spectrum plane count".into());
    Ok(rec.finish())
}

/// The three matrices of `M_3(F_2)` spanning an irreducible maximal
/// trivial-spectrum space that is not of the form `P Alt_3`.
pub fn f2_counterexample_matrices() -> [Matrix; 3] {
    let f2 = FieldDesc::prime(2).expect("2 is prime");
    [
        Matrix::from_i64(f2, &[[0, 1, 0], [0, 0, 0], [0, 1, 0]]),
        Matrix::from_i64(f2, &[[1, 0, 1], [1, 0, 0], [1, 0, 0]]),
        Matrix::from_i64(f2, &[[0, 0, 0], [0, 1, 1], [1, 1, 0]]),
    ]
}

pub fn suite_f2_counterexample(opts: &EnumOptions) -> Result<SuiteReport> {
    let f2 = FieldDesc::prime(2)?;
    let mut rec = Recorder::new("f2-counterexample", SuiteParams { n: Some(3), q: Some(2), ..Default::default() });
    let [a, b, c] = f2_counterexample_matrices();
    let id = Matrix::identity(f2, 3);
    for xyz in all_vectors(f2, 3)? {
        let s = xyz.to_scalars();
        let m = [(&a, &s[0]), (&b, &s[1]), (&c, &s[2])]
            .iter()
            .try_fold(id.clone(), |acc, (mat, coef)| acc.try_add(&mat.scale(coef)))?;
        let det = m.det();
        rec.check(det.is_one(), || format!("det(I + xA + yB + zC) at (x,y,z)={xyz}"), 1, det);
    }
    let v = MatrixSubspace::span(f2, 3, &[a.clone(), b.clone(), c])?;
    rec.check_eq(3, v.dim(), || "dim span(A, B, C)".into());
    rec.check_eq(true, has_trivial_spectrum(&v, opts)?, || "trivial spectrum of span(A, B, C)".into());
    rec.check_eq(true, a.try_add(&b)?.is_invertible(), || "A + B invertible".into());
    rec.check_eq(true, is_irreducible(&v, opts)?, || "irreducibility of span(A, B, C)".into());
    let gram = recover_gram(&v);
    rec.check(
        matches!(gram, Err(Error::NotPAltForm(_))),
        || "recover_gram(span(A, B, C))".into(),
        "NotPAltForm",
        format!("{gram:?}"),
    );
    let cls = classify(&v, opts);
    rec.check(
        cls == Err(Error::CharTwoUnsupported),
        || "classify(span(A, B, C))".into(),
        "CharTwoUnsupported",
        format!("{cls:?}"),
    );
    Ok(rec.finish())
}

/// Random conjugates of `NT_n` are nilpotent and classify to all-size-1 blocks.
pub fn suite_gerstenhaber(n: usize, q: u64, samples: usize, seed: u64, opts: &EnumOptions) -> Result<SuiteReport> {
    let field = odd_finite(q)?;
    opts.check_guardrail(n, q)?;
    let params = SuiteParams { n: Some(n), q: Some(q), samples: Some(samples), seed: Some(seed), ..Default::default() };
    let mut rec = Recorder::new("gerstenhaber", params);
    let nt = nt_space(n, field);
    let mut rng = sample::seeded(seed);
    for _ in 0..samples {
        let s = sample::random_invertible(field, n, &mut rng);
        let input = || format!("S={} n={n} q={q}", compact(&s));
        let v = conjugate(&nt, &s)?;
        let nilpotent = v.basis().iter().all(Matrix::is_nilpotent);
        rec.check(nilpotent, input, "nilpotent basis", "non-nilpotent basis matrix");
        match classify(&v, opts) {
            Ok(d) => rec.check_eq(vec![1; n], d.sizes(), input),
            Err(e) => rec.check(false, input, format!("{:?}", vec![1; n]), e),
        }
    }
    Ok(rec.finish())
}

fn random_hyperplane_of_alt3(field: FieldDesc, rng: &mut SeededRng) -> Result<MatrixSubspace> {
    loop {
        let gens = [sample::random_element(&alt_space(3, field), rng), sample::random_element(&alt_space(3, field), rng)];
        let h = MatrixSubspace::span(field, 3, &gens)?;
        if h.dim() == 2 {
            return Ok(h);
        }
    }
}

/// A hyperplane of `Alt_3` plus a non-alternate matrix is never totally
/// intransitive; plus an alternate one it gives back `Alt_3`.
pub fn suite_hyperplane_rigidity(q: u64, samples: usize, seed: u64, opts: &EnumOptions) -> Result<SuiteReport> {
    let field = odd_finite(q)?;
    opts.check_guardrail(3, q)?;
    let params = SuiteParams { n: Some(3), q: Some(q), samples: Some(samples), seed: Some(seed), ..Default::default() };
    let mut rec = Recorder::new("hyperplane-rigidity", params);
    let alt3 = alt_space(3, field);
    let mut rng = sample::seeded(seed);
    for _ in 0..samples {
        let h = random_hyperplane_of_alt3(field, &mut rng)?;
        let m = loop {
            let m = sample::random_matrix(field, 3, 3, &mut rng);
            if !m.is_alternate() {
                break m;
            }
        };
        let hb: Vec<String> = h.basis().iter().map(compact).collect();
        let mut gens = h.basis();
        gens.push(m.clone());
        let v = MatrixSubspace::span(field, 3, &gens)?;
        rec.check(
            !is_totally_intransitive(&v, opts)?,
            || format!("H=span({}) M={} q={q}", hb.join(", "), compact(&m)),
            "not totally intransitive",
            "totally intransitive",
        );
        // control: an alternate matrix outside H
        let ctrl = alt_basis(3, field).into_iter().find(|b| !h.contains(b)).expect("H is a hyperplane");
        let mut gens = h.basis();
        gens.push(ctrl);
        let w = MatrixSubspace::span(field, 3, &gens)?;
        let ok = w == alt3 && is_totally_intransitive(&w, opts)?;
        rec.check(ok, || format!("control H=span({}) q={q}", hb.join(", ")), "Alt_3, totally intransitive", "otherwise");
    }
    Ok(rec.finish())
}

/// Compositions of `n` into parts 1 and 2, in lexicographic order.
pub fn compositions_1_2(n: usize) -> Vec<Vec<usize>> {
    match n {
        0 => vec![vec![]],
        1 => vec![vec![1]],
        _ => {
            let mut out = Vec::new();
            for first in [1, 2] {
                for mut rest in compositions_1_2(n - first) {
                    rest.insert(0, first);
                    out.push(rest);
                }
            }
            out
        }
    }
}

fn random_spec(field: FieldDesc, sizes: &[usize], rng: &mut SeededRng) -> Result<VeeSpec> {
    let blocks = sizes
        .iter()
        .map(|&k| if k == 1 { Ok(Block::trivial(field)) } else { Block::new(sample::random_non_isotropic(field, k, rng)?) })
        .collect::<Result<Vec<_>>>()?;
    VeeSpec::new(blocks)
}

fn describe_spec(spec: &VeeSpec) -> String {
    let parts: Vec<String> = spec.blocks().iter().map(|b| format!("({}, {})", b.size(), compact(b.gram()))).collect();
    parts.join(" v ")
}

/// Random conjugates of random block models over `F_q` classify back to
/// their sizes and grams (up to congruence and scaling).
pub fn suite_classification_roundtrip(
    q: u64,
    max_n: usize,
    samples: usize,
    seed: u64,
    opts: &EnumOptions,
) -> Result<SuiteReport> {
    let field = odd_finite(q)?;
    if max_n > 5 {
        return Err(Error::SizeLimitExceeded(format!("max_n = {max_n} > 5")));
    }
    opts.check_guardrail(max_n, q)?;
    let params = SuiteParams { q: Some(q), samples: Some(samples), seed: Some(seed), max_n: Some(max_n), ..Default::default() };
    let mut rec = Recorder::new("classification-roundtrip", params);
    let mut rng = sample::seeded(seed);
    for n in 1..=max_n {
        let comps = compositions_1_2(n);
        let mut representatives = Vec::new();
        for sizes in &comps {
            for i in 0..samples {
                let spec = random_spec(field, sizes, &mut rng)?;
                let s = sample::random_invertible(field, n, &mut rng);
                let input = || format!("blocks {} S={} q={q}", describe_spec(&spec), compact(&s));
                let model = model_space(&spec)?;
                let v = conjugate(&model, &s)?;
                let d = match classify(&v, opts) {
                    Ok(d) => d,
                    Err(e) => {
                        rec.check(false, input, "classification", e);
                        continue;
                    }
                };
                rec.check_eq(true, d.verified, input);
                rec.check_eq(sizes.clone(), d.sizes(), input);
                if d.sizes() == *sizes {
                    for (got, want) in d.blocks.iter().zip(spec.blocks()) {
                        let cong = congruent_up_to_scalar(got.gram(), want.gram())?;
                        rec.check(
                            cong.is_some(),
                            || format!("{} recovered gram {}", input(), compact(got.gram())),
                            "congruent up to scalar",
                            "no (lambda, R)",
                        );
                    }
                }
                if i == 0 {
                    representatives.push((sizes.clone(), model, spec));
                }
            }
        }
        for (i, (si, vi, spec_i)) in representatives.iter().enumerate() {
            for (sj, vj, spec_j) in &representatives[i + 1..] {
                let sim = similar_spaces(vi, vj, opts)?;
                rec.check(
                    !sim,
                    || format!("{} vs {} q={q}", describe_spec(spec_i), describe_spec(spec_j)),
                    format!("{si:?} not similar to {sj:?}"),
                    "similar",
                );
            }
        }
    }
    Ok(rec.finish())
}

/// Parameters for [`run_suite`]; unset fields take per-suite defaults.
#[derive(Clone, Debug, Default)]
pub struct SuiteArgs {
    pub n: Option<usize>,
    pub q: Option<u64>,
    pub max_n: Option<usize>,
    pub samples: usize,
    pub seed: u64,
}

/// Runs a suite by name. Defaults: `n = 3, q = 3` except anisotropy at
/// `n = 2`, and `max_n = 5` for the round trip.
pub fn run_suite(name: &str, args: &SuiteArgs, opts: &EnumOptions) -> Result<SuiteReport> {
    let q = args.q.unwrap_or(3);
    let (samples, seed) = (args.samples, args.seed);
    match name {
        "action1" => suite_action1(args.n.unwrap_or(3), q, opts),
        "anisotropy" => suite_anisotropy(args.n.unwrap_or(2), q, samples, seed, opts),
        "exhaustive-n2-q3" => suite_exhaustive_n2_q3(opts),
        "f2-counterexample" => suite_f2_counterexample(opts),
        "gerstenhaber" => suite_gerstenhaber(args.n.unwrap_or(3), q, samples, seed, opts),
        "hyperplane-rigidity" => suite_hyperplane_rigidity(q, samples, seed, opts),
        "classification-roundtrip" => suite_classification_roundtrip(q, args.max_n.unwrap_or(5), samples, seed, opts),
        other => Err(Error::UnknownSuite(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts() -> EnumOptions {
        EnumOptions::default()
    }

    #[test]
    fn gaussian_binomials() {
        assert_eq!(gaussian_binomial(4, 1, 3), 40);
        assert_eq!(gaussian_binomial(4, 2, 3), 130);
        assert_eq!(gaussian_binomial(3, 1, 2), 7);
        assert_eq!(gaussian_binomial(5, 0, 7), 1);
    }

    #[test]
    fn compositions() {
        assert_eq!(compositions_1_2(3), vec![vec![1, 1, 1], vec![1, 2], vec![2, 1]]);
        assert_eq!(compositions_1_2(5).len(), 8);
    }

    #[test]
    fn action1_examples() {
        let r = suite_action1(3, 3, &opts()).unwrap();
        assert!(r.passed());
        assert_eq!(r.checks_run, 2 * 13);
        assert!(suite_action1(2, 5, &opts()).unwrap().passed());
        assert!(suite_action1(1, 3, &opts()).unwrap().passed());
    }

    #[test]
    fn anisotropy_exhaustive_count() {
        let r = suite_anisotropy(2, 3, 0, 0, &opts()).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        assert_eq!(r.checks_run, 48);
        assert_eq!(suite_anisotropy(2, 2, 1, 0, &opts()).unwrap_err(), Error::EvenCharacteristic);
    }

    #[test]
    fn f2_suite_passes() {
        let r = suite_f2_counterexample(&opts()).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
    }

    #[test]
    fn census_passes() {
        let r = suite_exhaustive_n2_q3(&opts()).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
    }

    #[test]
    fn small_sampled_suites() {
        assert!(suite_gerstenhaber(3, 3, 5, 1, &opts()).unwrap().passed());
        assert!(suite_hyperplane_rigidity(3, 5, 1, &opts()).unwrap().passed());
        let r = suite_classification_roundtrip(3, 3, 2, 1, &opts()).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
    }

    #[test]
    fn unknown_suite() {
        let args = SuiteArgs::default();
        assert!(matches!(run_suite("nope", &args, &opts()), Err(Error::UnknownSuite(_))));
    }
}
