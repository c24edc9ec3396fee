//! Exhaustive enumeration of `F_q^n` by projective representatives, with
//! deterministic index-range partitioning across worker threads.
//!
//! Points are visited in odometer order (last coordinate fastest) restricted
//! to vectors whose first nonzero coordinate is one. The enumeration index of
//! a point is its position in that order.

use std::ops::Range;
use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};
use crate::linalg::{Elem, FieldDesc, Vector};

/// Largest `n * log2(q)` enumerated without `force`.
pub const GUARDRAIL_BITS: f64 = 24.0;

/// Knobs shared by every enumeration-backed operation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumOptions {
    /// Worker threads for partitioned enumeration.
    pub jobs: usize,
    /// Ignore the guardrail.
    pub force: bool,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions { jobs: 1, force: false }
    }
}

impl EnumOptions {
    pub fn with_jobs(jobs: usize) -> Self {
        EnumOptions { jobs: jobs.max(1), ..Self::default() }
    }

    pub fn check_guardrail(&self, n: usize, q: u64) -> Result<()> {
        if !self.force && n as f64 * (q as f64).log2() > GUARDRAIL_BITS {
            return Err(Error::GuardrailExceeded { n, q });
        }
        Ok(())
    }
}

/// Number of points of `P^{n-1}(F_q)`, i.e. `(q^n - 1) / (q - 1)`.
pub fn projective_count(q: u64, n: usize) -> u64 {
    (0..n).map(|k| q.pow(k as u32)).sum()
}

/// Point with the given enumeration index.
pub(crate) fn projective_point(q: u32, n: usize, mut index: u64) -> Vec<Elem> {
    let q64 = q as u64;
    for lead in (0..n).rev() {
        let tail = n - 1 - lead;
        let size = q64.pow(tail as u32);
        if index < size {
            let mut v = vec![Elem::Mod(0); n];
            v[lead] = Elem::Mod(1);
            let mut rest = index;
            for slot in v[lead + 1..].iter_mut().rev() {
                *slot = Elem::Mod((rest % q64) as u32);
                rest /= q64;
            }
            return v;
        }
        index -= size;
    }
    panic!("projective index out of range")
}

/// Iterator over the projective representatives of `F_q^n` in enumeration order.
pub fn projective_points(field: FieldDesc, n: usize) -> Result<impl Iterator<Item = Vector>> {
    let q = field.require_finite()?;
    Ok((0..projective_count(q as u64, n)).map(move |i| Vector::from_elems(field, projective_point(q, n, i))))
}

/// Every vector of `F_q^n` (including zero) in odometer order.
pub fn all_vectors(field: FieldDesc, n: usize) -> Result<impl Iterator<Item = Vector>> {
    let q = field.require_finite()? as u64;
    Ok((0..q.pow(n as u32)).map(move |mut idx| {
        let mut v = vec![Elem::Mod(0); n];
        for slot in v.iter_mut().rev() {
            *slot = Elem::Mod((idx % q) as u32);
            idx /= q;
        }
        Vector::from_elems(field, v)
    }))
}

fn chunks(total: u64, jobs: usize) -> Vec<Range<u64>> {
    let jobs = (jobs.max(1) as u64).min(total.max(1));
    let step = total.div_ceil(jobs);
    (0..jobs).map(|j| (j * step).min(total)..((j + 1) * step).min(total)).collect()
}

/// First projective point (smallest index) for which `probe` returns `Some`.
pub(crate) fn find_first<T, F>(field: FieldDesc, n: usize, opts: &EnumOptions, probe: F) -> Result<Option<T>>
where
    T: Send,
    F: Fn(&[Elem]) -> Option<T> + Sync,
{
    let q = field.require_finite()?;
    opts.check_guardrail(n, q as u64)?;
    let total = projective_count(q as u64, n);
    let scan = |range: Range<u64>, best: &AtomicU64| {
        for i in range {
            if i > best.load(Ordering::Relaxed) {
                return None;
            }
            if let Some(hit) = probe(&projective_point(q, n, i)) {
                best.fetch_min(i, Ordering::Relaxed);
                return Some((i, hit));
            }
        }
        None
    };
    let best = AtomicU64::new(u64::MAX);
    if opts.jobs <= 1 {
        return Ok(scan(0..total, &best).map(|(_, t)| t));
    }
    let hits: Vec<Option<(u64, T)>> = std::thread::scope(|s| {
        let handles: Vec<_> = chunks(total, opts.jobs)
            .into_iter()
            .map(|r| {
                let scan = &scan;
                let best = &best;
                s.spawn(move || scan(r, best))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("enumeration worker panicked")).collect()
    });
    Ok(hits.into_iter().flatten().min_by_key(|(i, _)| *i).map(|(_, t)| t))
}

/// Folds `step` over every projective point, one accumulator per worker,
/// merged left to right in index order.
pub(crate) fn fold<A, I, S, M>(field: FieldDesc, n: usize, opts: &EnumOptions, init: I, step: S, merge: M) -> Result<A>
where
    A: Send,
    I: Fn() -> A + Sync,
    S: Fn(&mut A, &[Elem]) + Sync,
    M: Fn(A, A) -> A,
{
    let q = field.require_finite()?;
    opts.check_guardrail(n, q as u64)?;
    let total = projective_count(q as u64, n);
    let run = |range: Range<u64>| {
        let mut acc = init();
        for i in range {
            step(&mut acc, &projective_point(q, n, i));
        }
        acc
    };
    if opts.jobs <= 1 {
        return Ok(run(0..total));
    }
    let parts: Vec<A> = std::thread::scope(|s| {
        let handles: Vec<_> = chunks(total, opts.jobs)
            .into_iter()
            .map(|r| {
                let run = &run;
                s.spawn(move || run(r))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("enumeration worker panicked")).collect()
    });
    Ok(parts.into_iter().reduce(merge).unwrap_or_else(init))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_closed_form() {
        for (q, n) in [(2u64, 3usize), (3, 3), (5, 2), (7, 4)] {
            let field = FieldDesc::prime(q).unwrap();
            let pts: Vec<Vector> = projective_points(field, n).unwrap().collect();
            assert_eq!(pts.len() as u64, (q.pow(n as u32) - 1) / (q - 1));
            for p in &pts {
                let lead = p.to_scalars().into_iter().find(|s| !s.is_zero()).unwrap();
                assert!(lead.is_one());
            }
            let distinct: std::collections::HashSet<_> = pts.iter().collect();
            assert_eq!(distinct.len(), pts.len());
        }
    }

    #[test]
    fn order_is_odometer() {
        let field = FieldDesc::prime(3).unwrap();
        let pts: Vec<String> = projective_points(field, 2).unwrap().map(|v| v.to_string()).collect();
        assert_eq!(pts, vec!["(0, 1)", "(1, 0)", "(1, 1)", "(1, 2)"]);
    }

    #[test]
    fn parallel_find_first_is_deterministic() {
        let field = FieldDesc::prime(5).unwrap();
        let probe = |x: &[Elem]| if x[2] == Elem::Mod(3) { Some(x.to_vec()) } else { None };
        let serial = find_first(field, 4, &EnumOptions::default(), probe).unwrap();
        for jobs in 2..6 {
            assert_eq!(find_first(field, 4, &EnumOptions::with_jobs(jobs), probe).unwrap(), serial);
        }
    }

    #[test]
    fn guardrail() {
        let field = FieldDesc::prime(5).unwrap();
        let opts = EnumOptions::default();
        assert!(matches!(
            fold(field, 11, &opts, || 0u64, |a, _| *a += 1, |a, b| a + b),
            Err(Error::GuardrailExceeded { .. })
        ));
        assert!(opts.check_guardrail(10, 5).is_ok());
        assert!(EnumOptions { force: true, ..opts }.check_guardrail(11, 5).is_ok());
    }

    #[test]
    fn rationals_rejected() {
        assert!(matches!(projective_points(FieldDesc::rational(), 2), Err(Error::InfiniteField(_))));
    }
}
