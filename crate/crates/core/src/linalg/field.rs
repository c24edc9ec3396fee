//! Ground fields and their scalars.
//!
//! Two kinds of exact field are supported: prime fields `F_p` with word-sized
//! representatives, and the rationals with arbitrary-precision fractions.
//! Field arithmetic is dispatched through [`FieldDesc`] so that matrices can
//! store bare [`Elem`] values and carry the field once.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Which exact field a value lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldDesc {
    Prime(u32),
    Rational,
}

/// Bare field element; meaningful only together with a [`FieldDesc`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Elem {
    Mod(u32),
    Rat(Box<BigRational>),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p.is_multiple_of(2) {
        return p == 2;
    }
    let mut d = 3;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl FieldDesc {
    pub fn prime(p: u64) -> Result<Self> {
        if p >= 1 << 31 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldDesc::Prime(p as u32))
    }

    pub fn rational() -> Self {
        FieldDesc::Rational
    }

    /// Number of elements, `None` for the rationals.
    pub fn order(&self) -> Option<u64> {
        match self {
            FieldDesc::Prime(p) => Some(*p as u64),
            FieldDesc::Rational => None,
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldDesc::Prime(p) => *p as u64,
            FieldDesc::Rational => 0,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, FieldDesc::Prime(_))
    }

    /// Returns the field order, or `InfiniteField`.
    pub fn require_finite(&self) -> Result<u32> {
        match self {
            FieldDesc::Prime(p) => Ok(*p),
            FieldDesc::Rational => Err(Error::InfiniteField(*self)),
        }
    }

    pub(crate) fn check_same(&self, other: FieldDesc) -> Result<()> {
        if *self == other {
            Ok(())
        } else {
            Err(Error::MixedFields(*self, other))
        }
    }

    pub fn zero(&self) -> Scalar {
        Scalar::new(*self, self.zero_elem())
    }

    pub fn one(&self) -> Scalar {
        Scalar::new(*self, self.one_elem())
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        Scalar::new(*self, self.elem_i64(v))
    }

    /// `num / den` reduced into the field; `None` when `den` vanishes there.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Option<Scalar> {
        match self {
            FieldDesc::Rational => {
                if den.is_zero() {
                    None
                } else {
                    Some(Scalar::new(
                        *self,
                        Elem::Rat(Box::new(BigRational::new(num.clone(), den.clone()))),
                    ))
                }
            }
            FieldDesc::Prime(p) => {
                let m = BigInt::from(*p);
                let n = num.mod_floor(&m).to_u32().unwrap();
                let d = den.mod_floor(&m).to_u32().unwrap();
                let inv = self.inv(&Elem::Mod(d))?;
                Some(Scalar::new(*self, self.mul(&Elem::Mod(n), &inv)))
            }
        }
    }

    /// Parses `a` or `a/b` with decimal integers `a`, `b`. `None` on a
    /// malformed token or a denominator vanishing in the field.
    pub fn parse_scalar(&self, token: &str) -> Option<Scalar> {
        let (num, den) = match token.split_once('/') {
            Some((a, b)) => (a, b),
            None => (token, "1"),
        };
        let digits = |s: &str| {
            let body = s.strip_prefix('-').unwrap_or(s);
            !body.is_empty() && body.bytes().all(|c| c.is_ascii_digit())
        };
        if !digits(num) || !digits(den) {
            return None;
        }
        self.from_ratio(&num.parse().ok()?, &den.parse().ok()?)
    }

    /// All elements of a finite field in canonical order `0, 1, ..., p-1`.
    pub fn elements(&self) -> Result<impl Iterator<Item = Scalar> + '_> {
        let p = self.require_finite()?;
        Ok((0..p).map(move |v| Scalar::new(*self, Elem::Mod(v))))
    }

    pub(crate) fn zero_elem(&self) -> Elem {
        match self {
            FieldDesc::Prime(_) => Elem::Mod(0),
            FieldDesc::Rational => Elem::Rat(Box::default()),
        }
    }

    pub(crate) fn one_elem(&self) -> Elem {
        match self {
            FieldDesc::Prime(_) => Elem::Mod(1),
            FieldDesc::Rational => Elem::Rat(Box::new(BigRational::one())),
        }
    }

    pub(crate) fn elem_i64(&self, v: i64) -> Elem {
        match self {
            FieldDesc::Prime(p) => Elem::Mod(v.rem_euclid(*p as i64) as u32),
            FieldDesc::Rational => Elem::Rat(Box::new(BigRational::from_integer(v.into()))),
        }
    }

    #[inline]
    pub(crate) fn is_zero(&self, a: &Elem) -> bool {
        match a {
            Elem::Mod(v) => *v == 0,
            Elem::Rat(r) => r.is_zero(),
        }
    }

    #[inline]
    pub(crate) fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match (self, a, b) {
            (FieldDesc::Prime(p), Elem::Mod(x), Elem::Mod(y)) => {
                Elem::Mod(((*x as u64 + *y as u64) % *p as u64) as u32)
            }
            (FieldDesc::Rational, Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(Box::new(&**x + &**y)),
            _ => unreachable!("element does not belong to {self}"),
        }
    }

    #[inline]
    pub(crate) fn neg(&self, a: &Elem) -> Elem {
        match (self, a) {
            (FieldDesc::Prime(p), Elem::Mod(x)) => Elem::Mod(if *x == 0 { 0 } else { p - x }),
            (FieldDesc::Rational, Elem::Rat(x)) => Elem::Rat(Box::new(-&**x)),
            _ => unreachable!("element does not belong to {self}"),
        }
    }

    #[inline]
    pub(crate) fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        self.add(a, &self.neg(b))
    }

    #[inline]
    pub(crate) fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (self, a, b) {
            (FieldDesc::Prime(p), Elem::Mod(x), Elem::Mod(y)) => {
                Elem::Mod(((*x as u64 * *y as u64) % *p as u64) as u32)
            }
            (FieldDesc::Rational, Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(Box::new(&**x * &**y)),
            _ => unreachable!("element does not belong to {self}"),
        }
    }

    /// `a - c*b`, the elimination step.
    #[inline]
    pub(crate) fn sub_mul(&self, a: &Elem, c: &Elem, b: &Elem) -> Elem {
        match (self, a, c, b) {
            (FieldDesc::Prime(p), Elem::Mod(x), Elem::Mod(k), Elem::Mod(y)) => {
                let p = *p as u64;
                let prod = (*k as u64 * *y as u64) % p;
                Elem::Mod(((*x as u64 + p - prod) % p) as u32)
            }
            _ => self.sub(a, &self.mul(c, b)),
        }
    }

    /// Multiplicative inverse via extended Euclid; `None` for zero.
    pub(crate) fn inv(&self, a: &Elem) -> Option<Elem> {
        if self.is_zero(a) {
            return None;
        }
        match (self, a) {
            (FieldDesc::Prime(p), Elem::Mod(x)) => {
                let eg = (*x as i64).extended_gcd(&(*p as i64));
                Some(Elem::Mod(eg.x.rem_euclid(*p as i64) as u32))
            }
            (FieldDesc::Rational, Elem::Rat(x)) => Some(Elem::Rat(Box::new(x.recip()))),
            _ => unreachable!("element does not belong to {self}"),
        }
    }

    pub(crate) fn scalar(&self, e: Elem) -> Scalar {
        Scalar::new(*self, e)
    }
}

impl fmt::Display for FieldDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDesc::Prime(p) => write!(f, "F_{p}"),
            FieldDesc::Rational => write!(f, "Q"),
        }
    }
}

/// A field element tagged with its field. The representative is canonical:
/// an integer in `[0, p)` or a reduced fraction with positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    field: FieldDesc,
    elem: Elem,
}

impl Scalar {
    pub(crate) fn new(field: FieldDesc, elem: Elem) -> Self {
        Scalar { field, elem }
    }

    pub(crate) fn elem(&self) -> &Elem {
        &self.elem
    }

    pub fn field(&self) -> FieldDesc {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.field.is_zero(&self.elem)
    }

    pub fn is_one(&self) -> bool {
        self.elem == self.field.one_elem()
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar> {
        self.field.check_same(other.field)?;
        Ok(Scalar::new(self.field, self.field.add(&self.elem, &other.elem)))
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.field.check_same(other.field)?;
        Ok(Scalar::new(self.field, self.field.sub(&self.elem, &other.elem)))
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.field.check_same(other.field)?;
        Ok(Scalar::new(self.field, self.field.mul(&self.elem, &other.elem)))
    }

    pub fn neg(&self) -> Scalar {
        Scalar::new(self.field, self.field.neg(&self.elem))
    }

    pub fn inv(&self) -> Option<Scalar> {
        self.field.inv(&self.elem).map(|e| Scalar::new(self.field, e))
    }

    /// Representative in `[0, p)` for prime fields.
    pub fn as_u32(&self) -> Option<u32> {
        match self.elem {
            Elem::Mod(v) => Some(v),
            Elem::Rat(_) => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.elem {
            Elem::Rat(r) => Some(r),
            Elem::Mod(_) => None,
        }
    }

    /// Sign of a rational scalar (`-1`, `0`, `1`); `None` over prime fields.
    pub fn signum(&self) -> Option<i32> {
        self.as_rational().map(|r| {
            if r.is_zero() {
                0
            } else if r.is_positive() {
                1
            } else {
                -1
            }
        })
    }

    /// Whether the scalar is a square in its field. Uses Euler's criterion
    /// over `F_p`; over `Q` checks numerator and denominator.
    pub fn is_square(&self) -> bool {
        match (&self.field, &self.elem) {
            (FieldDesc::Prime(p), Elem::Mod(v)) => {
                if *v == 0 || *p == 2 {
                    return true;
                }
                let e = BigInt::from(*v).modpow(&BigInt::from((p - 1) / 2), &BigInt::from(*p));
                e.is_one()
            }
            (FieldDesc::Rational, Elem::Rat(r)) => {
                if r.is_negative() {
                    return false;
                }
                let n = r.numer();
                let d = r.denom();
                n.sqrt().pow(2) == *n && d.sqrt().pow(2) == *d
            }
            _ => unreachable!(),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.elem {
            Elem::Mod(v) => write!(f, "{v}"),
            Elem::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_gate() {
        assert!(FieldDesc::prime(2).is_ok());
        assert!(FieldDesc::prime(2147483647).is_ok());
        assert_eq!(FieldDesc::prime(4), Err(Error::NotPrime(4)));
        assert_eq!(FieldDesc::prime(1), Err(Error::NotPrime(1)));
        assert_eq!(FieldDesc::prime(1 << 31), Err(Error::NotPrime(1 << 31)));
    }

    #[test]
    fn token_parsing() {
        let f = FieldDesc::prime(5).unwrap();
        assert_eq!(f.parse_scalar("7"), Some(f.from_i64(2)));
        assert_eq!(f.parse_scalar("-1"), Some(f.from_i64(4)));
        assert_eq!(f.parse_scalar("1/2"), Some(f.from_i64(3)));
        assert_eq!(f.parse_scalar("1/5"), None);
        assert_eq!(f.parse_scalar("x"), None);
        assert_eq!(f.parse_scalar("1/"), None);
        let q = FieldDesc::rational();
        assert_eq!(q.parse_scalar("4/-6").unwrap().to_string(), "-2/3");
        assert_eq!(q.parse_scalar("+3"), None);
    }

    #[test]
    fn prime_arithmetic_is_canonical() {
        let f = FieldDesc::prime(7).unwrap();
        assert_eq!(f.from_i64(-1).as_u32(), Some(6));
        let three = f.from_i64(3);
        assert_eq!(three.inv().unwrap().as_u32(), Some(5));
        assert_eq!(three.try_mul(&f.from_i64(5)).unwrap(), f.one());
        assert!(f.zero().inv().is_none());
    }

    #[test]
    fn rational_arithmetic_reduces() {
        let q = FieldDesc::rational();
        let a = q.from_ratio(&BigInt::from(2), &BigInt::from(-4)).unwrap();
        assert_eq!(a.to_string(), "-1/2");
        assert_eq!(a.try_add(&a).unwrap(), q.from_i64(-1));
        assert_eq!(a.inv().unwrap(), q.from_i64(-2));
    }

    #[test]
    fn cross_field_rejected() {
        let a = FieldDesc::prime(3).unwrap().one();
        let b = FieldDesc::prime(5).unwrap().one();
        assert!(matches!(a.try_add(&b), Err(Error::MixedFields(..))));
        assert!(matches!(a.try_mul(&FieldDesc::rational().one()), Err(Error::MixedFields(..))));
    }

    #[test]
    fn squares_mod_p() {
        let f = FieldDesc::prime(3).unwrap();
        assert!(f.from_i64(1).is_square());
        assert!(!f.from_i64(2).is_square());
        let f = FieldDesc::prime(5).unwrap();
        let squares: Vec<u32> = f.elements().unwrap().filter(|s| s.is_square()).map(|s| s.as_u32().unwrap()).collect();
        assert_eq!(squares, vec![0, 1, 4]);
    }
}
