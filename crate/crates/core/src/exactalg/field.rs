//! Exact scalar fields: prime fields with machine-word residues and the
//! rationals with arbitrary-precision numerator and denominator.

use std::fmt;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::AlgError;

/// Operations shared by every exact field used in this crate.
///
/// Elements are plain values; the field object carries whatever context
/// (the modulus) the arithmetic needs.
#[allow(clippy::wrong_self_convention)]
pub trait Field: Clone + fmt::Debug + Send + Sync {
    type Elem: Clone + PartialEq + Eq + fmt::Debug + fmt::Display + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_i64(&self, v: i64) -> Self::Elem;
    /// Image of a rational number; `None` when the denominator vanishes.
    fn from_ratio(&self, r: &Rational64) -> Option<Self::Elem>;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }
}

/// Deterministic primality test by trial division; inputs are below 2^31.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// The prime field F_p with residues stored in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub const MAX_PRIME: u64 = 1 << 31;

    pub fn new(p: u64) -> Result<Self, AlgError> {
        if p >= Self::MAX_PRIME || !is_prime(p) {
            return Err(AlgError::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn reduce_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.p;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }

    /// Number of points of the projective space P^{dim-1}(F_p), saturating.
    pub fn projective_count(&self, dim: usize) -> u64 {
        if dim == 0 {
            return 0;
        }
        let mut total: u64 = 0;
        let mut power: u64 = 1;
        for _ in 0..dim {
            total = total.saturating_add(power);
            power = power.saturating_mul(self.p);
        }
        total
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

impl Field for PrimeField {
    type Elem = u64;

    #[inline]
    fn zero(&self) -> u64 {
        0
    }
    #[inline]
    fn one(&self) -> u64 {
        1
    }
    #[inline]
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if a.is_multiple_of(self.p) {
            return None;
        }
        // Fermat: a^(p-2)
        Some(self.pow(*a, self.p - 2))
    }
    fn from_i64(&self, v: i64) -> u64 {
        self.reduce_i64(v)
    }
    fn from_ratio(&self, r: &Rational64) -> Option<u64> {
        let den = self.reduce_i64(*r.denom());
        let inv = self.inv(&den)?;
        Some(self.mul(&self.reduce_i64(*r.numer()), &inv))
    }
}

/// The field of rational numbers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct RationalField;

impl Field for RationalField {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_ratio(&self, r: &Rational64) -> Option<BigRational> {
        Some(BigRational::new(
            BigInt::from(*r.numer()),
            BigInt::from(*r.denom()),
        ))
    }
}

/// Run-time choice of base field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldCtx {
    Rationals,
    Prime(PrimeField),
}

impl FieldCtx {
    pub fn prime(p: u64) -> Result<Self, AlgError> {
        PrimeField::new(p).map(FieldCtx::Prime)
    }

    pub fn as_prime(&self) -> Option<PrimeField> {
        match self {
            FieldCtx::Prime(f) => Some(*f),
            FieldCtx::Rationals => None,
        }
    }
}

impl fmt::Display for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldCtx::Rationals => write!(f, "Q"),
            FieldCtx::Prime(fp) => fp.fmt(f),
        }
    }
}

/// A field element tagged with the field it lives in.
///
/// Rationals are always reduced with a positive denominator (the invariant
/// `BigRational` maintains), residues always lie in `[0, p)`, so equality
/// is structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u64, p: u64 },
}

impl Scalar {
    pub fn rational(num: i64, den: i64) -> Self {
        Scalar::Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn residue(value: i64, field: PrimeField) -> Self {
        Scalar::Residue {
            value: field.reduce_i64(value),
            p: field.modulus(),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Residue { value, .. } => write!(f, "{}", value),
        }
    }
}

impl FieldCtx {
    fn unwrap_q<'a>(&self, a: &'a Scalar) -> &'a BigRational {
        match a {
            Scalar::Rational(r) => r,
            other => panic!("scalar {other:?} is not a rational"),
        }
    }

    fn unwrap_p(&self, fp: &PrimeField, a: &Scalar) -> u64 {
        match a {
            Scalar::Residue { value, p } if *p == fp.modulus() => *value,
            other => panic!("scalar {other:?} does not belong to {fp}"),
        }
    }

    fn wrap_p(fp: &PrimeField, value: u64) -> Scalar {
        Scalar::Residue {
            value,
            p: fp.modulus(),
        }
    }

    fn lift2(
        &self,
        a: &Scalar,
        b: &Scalar,
        q: impl FnOnce(&BigRational, &BigRational) -> BigRational,
        p: impl FnOnce(&PrimeField, u64, u64) -> u64,
    ) -> Scalar {
        match self {
            FieldCtx::Rationals => Scalar::Rational(q(self.unwrap_q(a), self.unwrap_q(b))),
            FieldCtx::Prime(fp) => {
                let v = p(fp, self.unwrap_p(fp, a), self.unwrap_p(fp, b));
                Self::wrap_p(fp, v)
            }
        }
    }
}

impl Field for FieldCtx {
    type Elem = Scalar;

    fn zero(&self) -> Scalar {
        self.from_i64(0)
    }
    fn one(&self) -> Scalar {
        self.from_i64(1)
    }
    fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }
    fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.lift2(a, b, |x, y| x + y, |f, x, y| f.add(&x, &y))
    }
    fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.lift2(a, b, |x, y| x - y, |f, x, y| f.sub(&x, &y))
    }
    fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.lift2(a, b, |x, y| x * y, |f, x, y| f.mul(&x, &y))
    }
    fn neg(&self, a: &Scalar) -> Scalar {
        match self {
            FieldCtx::Rationals => Scalar::Rational(-self.unwrap_q(a)),
            FieldCtx::Prime(fp) => Self::wrap_p(fp, fp.neg(&self.unwrap_p(fp, a))),
        }
    }
    fn inv(&self, a: &Scalar) -> Option<Scalar> {
        match self {
            FieldCtx::Rationals => RationalField.inv(self.unwrap_q(a)).map(Scalar::Rational),
            FieldCtx::Prime(fp) => fp.inv(&self.unwrap_p(fp, a)).map(|v| Self::wrap_p(fp, v)),
        }
    }
    fn from_i64(&self, v: i64) -> Scalar {
        match self {
            FieldCtx::Rationals => Scalar::Rational(RationalField.from_i64(v)),
            FieldCtx::Prime(fp) => Scalar::residue(v, *fp),
        }
    }
    fn from_ratio(&self, r: &Rational64) -> Option<Scalar> {
        match self {
            FieldCtx::Rationals => RationalField.from_ratio(r).map(Scalar::Rational),
            FieldCtx::Prime(fp) => fp.from_ratio(r).map(|v| Self::wrap_p(fp, v)),
        }
    }
}

/// Formats a rational coefficient the way the text formats expect: integers
/// bare, fractions as `a/b`.
pub(crate) fn format_ratio(r: &Rational64) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..40).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]);
        assert!(is_prime(2_147_483_647));
        assert!(PrimeField::new(2_147_483_647).is_ok());
        assert!(PrimeField::new(2_147_483_659).is_err());
        assert!(PrimeField::new(2_147_483_629).is_ok());
        assert_eq!(PrimeField::new(9), Err(AlgError::NotPrime(9)));
    }

    #[test]
    fn prime_field_inverse_and_ratio() {
        let f = PrimeField::new(7).unwrap();
        for a in 1..7 {
            assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
        }
        assert_eq!(f.inv(&0), None);
        assert_eq!(f.from_ratio(&Rational64::new(1, 2)), Some(4));
        assert_eq!(f.from_ratio(&Rational64::new(1, 7)), None);
        assert_eq!(f.from_i64(-1), 6);
    }

    #[test]
    fn projective_counts() {
        let f = PrimeField::new(3).unwrap();
        assert_eq!(f.projective_count(0), 0);
        assert_eq!(f.projective_count(1), 1);
        assert_eq!(f.projective_count(3), 13);
        assert_eq!(PrimeField::new(2).unwrap().projective_count(6), 63);
    }

    #[test]
    fn scalar_display_and_ctx_arith() {
        let q = FieldCtx::Rationals;
        let half = Scalar::rational(1, 2);
        assert_eq!(q.add(&half, &half), q.one());
        assert_eq!(Scalar::rational(-2, 4).to_string(), "-1/2");
        let f5 = FieldCtx::prime(5).unwrap();
        let two = f5.from_i64(2);
        assert_eq!(f5.add(&f5.one(), &f5.mul(&two, &two)), f5.zero());
    }
}
