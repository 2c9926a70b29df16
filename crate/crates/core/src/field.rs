//! Exact scalars: arbitrary-precision rationals and prime fields `F_p`.
//!
//! Both live behind [`CoefficientField`] / [`FieldElement`]. Arithmetic
//! between elements of different fields is a programming error: the
//! operator impls panic on it, while the `try_*` methods report
//! [`Error::FieldMismatch`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported prime modulus (exclusive).
pub const MAX_PRIME: u64 = 1 << 62;

/// The coefficient field of every polynomial and matrix in the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "characteristic", rename_all = "snake_case")]
pub enum CoefficientField {
    Rationals,
    Prime(u64),
}

impl CoefficientField {
    /// `F_p`, after checking that `p` is a prime below `2^62`.
    pub fn prime(p: u64) -> Result<Self> {
        if p >= MAX_PRIME {
            return Err(Error::UnsupportedPrime(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(CoefficientField::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            CoefficientField::Rationals => 0,
            CoefficientField::Prime(p) => *p,
        }
    }

    /// True when the characteristic is 0 or strictly larger than `bound`.
    pub fn characteristic_exceeds(&self, bound: u64) -> bool {
        match self {
            CoefficientField::Rationals => true,
            CoefficientField::Prime(p) => *p > bound,
        }
    }

    pub fn zero(&self) -> FieldElement {
        self.from_i64(0)
    }

    pub fn one(&self) -> FieldElement {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> FieldElement {
        match self {
            CoefficientField::Rationals => FieldElement::Rational(BigRational::from_integer(n.into())),
            CoefficientField::Prime(p) => FieldElement::Residue {
                value: (n as i128).rem_euclid(*p as i128) as u64,
                modulus: *p,
            },
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> FieldElement {
        match self {
            CoefficientField::Rationals => FieldElement::Rational(BigRational::from_integer(n.clone())),
            CoefficientField::Prime(p) => {
                let m = BigInt::from(*p);
                let r = n.mod_floor(&m);
                FieldElement::Residue {
                    value: r.to_u64().expect("residue fits in u64"),
                    modulus: *p,
                }
            }
        }
    }

    /// `num / den`; in `F_p` this is `num * den^-1`.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<FieldElement> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match self {
            CoefficientField::Rationals => Ok(FieldElement::Rational(BigRational::new(num.clone(), den.clone()))),
            CoefficientField::Prime(_) => {
                let d = self.from_bigint(den);
                if d.is_zero() {
                    return Err(Error::CoefficientNotInField(format!("{num}/{den}")));
                }
                self.from_bigint(num).try_div(&d)
            }
        }
    }

    /// Converts a rational into this field; fails in `F_p` when the
    /// denominator vanishes mod `p`.
    pub fn from_rational(&self, q: &BigRational) -> Result<FieldElement> {
        self.from_ratio(q.numer(), q.denom())
    }
}

impl fmt::Display for CoefficientField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientField::Rationals => write!(f, "Q"),
            CoefficientField::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

/// An exact scalar. Rationals are kept in lowest terms with a positive
/// denominator; residues are always reduced.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldElement {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

impl FieldElement {
    pub fn field(&self) -> CoefficientField {
        match self {
            FieldElement::Rational(_) => CoefficientField::Rationals,
            FieldElement::Residue { modulus, .. } => CoefficientField::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Rational(q) => q.is_zero(),
            FieldElement::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElement::Rational(q) => q.is_one(),
            FieldElement::Residue { value, .. } => *value == 1,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            FieldElement::Rational(q) => Some(q),
            FieldElement::Residue { .. } => None,
        }
    }

    pub fn as_residue(&self) -> Option<u64> {
        match self {
            FieldElement::Residue { value, .. } => Some(*value),
            FieldElement::Rational(_) => None,
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.field() == other.field() {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.add_unchecked(&other.neg_ref()))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.mul_unchecked(&other.inv()?))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            FieldElement::Rational(q) => FieldElement::Rational(q.recip()),
            FieldElement::Residue { value, modulus } => FieldElement::Residue {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            base = base.mul_unchecked(&base);
            e >>= 1;
        }
        acc
    }

    fn neg_ref(&self) -> Self {
        match self {
            FieldElement::Rational(q) => FieldElement::Rational(-q),
            FieldElement::Residue { value, modulus } => FieldElement::Residue {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }

    fn add_unchecked(&self, other: &Self) -> Self {
        match (self, other) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a + b),
            (FieldElement::Residue { value: a, modulus }, FieldElement::Residue { value: b, .. }) => {
                FieldElement::Residue {
                    value: ((*a as u128 + *b as u128) % *modulus as u128) as u64,
                    modulus: *modulus,
                }
            }
            _ => panic!("field mismatch in FieldElement arithmetic"),
        }
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        match (self, other) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a * b),
            (FieldElement::Residue { value: a, modulus }, FieldElement::Residue { value: b, .. }) => {
                FieldElement::Residue {
                    value: mul_mod(*a, *b, *modulus),
                    modulus: *modulus,
                }
            }
            _ => panic!("field mismatch in FieldElement arithmetic"),
        }
    }

    /// Multiplies by a machine integer (exponent factors in derivatives).
    pub fn scale_int(&self, n: i64) -> Self {
        self.mul_unchecked(&self.field().from_i64(n))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Rational(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            FieldElement::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

impl FieldElement {
    /// True when the printed form needs a leading minus sign.
    pub(crate) fn is_negative_literal(&self) -> bool {
        match self {
            FieldElement::Rational(q) => q.is_negative(),
            FieldElement::Residue { .. } => false,
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $inner:expr) => {
        impl $trait<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                $inner(self, rhs)
            }
        }
        impl $trait<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                $inner(&self, &rhs)
            }
        }
        impl $trait<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                $inner(&self, rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &FieldElement, b: &FieldElement| a.add_unchecked(b));
forward_binop!(Sub, sub, |a: &FieldElement, b: &FieldElement| a
    .add_unchecked(&b.neg_ref()));
forward_binop!(Mul, mul, |a: &FieldElement, b: &FieldElement| a.mul_unchecked(b));

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_ref()
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_ref()
    }
}

pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin; the witness set is exact for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &SMALL {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> FieldElement {
        CoefficientField::Rationals
            .from_ratio(&BigInt::from(n), &BigInt::from(d))
            .unwrap()
    }

    #[test]
    fn rational_normalization() {
        let s = q(2, 4) + q(1, 4);
        let r = s.as_rational().unwrap();
        assert_eq!(
            (r.numer().clone(), r.denom().clone()),
            (BigInt::from(3), BigInt::from(4))
        );
    }

    #[test]
    fn residue_product() {
        let f7 = CoefficientField::prime(7).unwrap();
        assert_eq!(f7.from_i64(3) * f7.from_i64(5), f7.from_i64(1));
    }

    #[test]
    fn inverse_keeps_sign_on_numerator() {
        let inv = q(-2, 3).inv().unwrap();
        let r = inv.as_rational().unwrap();
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
    }

    #[test]
    fn errors() {
        let f7 = CoefficientField::prime(7).unwrap();
        assert!(matches!(f7.zero().inv(), Err(Error::DivisionByZero)));
        assert!(matches!(q(1, 2).try_add(&f7.one()), Err(Error::FieldMismatch)));
        assert!(matches!(q(1, 2).try_div(&q(0, 1)), Err(Error::DivisionByZero)));
        assert!(matches!(CoefficientField::prime(9), Err(Error::NotPrime(9))));
        assert!(matches!(
            CoefficientField::prime(MAX_PRIME + 1),
            Err(Error::UnsupportedPrime(_))
        ));
        assert!(matches!(
            f7.from_ratio(&BigInt::from(1), &BigInt::from(14)),
            Err(Error::CoefficientNotInField(_))
        ));
    }

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]);
        assert!(is_prime(1009));
        assert!(is_prime((1 << 61) - 1));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to bases 2,3,5,7
    }

    fn small_rational() -> impl Strategy<Value = FieldElement> {
        (-50i64..50, 1i64..20).prop_map(|(n, d)| q(n, d))
    }

    proptest! {
        #[test]
        fn rational_field_axioms(a in small_rational(), b in small_rational(), c in small_rational()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            if !a.is_zero() {
                prop_assert!((&a * &a.inv().unwrap()).is_one());
            }
        }

        #[test]
        fn prime_field_axioms(a in 0u64..1009, b in 0u64..1009, c in 0u64..1009) {
            let f = CoefficientField::prime(1009).unwrap();
            let (a, b, c) = (f.from_i64(a as i64), f.from_i64(b as i64), f.from_i64(c as i64));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a - &a, f.zero());
            if !a.is_zero() {
                prop_assert!((&a * &a.inv().unwrap()).is_one());
            }
            prop_assert_eq!(a.pow(1009), a);
        }
    }
}
