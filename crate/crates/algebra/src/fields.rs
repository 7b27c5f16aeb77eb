//! Prime fields `F_p` and exact rationals.
//!
//! [`Prime`] is both the validated modulus and the arithmetic context for raw
//! `u32` residues; the polynomial kernels work on raw residues for speed.
//! [`FieldElement`] is the self-describing value type used at API boundaries.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

/// Arbitrary-precision rational, used for characteristic-zero cross checks.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not an odd prime")]
    NotPrime(u64),
    #[error("modulus {0} does not fit below 2^31")]
    TooLarge(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different fields (p = {0} and p = {1})")]
    PrimeMismatch(u32, u32),
    #[error("operands use different extension moduli")]
    ModulusMismatch,
    #[error("extension modulus must be monic of degree >= 1")]
    InvalidModulus,
    #[error("element is not invertible: modulus is reducible and shares the factor {0}")]
    NotInvertible(String),
}

/// An odd prime below 2^31.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u32);

impl Prime {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if p >= 1 << 31 {
            return Err(FieldError::TooLarge(p));
        }
        if p <= 2 || !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(Prime(p as u32))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn reduce(self, v: i64) -> u32 {
        v.rem_euclid(self.0 as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.0 {
            s - self.0
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.0 - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.0 as u64) as u32
    }

    /// `a - b*c`
    #[inline]
    pub fn sub_mul(self, a: u32, b: u32, c: u32) -> u32 {
        self.sub(a, self.mul(b, c))
    }

    pub fn pow(self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Inverse via the extended Euclidean algorithm; `None` for zero.
    pub fn inv(self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let (mut r0, mut r1) = (self.0 as i64, a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Some(self.reduce(t0))
    }

    pub fn element(self, v: i64) -> FieldElement {
        FieldElement::new(v, self)
    }

    /// Signed representative in `(-p/2, p/2]`, for display.
    pub fn signed(self, a: u32) -> i64 {
        if a > self.0 / 2 {
            a as i64 - self.0 as i64
        } else {
            a as i64
        }
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Deterministic Miller-Rabin; the witness set is exact for n < 3.3e24.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % q == 0 {
            return n == q;
        }
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        r
    };
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// An element of `F_p`, always reduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    value: u32,
    prime: Prime,
}

impl FieldElement {
    pub fn new(v: i64, prime: Prime) -> Self {
        FieldElement {
            value: prime.reduce(v),
            prime,
        }
    }

    pub(crate) fn from_raw(value: u32, prime: Prime) -> Self {
        debug_assert!(value < prime.get());
        FieldElement { value, prime }
    }

    pub fn zero(prime: Prime) -> Self {
        FieldElement { value: 0, prime }
    }

    pub fn one(prime: Prime) -> Self {
        FieldElement { value: 1, prime }
    }

    #[inline]
    pub fn value(self) -> u32 {
        self.value
    }

    #[inline]
    pub fn prime(self) -> Prime {
        self.prime
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    fn same_field(self, other: Self) -> Result<Prime, FieldError> {
        if self.prime != other.prime {
            return Err(FieldError::PrimeMismatch(self.prime.get(), other.prime.get()));
        }
        Ok(self.prime)
    }

    pub fn checked_add(self, other: Self) -> Result<Self, FieldError> {
        let p = self.same_field(other)?;
        Ok(Self::from_raw(p.add(self.value, other.value), p))
    }

    pub fn checked_sub(self, other: Self) -> Result<Self, FieldError> {
        let p = self.same_field(other)?;
        Ok(Self::from_raw(p.sub(self.value, other.value), p))
    }

    pub fn checked_mul(self, other: Self) -> Result<Self, FieldError> {
        let p = self.same_field(other)?;
        Ok(Self::from_raw(p.mul(self.value, other.value), p))
    }

    pub fn checked_div(self, other: Self) -> Result<Self, FieldError> {
        self.checked_mul(other.inv()?)
    }

    pub fn inv(self) -> Result<Self, FieldError> {
        self.prime
            .inv(self.value)
            .map(|v| Self::from_raw(v, self.prime))
            .ok_or(FieldError::DivisionByZero)
    }

    pub fn pow(self, e: u64) -> Self {
        Self::from_raw(self.prime.pow(self.value, e), self.prime)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr for FieldElement {
            type Output = FieldElement;
            /// Panics when the operands come from different fields; use the
            /// `checked_*` form to get an error instead.
            fn $method(self, rhs: Self) -> Self {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("{e}"),
                }
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> Self {
        Self::from_raw(self.prime.neg(self.value), self.prime)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Zero};
    use proptest::prelude::*;

    fn f101() -> Prime {
        Prime::new(101).unwrap()
    }

    #[test]
    fn primality_of_inputs() {
        for p in [3u64, 101, 32003, 43051, 48619, 2147483647] {
            assert!(Prime::new(p).is_ok(), "{p}");
        }
        assert_eq!(Prime::new(2), Err(FieldError::NotPrime(2)));
        assert_eq!(Prime::new(32001), Err(FieldError::NotPrime(32001)));
        assert_eq!(Prime::new(1 << 31), Err(FieldError::TooLarge(1 << 31)));
        // Carmichael number
        assert!(!is_prime(561));
    }

    #[test]
    fn small_examples() {
        let p = f101();
        assert_eq!(p.element(1).inv().unwrap().value(), 1);
        assert_eq!(p.element(2).inv().unwrap().value(), 51);
        assert_eq!(p.element(3).pow(100).value(), 1);
        assert_eq!(p.element(-5).value(), 96);
        assert_eq!(p.element(0).inv(), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn mixed_primes_are_rejected() {
        let x = f101().element(3);
        let y = Prime::new(103).unwrap().element(3);
        assert_eq!(x.checked_add(y), Err(FieldError::PrimeMismatch(101, 103)));
        assert!(std::panic::catch_unwind(|| x * y).is_err());
    }

    #[test]
    fn rational_normalization() {
        let a = Rational::new(6.into(), (-4).into());
        assert_eq!(a, Rational::new((-3).into(), 2.into()));
        let b = Rational::new(7.into(), 9.into());
        assert!((b.clone() * b.recip()).is_one());
        assert!((a.clone() - a).is_zero());
    }

    proptest! {
        #[test]
        fn inverse_and_fermat(v in 1u32..32003) {
            let p = Prime::new(32003).unwrap();
            let x = FieldElement::new(v as i64, p);
            prop_assert_eq!(x.inv().unwrap().inv().unwrap(), x);
            prop_assert_eq!(x.pow(32002).value(), 1);
            prop_assert_eq!((x * x.inv().unwrap()).value(), 1);
        }

        #[test]
        fn ring_laws(a in 0u32..48619, b in 0u32..48619, c in 0u32..48619) {
            let p = Prime::new(48619).unwrap();
            let (a, b, c) = (p.element(a as i64), p.element(b as i64), p.element(c as i64));
            prop_assert_eq!(a * (b + c), a * b + a * c);
            prop_assert_eq!(a - b, -(b - a));
            prop_assert_eq!((a + b) - b, a);
        }
    }
}
