use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{FromPrimitive, One, Zero};

/// Commutative ring with unit, as needed by polynomial arithmetic.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + FromPrimitive
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone
        + PartialEq
        + Debug
        + Zero
        + One
        + FromPrimitive
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Neg<Output = T>
{
}

/// Ring without zero divisors where exact quotients can be taken.
pub trait IntegralDomain: Ring {
    /// `self / other`, assuming `other` divides `self`.
    fn div_exact(&self, other: &Self) -> Self;
    /// `Some(self / other)` when the quotient exists in the ring.
    fn checked_quotient(&self, other: &Self) -> Option<Self>;
}

/// Field: every nonzero element is invertible.
pub trait Field: IntegralDomain + Div<Output = Self> {}

impl IntegralDomain for BigInt {
    fn div_exact(&self, other: &Self) -> Self {
        let (q, r) = self.div_rem(other);
        debug_assert!(r.is_zero(), "inexact division {self} / {other}");
        q
    }
    fn checked_quotient(&self, other: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(other);
        r.is_zero().then_some(q)
    }
}

macro_rules! machine_int_domain {
    ($($t:ty)*) => ($(
        impl IntegralDomain for $t {
            fn div_exact(&self, other: &Self) -> Self {
                debug_assert!(self % other == 0);
                self / other
            }
            fn checked_quotient(&self, other: &Self) -> Option<Self> {
                (self % other == 0).then(|| self / other)
            }
        }
    )*)
}

machine_int_domain!(i64 i128);

impl<T> IntegralDomain for Ratio<T>
where
    T: Clone + Integer + Debug + FromPrimitive,
    Ratio<T>: Ring,
{
    fn div_exact(&self, other: &Self) -> Self {
        self.clone() / other.clone()
    }
    fn checked_quotient(&self, other: &Self) -> Option<Self> {
        (!other.is_zero()).then(|| self.clone() / other.clone())
    }
}

impl<T> Field for Ratio<T>
where
    T: Clone + Integer + Debug + FromPrimitive,
    Ratio<T>: Ring,
{
}

macro_rules! float_field {
    ($($t:ty)*) => ($(
        impl IntegralDomain for $t {
            fn div_exact(&self, other: &Self) -> Self {
                self / other
            }
            fn checked_quotient(&self, other: &Self) -> Option<Self> {
                (*other != 0.0).then(|| self / other)
            }
        }
        impl Field for $t {}
    )*)
}

float_field!(f32 f64);

pub fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: BigInt) -> BigRational {
    BigRational::from_integer(n)
}
