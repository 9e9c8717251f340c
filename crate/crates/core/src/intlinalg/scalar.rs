//! Integer scalar abstraction.
//!
//! Every exact algorithm in this crate is written once over [`IntScalar`] and
//! instantiated either with machine integers (fast, overflow-checked) or with
//! [`BigInt`] (never overflows). Callers working with arbitrary-precision data
//! go through [`narrow`]/[`IntScalar::to_int`] to try the fast path first.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, One, Signed, ToPrimitive, Zero};

/// Raised by the checked arithmetic of machine-width instantiations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Overflow;

pub trait IntScalar:
    Clone
    + Debug
    + Display
    + Eq
    + Ord
    + Hash
    + Zero
    + One
    + Signed
    + Integer
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
    fn to_int(&self) -> BigInt;
    fn from_int(v: &BigInt) -> Option<Self>;

    #[inline]
    fn add_c(&self, rhs: &Self) -> Result<Self, Overflow> {
        self.checked_add(rhs).ok_or(Overflow)
    }

    #[inline]
    fn sub_c(&self, rhs: &Self) -> Result<Self, Overflow> {
        self.checked_sub(rhs).ok_or(Overflow)
    }

    #[inline]
    fn mul_c(&self, rhs: &Self) -> Result<Self, Overflow> {
        self.checked_mul(rhs).ok_or(Overflow)
    }

    #[inline]
    fn neg_c(&self) -> Result<Self, Overflow> {
        Self::zero().sub_c(self)
    }

    /// `self - q * rhs`
    #[inline]
    fn sub_mul_c(&self, q: &Self, rhs: &Self) -> Result<Self, Overflow> {
        self.sub_c(&q.mul_c(rhs)?)
    }

    #[inline]
    fn abs_c(&self) -> Result<Self, Overflow> {
        if self.is_negative() {
            self.neg_c()
        } else {
            Ok(self.clone())
        }
    }

    fn from_small(v: i64) -> Self {
        <Self as FromPrimitive>::from_i64(v).expect("every scalar holds an i64")
    }
}

impl IntScalar for i64 {
    fn to_int(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn from_int(v: &BigInt) -> Option<Self> {
        v.to_i64()
    }
}

impl IntScalar for i128 {
    fn to_int(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn from_int(v: &BigInt) -> Option<Self> {
        v.to_i128()
    }
}

impl IntScalar for BigInt {
    fn to_int(&self) -> BigInt {
        self.clone()
    }
    fn from_int(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }

    // BigInt arithmetic is total; skip the Option round-trip.
    #[inline]
    fn add_c(&self, rhs: &Self) -> Result<Self, Overflow> {
        Ok(self + rhs)
    }
    #[inline]
    fn sub_c(&self, rhs: &Self) -> Result<Self, Overflow> {
        Ok(self - rhs)
    }
    #[inline]
    fn mul_c(&self, rhs: &Self) -> Result<Self, Overflow> {
        Ok(self * rhs)
    }
    #[inline]
    fn neg_c(&self) -> Result<Self, Overflow> {
        Ok(-self)
    }
}

/// Converts a slice of big integers to a narrower scalar, if every entry fits.
pub fn narrow<T: IntScalar>(values: &[BigInt]) -> Option<Vec<T>> {
    values.iter().map(T::from_int).collect()
}

/// Reduces `v` into the symmetric range `(-m/2, m/2]`; `m == 0` leaves `v` unchanged.
pub fn reduce_symmetric<T: IntScalar>(v: &T, m: &T) -> T {
    if m.is_zero() {
        return v.clone();
    }
    let r = v.mod_floor(m);
    // r in [0, m); shift the upper half down
    let twice = r.clone() + r.clone();
    if twice > *m {
        r - m.clone()
    } else {
        r
    }
}
