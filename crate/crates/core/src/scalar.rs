//! Exact counting scalars.
//!
//! Every counting formula in this crate is generic over [`CountScalar`], an
//! unsigned exact integer type. [`crate::Count`] (arbitrary precision) is the
//! default; `u64` and `u128` are handy for fast identity sweeps where the
//! caller knows the values fit.

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Shl, Sub};

use num_traits::{One, Unsigned, Zero};

/// An exact unsigned integer usable as a subgroup count.
pub trait CountScalar:
    Clone
    + Ord
    + Debug
    + Display
    + Send
    + Sync
    + Zero
    + One
    + Unsigned
    + From<u64>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Shl<usize, Output = Self>
{
    /// `2^e`.
    fn pow2(e: usize) -> Self {
        Self::one() << e
    }

    /// `2^e` for a signed exponent, or `None` when `e < 0`.
    fn pow2_signed(e: i64) -> Option<Self> {
        usize::try_from(e).ok().map(Self::pow2)
    }

    fn from_u64(v: u64) -> Self {
        Self::from(v)
    }
}

impl<T> CountScalar for T where
    T: Clone
        + Ord
        + Debug
        + Display
        + Send
        + Sync
        + Zero
        + One
        + Unsigned
        + From<u64>
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Div<Output = T>
        + Shl<usize, Output = T>
{
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Count;

    #[test]
    fn pow2_agrees_across_types() {
        for e in 0..63 {
            assert_eq!(Count::pow2(e), Count::from(<u64 as CountScalar>::pow2(e)));
            assert_eq!(u128::pow2(e), u128::from(u64::pow2(e)));
        }
        assert_eq!(Count::pow2(200).bits(), 201);
        assert_eq!(u64::pow2_signed(-1), None);
        assert_eq!(u64::pow2_signed(3), Some(8));
    }
}
