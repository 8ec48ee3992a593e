//! Scalar abstractions.
//!
//! Counting and ranking are generic over an unsigned [`Count`] type so the
//! same code runs on machine integers (fast, overflow-checked) or on
//! [`num_bigint::BigUint`] (exact, the default through [`crate::Rank`]).
//! Closed-form bounds are generic over [`num_traits::Float`].

use std::fmt::{Debug, Display};

use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// An unsigned count: `u64`, `u128` or `BigUint`.
pub trait Count:
    Clone
    + Ord
    + Debug
    + Display
    + Zero
    + One
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + FromPrimitive
    + ToPrimitive
    + std::ops::Div<Output = Self>
    + std::ops::Rem<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn from_usize_checked(n: usize) -> Result<Self> {
        Self::from_usize(n).ok_or(Error::Overflow("conversion"))
    }

    fn try_add(&self, other: &Self) -> Result<Self> {
        self.checked_add(other).ok_or(Error::Overflow("addition"))
    }

    fn try_sub(&self, other: &Self) -> Result<Self> {
        self.checked_sub(other)
            .ok_or_else(|| Error::Internal(format!("negative count: {self} - {other}")))
    }

    fn try_mul(&self, other: &Self) -> Result<Self> {
        self.checked_mul(other).ok_or(Error::Overflow("multiplication"))
    }

    /// Division that must leave no remainder.
    fn exact_div(&self, divisor: usize) -> Result<Self> {
        let d = Self::from_usize_checked(divisor)?;
        if d.is_zero() {
            return Err(Error::Internal("division by zero".into()));
        }
        if !(self.clone() % d.clone()).is_zero() {
            return Err(Error::Internal(format!("{self} is not divisible by {divisor}")));
        }
        Ok(self.clone() / d)
    }

    fn try_pow(&self, exp: usize) -> Result<Self> {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = acc.try_mul(self)?;
        }
        Ok(acc)
    }
}

impl<T> Count for T where
    T: Clone
        + Ord
        + Debug
        + Display
        + Zero
        + One
        + CheckedAdd
        + CheckedSub
        + CheckedMul
        + FromPrimitive
        + ToPrimitive
        + std::ops::Div<Output = T>
        + std::ops::Rem<Output = T>
        + Send
        + Sync
        + 'static
{
}

/// Sums `terms` with signs, failing if the result would be negative.
pub(crate) fn signed_sum<T: Count>(terms: impl IntoIterator<Item = (i8, T)>) -> Result<T> {
    let mut pos = T::zero();
    let mut neg = T::zero();
    for (sign, value) in terms {
        match sign {
            1 => pos = pos.try_add(&value)?,
            -1 => neg = neg.try_add(&value)?,
            _ => {}
        }
    }
    pos.try_sub(&neg)
}
