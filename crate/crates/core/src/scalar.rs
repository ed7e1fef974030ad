//! Exact integer scalars.
//!
//! Every coefficient-level computation in this crate is generic over
//! [`ExactInt`]. Fixed-width types (`i64`, `i128`) run fast and report
//! [`Error::Overflow`] instead of wrapping; [`num_bigint::BigInt`] never
//! overflows and is the default used by the crate-root aliases.

use std::fmt::{Debug, Display};

use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, Signed, ToPrimitive};

use crate::error::{Error, Result};

pub trait ExactInt:
    Integer
    + Signed
    + Clone
    + Debug
    + Display
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
    fn from_u64_checked(v: u64) -> Result<Self> {
        Self::from_u64(v).ok_or(Error::Overflow("u64 conversion"))
    }

    fn from_i64_checked(v: i64) -> Result<Self> {
        Self::from_i64(v).ok_or(Error::Overflow("i64 conversion"))
    }

    fn add_c(&self, rhs: &Self) -> Result<Self> {
        self.checked_add(rhs).ok_or(Error::Overflow("addition"))
    }

    fn sub_c(&self, rhs: &Self) -> Result<Self> {
        self.checked_sub(rhs).ok_or(Error::Overflow("subtraction"))
    }

    fn mul_c(&self, rhs: &Self) -> Result<Self> {
        self.checked_mul(rhs)
            .ok_or(Error::Overflow("multiplication"))
    }

    fn pow_c(&self, exp: u32) -> Result<Self> {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = acc.mul_c(self)?;
        }
        Ok(acc)
    }

    /// Division that must leave no remainder; `what` names the quantity in
    /// the error if it does.
    fn div_exactly(&self, divisor: &Self, what: &str) -> Result<Self> {
        let (q, r) = self.div_rem(divisor);
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::Consistency(format!(
                "{what}: {self} is not divisible by {divisor}"
            )))
        }
    }
}

impl<T> ExactInt for T where
    T: Integer
        + Signed
        + Clone
        + Debug
        + Display
        + CheckedAdd
        + CheckedSub
        + CheckedMul
        + FromPrimitive
        + ToPrimitive
        + Send
        + Sync
        + 'static
{
}

/// Serializes integers as decimal strings so that JSON consumers never see a
/// lossy float.
pub fn serialize_decimal<T: Display, S: serde::Serializer>(
    v: &T,
    serializer: S,
) -> std::result::Result<S::Ok, S::Error> {
    serializer.collect_str(v)
}

pub fn serialize_decimal_seq<T: Display, S: serde::Serializer>(
    v: &[T],
    serializer: S,
) -> std::result::Result<S::Ok, S::Error> {
    serializer.collect_seq(v.iter().map(|x| x.to_string()))
}
