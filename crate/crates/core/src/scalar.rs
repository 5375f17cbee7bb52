//! Exact integer scalars.
//!
//! Every sum in this crate goes through the checked helpers here, so a
//! fixed-width scalar reports overflow as [`Error::Overflow`] instead of
//! wrapping. `BigInt` never overflows.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, Signed, ToPrimitive};

use crate::error::{Error, Result};

/// Exact signed integer usable as the value type of constructible functions,
/// multiplicities and lattice coordinates.
pub trait ExactInt:
    Clone
    + Debug
    + Display
    + Ord
    + Hash
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
}

impl<T> ExactInt for T where
    T: Clone
        + Debug
        + Display
        + Ord
        + Hash
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
}

pub(crate) fn add<I: ExactInt>(a: &I, b: &I, what: &'static str) -> Result<I> {
    a.checked_add(b).ok_or(Error::Overflow(what))
}

pub(crate) fn sub<I: ExactInt>(a: &I, b: &I, what: &'static str) -> Result<I> {
    a.checked_sub(b).ok_or(Error::Overflow(what))
}

pub(crate) fn mul<I: ExactInt>(a: &I, b: &I, what: &'static str) -> Result<I> {
    a.checked_mul(b).ok_or(Error::Overflow(what))
}

pub(crate) fn from_i64<I: ExactInt>(v: i64, what: &'static str) -> Result<I> {
    I::from_i64(v).ok_or(Error::Overflow(what))
}

pub(crate) fn from_u64<I: ExactInt>(v: u64, what: &'static str) -> Result<I> {
    I::from_u64(v).ok_or(Error::Overflow(what))
}

/// `(-1)^k` in the scalar type.
pub(crate) fn sign_pow<I: ExactInt>(k: usize) -> I {
    if k.is_multiple_of(2) {
        I::one()
    } else {
        -I::one()
    }
}
