//! Integer scalar bounds shared by the generic routines.
//!
//! Valuations, digit expansions and carry counting work over any unsigned
//! integer ([`Natural`]): `u32`, `u64`, `BigUint`. Polynomials and exact
//! integration work over any signed integer ([`Scalar`]): `i64`, `i128`,
//! `BigInt`. The crate root fixes the arbitrary-precision instantiations.

use std::fmt::{Debug, Display};

use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive, Unsigned};

/// Unsigned integers usable as valuation and digit arguments.
pub trait Natural: Integer + Unsigned + Clone + FromPrimitive + ToPrimitive + Debug + Display {}

impl<T> Natural for T where T: Integer + Unsigned + Clone + FromPrimitive + ToPrimitive + Debug + Display {}

/// Signed integers usable as polynomial coefficients.
pub trait Scalar: Integer + Signed + Clone + FromPrimitive + Debug + Display {}

impl<T> Scalar for T where T: Integer + Signed + Clone + FromPrimitive + Debug + Display {}

pub(crate) fn from_u64<T: FromPrimitive>(v: u64) -> T {
    T::from_u64(v).expect("value fits scalar type")
}
