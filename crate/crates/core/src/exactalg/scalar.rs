//! The coefficient interface shared by symbolic and point-evaluated operators.

use core::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::field::FieldElem;
use crate::error::Error;

/// A field whose elements have a canonical, comparable representation.
///
/// Implemented for [`FieldElem`] (exact symbolic work) and for
/// [`BigRational`] (the same computation at a rational point).
pub trait Scalar: Clone + PartialEq + Debug + Display + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_rational(r: &BigRational) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self, Error>;
    fn is_zero(&self) -> bool;

    fn div(&self, other: &Self) -> Result<Self, Error> {
        Ok(self.mul(&other.inv()?))
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// Canonical text form, as it appears in reports.
    fn to_text(&self) -> alloc::string::String {
        alloc::format!("{self}")
    }
}

impl Scalar for FieldElem {
    fn zero() -> Self {
        FieldElem::zero()
    }
    fn one() -> Self {
        FieldElem::one()
    }
    fn from_i64(v: i64) -> Self {
        FieldElem::from_i64(v)
    }
    fn from_rational(r: &BigRational) -> Self {
        FieldElem::from_rational(r)
    }
    fn add(&self, other: &Self) -> Self {
        FieldElem::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        FieldElem::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        FieldElem::mul(self, other)
    }
    fn neg(&self) -> Self {
        FieldElem::neg(self)
    }
    fn inv(&self) -> Result<Self, Error> {
        FieldElem::inv(self)
    }
    fn is_zero(&self) -> bool {
        FieldElem::is_zero(self)
    }
    fn is_one(&self) -> bool {
        FieldElem::is_one(self)
    }
}

impl Scalar for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Result<Self, Error> {
        if Zero::is_zero(self) {
            Err(Error::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}
