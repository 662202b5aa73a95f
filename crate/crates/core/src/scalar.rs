//! Scalar fields the linear algebra runs over.
//!
//! Every decision the library makes (kernel dimensions, solvability, ranks)
//! is taken over [`BigRational`]. The trait is also implemented for
//! `Ratio<i64>` and `f64` so the generic kernels can be exercised and
//! compared against the exact path; those instances are not used for any
//! reported result.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, ToPrimitive, Zero};

/// A field with a total order, as needed by Gaussian elimination and by
/// dominance reduction of coweights.
pub trait Scalar:
    Clone
    + PartialEq
    + PartialOrd
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Send
    + Sync
{
    fn from_int(v: i64) -> Self;

    /// Zero test used for pivoting. Exact fields compare with zero; floats
    /// use a fixed tolerance.
    fn is_negligible(&self) -> bool {
        self.is_zero()
    }

    /// The value as an integer, if it is one.
    fn to_int(&self) -> Option<i64>;

    fn is_negative(&self) -> bool {
        !self.is_negligible() && *self < Self::zero()
    }
}

impl Scalar for BigRational {
    fn from_int(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn to_int(&self) -> Option<i64> {
        if self.is_integer() {
            self.to_integer().to_i64()
        } else {
            None
        }
    }
}

impl Scalar for Ratio<i64> {
    fn from_int(v: i64) -> Self {
        Ratio::from_integer(v)
    }

    fn to_int(&self) -> Option<i64> {
        self.is_integer().then(|| self.to_integer())
    }
}

const F64_TOLERANCE: f64 = 1e-9;

impl Scalar for f64 {
    fn from_int(v: i64) -> Self {
        v as f64
    }

    fn is_negligible(&self) -> bool {
        self.abs() < F64_TOLERANCE
    }

    fn to_int(&self) -> Option<i64> {
        let r = self.round();
        ((self - r).abs() < F64_TOLERANCE).then_some(r as i64)
    }
}
