//! Numeric abstraction shared by the load, utilization and centrality code.
//!
//! Flow fractions produced by ECMP splitting are rationals (products of
//! `1/out_degree`), so the same algorithms run over `f64`, `f32` or exact
//! big rationals. Floats compare with a small slack, rationals exactly.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive, Zero};

/// Scalar type usable for loads, utilizations and centrality sums.
pub trait Scalar:
    Num + Signed + Clone + PartialOrd + Debug + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    /// Absolute slack used when two values are tested for equality.
    fn tolerance() -> Self;

    /// Exact (or nearest) conversion of a path or degree count.
    fn from_count(count: u128) -> Self;

    /// Conversion of an input quantity such as a capacity or a volume.
    fn from_real(value: f64) -> Self;

    fn to_real(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn approx_eq(&self, other: &Self) -> bool {
        (self.clone() - other.clone()).abs() <= Self::tolerance()
    }

    /// `self < other` by more than the tolerance.
    fn definitely_lt(&self, other: &Self) -> bool {
        self.clone() + Self::tolerance() < *other
    }

    /// `self <= other` up to the tolerance.
    fn approx_le(&self, other: &Self) -> bool {
        *self <= other.clone() + Self::tolerance()
    }

    fn max_of(a: Self, b: Self) -> Self {
        if b > a {
            b
        } else {
            a
        }
    }
}

impl Scalar for f64 {
    fn tolerance() -> Self {
        1e-12
    }

    fn from_count(count: u128) -> Self {
        count as f64
    }

    fn from_real(value: f64) -> Self {
        value
    }
}

impl Scalar for f32 {
    fn tolerance() -> Self {
        1e-6
    }

    fn from_count(count: u128) -> Self {
        count as f32
    }

    fn from_real(value: f64) -> Self {
        value as f32
    }
}

impl Scalar for BigRational {
    fn tolerance() -> Self {
        BigRational::zero()
    }

    fn from_count(count: u128) -> Self {
        BigRational::from_integer(BigInt::from(count))
    }

    /// Exact binary value of the float; NaN and infinities map to zero.
    fn from_real(value: f64) -> Self {
        BigRational::from_float(value).unwrap_or_else(BigRational::zero)
    }

    fn approx_eq(&self, other: &Self) -> bool {
        self == other
    }

    fn definitely_lt(&self, other: &Self) -> bool {
        self < other
    }

    fn approx_le(&self, other: &Self) -> bool {
        self <= other
    }
}
