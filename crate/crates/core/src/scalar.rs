//! Scalar coefficients shared by the exact (rational) and numeric (f64) layers.

use std::fmt::Debug;

use num::traits::{Num, ToPrimitive};
use num::{BigInt, BigRational};

/// Coefficient field for algebra elements.
///
/// Implemented for [`BigRational`] (exact identities) and `f64` (the
/// θ-parametrized actions).
pub trait Scalar: Num + Clone + Debug + PartialEq + std::ops::Neg<Output = Self> + ToPrimitive + Send + Sync {
    fn from_i64(v: i64) -> Self;

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn abs_f64(&self) -> f64 {
        self.to_f64_lossy().abs()
    }
}

impl Scalar for f64 {
    fn from_i64(v: i64) -> Self {
        v as f64
    }
}

impl Scalar for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
}

/// Shorthand for an exact rational `num / den`.
pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}
