//! Scalar abstraction for ranking scores.
//!
//! Ordering-function scores are reciprocals of small integer products, so
//! they are representable exactly as rationals. Callers that only need a
//! float can ask for `f32` or `f64` instead; all three go through the same
//! code path.

use std::fmt::Debug;

use num_rational::Ratio;
use num_traits::{Num, ToPrimitive};

/// A numeric type an ordering-function score can be materialised in.
pub trait Scalar: Num + Copy + PartialOrd + Debug {
    /// Builds `num / den`. `den` must be non-zero.
    fn from_ratio(num: u64, den: u64) -> Self;

    /// Lossy conversion for printing.
    fn to_f64(self) -> f64;
}

impl Scalar for f64 {
    fn from_ratio(num: u64, den: u64) -> Self {
        num as f64 / den as f64
    }

    fn to_f64(self) -> f64 {
        self
    }
}

impl Scalar for f32 {
    fn from_ratio(num: u64, den: u64) -> Self {
        (num as f64 / den as f64) as f32
    }

    fn to_f64(self) -> f64 {
        self as f64
    }
}

impl Scalar for Ratio<u64> {
    fn from_ratio(num: u64, den: u64) -> Self {
        Ratio::new(num, den)
    }

    fn to_f64(self) -> f64 {
        ToPrimitive::to_f64(&self).unwrap_or(f64::NAN)
    }
}
