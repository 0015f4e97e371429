//! Numeric abstraction for ratio-valued metrics.
//!
//! Accuracy, precision, recall and reduction are ratios of event counts. They
//! are computed generically so callers can pick `f64` for reporting or
//! [`num_rational::Rational64`] when exact values are required.

use std::fmt::Debug;

use num_traits::{FromPrimitive, Num, ToPrimitive};

/// Scalar type usable for count ratios: `f32`, `f64`, `Rational64`, ...
pub trait Scalar:
    Num + Copy + PartialOrd + Debug + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    /// Converts an event count into the scalar type.
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable in scalar type")
    }

    /// Converts a signed count difference into the scalar type.
    fn from_signed(n: i64) -> Self {
        Self::from_i64(n).expect("count representable in scalar type")
    }

    /// `num / den`, or `None` when `den` is zero.
    fn ratio(num: usize, den: usize) -> Option<Self> {
        if den == 0 {
            None
        } else {
            Some(Self::from_count(num) / Self::from_count(den))
        }
    }

    /// Lossy conversion used for serialization and statistics.
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl<T> Scalar for T where
    T: Num + Copy + PartialOrd + Debug + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
}
