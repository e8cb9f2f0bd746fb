//! Scalar abstraction for node weights and prices.
//!
//! Cover solvers only add, subtract, compare and multiply by small counts,
//! so any exact or floating numeric type works. Unsigned integers are fine
//! as long as callers never subtract past zero; pricing only ever subtracts
//! the minimum residual.

use std::fmt::{Debug, Display};

use num_traits::{FromPrimitive, Num, ToPrimitive};

/// Node weight / price scalar.
pub trait Weight: Num + Copy + PartialOrd + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync {
    /// Sum of an iterator of weights.
    fn total<I: IntoIterator<Item = Self>>(it: I) -> Self {
        it.into_iter().fold(Self::zero(), |a, b| a + b)
    }

    /// Least value of the type that is at least `self / 2`: rounds up for
    /// integer types.
    fn half_up(self) -> Self {
        let two = Self::one() + Self::one();
        if Self::from_f64(0.5).is_none_or(|h| h == Self::zero()) {
            (self + Self::one()) / two
        } else {
            self / two
        }
    }

    fn min_of(a: Self, b: Self) -> Self {
        if b < a {
            b
        } else {
            a
        }
    }
}

impl<T> Weight for T where T: Num + Copy + PartialOrd + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync {}
