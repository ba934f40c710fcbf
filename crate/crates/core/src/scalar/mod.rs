//! Exact scalars and the places at which they are measured.
//!
//! [`Rational`] and [`QuadScalar`] are immutable value types. Everything is
//! exact except [`Scalar::abs_at`] and [`Scalar::embed`], which are the only
//! conversions to floating point.

mod place;
mod quad;
mod rational;

use core::fmt::{Debug, Display};
use core::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

pub use place::{Embedding, Place, Prime};
pub use quad::QuadScalar;
pub use rational::Rational;

/// Commutative ring with unit. Implemented by scalars and by polynomials.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
}

/// An exact number in ℚ or a quadratic field ℚ(√d).
pub trait Scalar: Ring + Display + Send + Sync {
    fn inv(&self) -> Option<Self>;

    fn from_rational(q: Rational) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(Rational::from(n))
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// Rational coordinates `(a, b)` of `a + b√d`; `b = 0` for rationals.
    fn components(&self) -> (Rational, Rational);

    /// The quadratic parameter `d`, if this value is tied to an extension.
    fn extension(&self) -> Option<i64>;

    /// Image under a complex embedding. Rationals ignore the selector.
    fn embed(&self, embedding: Embedding) -> Complex64;

    /// `|x|_v`. Returns exactly 0 for `x = 0`.
    fn abs_at(&self, place: &Place) -> f64;

    /// True when `x` is integral at every prime above `p` (`|x|_v ≤ 1`).
    fn is_p_integral(&self, p: Prime) -> bool;

    /// True when the coordinates `a`, `b` are integers.
    fn is_integral(&self) -> bool {
        let (a, b) = self.components();
        a.is_integer() && b.is_integer()
    }

    /// Checked division.
    fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|inv| self.clone() * inv)
    }
}
