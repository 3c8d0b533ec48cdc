//! Scalar coefficients: exact rationals by default, `f64` as an opt-in
//! floating-point mode for speed experiments.

use std::fmt::Debug;
use std::ops::{AddAssign, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Exact arbitrary-precision rational, the default coefficient type.
///
/// All identity checks in this crate run over `Rational`: equality is
/// decidable and "vanishes" means every component is literally zero.
pub type Rational = BigRational;

/// Shorthand constructor for a reduced rational `num/den`.
///
/// Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Integer as a rational.
pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Coefficient ring for tensor components.
///
/// Implemented by [`Rational`] (exact, used by every verification path) and by
/// `f64` (approximate, excluded from all acceptance checks).
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Div<Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    fn from_int(value: i64) -> Self;

    /// `num/den`; `den` must be nonzero.
    fn from_ratio(num: i64, den: i64) -> Self;
}

impl Scalar for Rational {
    fn from_int(value: i64) -> Self {
        int(value)
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        rat(num, den)
    }
}

impl Scalar for f64 {
    fn from_int(value: i64) -> Self {
        value as f64
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }
}
