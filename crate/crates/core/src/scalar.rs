use std::fmt;
use std::ops::{Div, Neg, Sub};

use num_traits::{One, ToPrimitive, Zero};

use crate::{Complex64, Rational};

/// Coefficient ring for the generic polynomial types.
///
/// `Zero` and `One` come from `num-traits`; `from_rational` embeds the prime
/// field so that binomial coefficients and rational constants can be formed
/// in any instantiation.
pub trait Scalar:
    Clone + PartialEq + fmt::Debug + Zero + One + Neg<Output = Self> + Sub<Output = Self>
{
    fn from_rational(q: &Rational) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(n.into()))
    }
}

/// A [`Scalar`] with exact (or floating) division by nonzero elements.
pub trait FieldScalar: Scalar + Div<Output = Self> {}

impl<T: Scalar + Div<Output = T>> FieldScalar for T {}

impl Scalar for Rational {
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
}

impl Scalar for f64 {
    fn from_rational(q: &Rational) -> Self {
        q.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for Complex64 {
    fn from_rational(q: &Rational) -> Self {
        Complex64::new(q.to_f64().unwrap_or(f64::NAN), 0.0)
    }
}
