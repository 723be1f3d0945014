//! Coefficient types for group-ring and cyclotomic arithmetic.

use std::fmt::Debug;
use std::ops::Neg;

use num_traits::{FromPrimitive, Num};

use crate::{Integer, Rational};

/// Commutative ring of coefficients.
pub trait Scalar: Clone + PartialEq + Debug + Num + Neg<Output = Self> + FromPrimitive + Send + Sync {
    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("scalar conversion from i64")
    }
}

impl<T> Scalar for T where T: Clone + PartialEq + Debug + Num + Neg<Output = T> + FromPrimitive + Send + Sync {}

/// Marker for scalars whose division is field division.
///
/// `BigInt` implements `Div` as truncating division, so it is deliberately
/// not a `Field`.
pub trait Field: Scalar {}

impl Field for Rational {}
impl Field for f64 {}
impl Field for f32 {}

/// Conversion to and from exact rationals.
pub trait ExactRational: Scalar {
    fn to_rational(&self) -> Option<Rational>;
    fn from_rational(r: &Rational) -> Option<Self>;
}

impl ExactRational for Rational {
    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
    fn from_rational(r: &Rational) -> Option<Self> {
        Some(r.clone())
    }
}

impl ExactRational for Integer {
    fn to_rational(&self) -> Option<Rational> {
        Some(Rational::from_integer(self.clone()))
    }
    fn from_rational(r: &Rational) -> Option<Self> {
        r.is_integer().then(|| r.to_integer())
    }
}
